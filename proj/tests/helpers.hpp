#pragma once

#include <Eigen/Dense>

#include "landscape/rng.hpp"

namespace landscape::testing {

// Random symmetric PSD matrix with the given eigenvalues (descending).
inline Eigen::MatrixXd random_spd(const Eigen::VectorXd& eigvals,
                                  RngStream& rng) {
  const int d = static_cast<int>(eigvals.size());
  Eigen::MatrixXd gauss(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) gauss(r, c) = rng.normal();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd m = q * eigvals.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

inline Eigen::VectorXd linspace_spectrum(int d, double top, double bottom) {
  Eigen::VectorXd s(d);
  for (int i = 0; i < d; ++i)
    s[i] = top - (top - bottom) * i / std::max(1, d - 1);
  return s;
}

}  // namespace landscape::testing
