#include "landscape/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "landscape/fd_check.hpp"
#include "landscape/objectives.hpp"

namespace landscape {

namespace {

// Seed-derivation tags, fixed so that reports are reproducible across
// refactorings of the run order.
constexpr std::uint64_t kTagGenerator = 2;
constexpr std::uint64_t kTagX0 = 11;
constexpr std::uint64_t kTagKick = 13;
constexpr std::uint64_t kTagPoints = 17;
constexpr std::uint64_t kTagProxy = 19;
constexpr std::uint64_t kTagProbe = 23;
constexpr std::uint64_t kTagTrials = 29;

int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("LANDSCAPE_LAB_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return static_cast<int>(hw);
}

// Order-independent parallel loop: results must be keyed by index by the
// body. Runs serially when only one thread is available.
void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers = std::min(n, thread_budget());
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty set");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<double> geometric_spectrum(int d, double top, double ratio) {
  std::vector<double> s(d);
  double v = top;
  for (int i = 0; i < d; ++i, v *= ratio) s[i] = v;
  return s;
}

GeneratorSpec resolved_generator(const ExperimentConfig& cfg) {
  GeneratorSpec spec = cfg.generator;
  if (spec.seed == 0)
    spec.seed = derive_seed(cfg.master_seed, {kTagGenerator});
  if (spec.family == "pca" && spec.spectrum.empty())
    spec.spectrum = geometric_spectrum(spec.d, 2.0, 0.85);
  return spec;
}

struct Asserter {
  std::vector<Assertion>* sink;

  void check(const std::string& name, bool ok, const std::string& detail) {
    sink->push_back({name, ok, detail});
  }
};

GdConfig make_gd(const OptimizerConfig& opt, double default_step) {
  GdConfig gd;
  gd.step_size = opt.step_size > 0.0 ? opt.step_size : default_step;
  gd.max_iters = opt.max_iters;
  gd.grad_tol = opt.grad_tol;
  return gd;
}

PerturbedGdConfig make_perturbed(const OptimizerConfig& opt, double default_step) {
  PerturbedGdConfig cfg;
  cfg.base = make_gd(opt, default_step);
  cfg.perturb_radius = opt.perturb_radius;
  cfg.perturb_grad_threshold = opt.perturb_grad_threshold;
  cfg.perturb_cooldown_iters = opt.perturb_cooldown_iters;
  return cfg;
}

// ---------------------------------------------------------------------------
// check-grad

struct FamilyProbe {
  std::string family;
  std::unique_ptr<Objective> objective;
  std::function<Eigen::VectorXd(RngStream&)> sampler;
};

FamilyProbe make_family_probe(const std::string& family,
                              const ExperimentConfig& cfg,
                              std::uint64_t seed) {
  FamilyProbe probe;
  probe.family = family;
  GeneratorSpec spec = cfg.generator;
  spec.family = family;
  spec.seed = seed;
  if (family == "glm") {
    if (cfg.generator.family != "glm") {
      spec.d = 10;
      spec.n = 200;
      spec.B = 1.0;
      spec.R = 2.0;
      spec.noise_bound = 0.1;
    }
    GlmInstance inst = gen_glm(spec);
    const double radius = inst.R;
    const int d = inst.dim();
    probe.objective = glm_empirical(std::move(inst));
    probe.sampler = [d, radius](RngStream& rng) {
      return rng.uniform_in_ball(d, radius);
    };
  } else if (family == "pca") {
    if (cfg.generator.family != "pca") spec.d = 10;
    if (spec.spectrum.empty()) spec.spectrum = geometric_spectrum(spec.d, 2.0, 0.85);
    PcaInstance inst = gen_pca(spec);
    const double radius = 2.0 * std::sqrt(inst.eigvals[0]);
    const int d = inst.dim();
    probe.objective = pca_objective(std::move(inst));
    probe.sampler = [d, radius](RngStream& rng) {
      return rng.uniform_in_ball(d, radius);
    };
  } else if (family == "mc") {
    if (cfg.generator.family != "mc") {
      spec.d = 50;
      spec.mu = 1.0;
      spec.epsilon = 0.3;
    }
    McInstance inst = gen_mc(spec);
    const int d = inst.dim();
    const double half = 0.95 * 2.0 * inst.mu / std::sqrt(static_cast<double>(d));
    probe.objective = mc_objective(std::move(inst));
    probe.sampler = [d, half](RngStream& rng) {
      return rng.uniform_in_cube(d, half);
    };
  } else if (family == "tensor") {
    if (cfg.generator.family != "tensor") {
      spec.d = 10;
      spec.n_components = 10;
    }
    TensorInstance inst = gen_tensor(spec);
    const int d = inst.dim();
    probe.objective = tensor_ambient(std::move(inst));
    probe.sampler = [d](RngStream& rng) { return rng.uniform_on_sphere(d); };
  } else {
    throw std::invalid_argument("check-grad: unknown family '" + family + "'");
  }
  return probe;
}

void run_check_grad(const ExperimentConfig& cfg, ExperimentReport& report) {
  std::vector<std::string> families;
  if (cfg.generator.family.empty() || cfg.generator.family == "all")
    families = {"glm", "pca", "mc", "tensor"};
  else
    families = {cfg.generator.family};

  report.columns = {"family", "n_points", "max_rel_err_grad",
                    "max_rel_err_hess", "worst_point_index", "passed"};
  Asserter asserter{&report.assertions};
  FdConfig fd{cfg.fd_step_h, FdScheme::Central, cfg.fd_rel_tol};

  double overall_grad = 0.0, overall_hess = 0.0;
  for (std::size_t fi = 0; fi < families.size(); ++fi) {
    const FamilyProbe probe = make_family_probe(
        families[fi], cfg, derive_seed(cfg.master_seed, {kTagGenerator, fi}));
    RngStream rng = RngStream::derived(cfg.master_seed, {kTagPoints, fi});
    std::vector<Eigen::VectorXd> points;
    points.reserve(cfg.fd_points);
    for (int i = 0; i < cfg.fd_points; ++i) points.push_back(probe.sampler(rng));

    const DerivativeCheckReport check =
        check_objective_derivatives(*probe.objective, points, fd);
    report.rows.push_back({probe.family, cfg.fd_points, check.max_rel_err_grad,
                           check.max_rel_err_hess, check.worst_point_index,
                           check.passed});
    overall_grad = std::max(overall_grad, check.max_rel_err_grad);
    overall_hess = std::max(overall_hess, check.max_rel_err_hess);
    asserter.check("derivatives_match_fd[" + probe.family + "]", check.passed,
                   "max rel err grad=" + fmt_double(check.max_rel_err_grad) +
                       " hess=" + fmt_double(check.max_rel_err_hess) +
                       " tol=" + fmt_double(cfg.fd_rel_tol));
  }
  report.summary = {{"max_rel_err_grad", overall_grad},
                    {"max_rel_err_hess", overall_hess},
                    {"rel_tol", cfg.fd_rel_tol}};
}

// ---------------------------------------------------------------------------
// optimize

void run_optimize_pca(const ExperimentConfig& cfg, ExperimentReport& report) {
  const GeneratorSpec spec = resolved_generator(cfg);
  const PcaInstance inst = gen_pca(spec);
  const auto obj = pca_objective(inst);
  const double f_star = pca_global_min_value(inst);
  const double step = cfg.optimizer.step_size > 0.0 ? cfg.optimizer.step_size
                                                    : default_pca_step(inst);

  report.columns = {"run",      "iters",     "termination", "final_value",
                    "f_gap",    "grad_norm", "dist_to_min", "perturbations"};
  report.f_star = f_star;
  report.traces.resize(cfg.n_runs);

  parallel_for(cfg.n_runs, [&](int r) {
    RngStream rng = RngStream::derived(cfg.master_seed, {kTagX0, (std::uint64_t)r});
    const Eigen::VectorXd x0 =
        rng.uniform_on_sphere(inst.dim(), cfg.optimizer.x0_radius);
    OptimizerConfig opt = cfg.optimizer;
    opt.step_size = step;
    if (cfg.optimizer.use_perturbation) {
      report.traces[r] = perturbed_gradient_descent(
          *obj, x0, make_perturbed(opt, step),
          derive_seed(cfg.master_seed, {kTagKick, (std::uint64_t)r}));
    } else {
      report.traces[r] = gradient_descent(*obj, x0, make_gd(opt, step));
    }
  });

  double max_gap = 0.0, max_dist = 0.0;
  bool all_grad_tol = true;
  for (int r = 0; r < cfg.n_runs; ++r) {
    const OptimizerTrace& t = report.traces[r];
    const double gap = t.final_value - f_star;
    const double dist = dist_to_pca_min_set(inst, t.final_point);
    max_gap = std::max(max_gap, gap);
    max_dist = std::max(max_dist, dist);
    all_grad_tol = all_grad_tol && t.termination == Termination::GradTol;
    report.rows.push_back(
        {r, t.total_iters,
         t.termination == Termination::GradTol ? "GradTol" : "MaxIters",
         t.final_value, gap, t.final_grad_norm, dist,
         (long)t.perturbation_events.size()});
  }
  Asserter asserter{&report.assertions};
  asserter.check("all_runs_reach_grad_tol", all_grad_tol, "");
  asserter.check("f_gap_below_threshold", max_gap <= cfg.assert_pca_f_gap,
                 "max f-f* = " + fmt_double(max_gap) +
                     " threshold = " + fmt_double(cfg.assert_pca_f_gap));
  asserter.check("dist_to_top_eigvec_below_threshold",
                 max_dist <= cfg.assert_pca_dist,
                 "max dist = " + fmt_double(max_dist) +
                     " threshold = " + fmt_double(cfg.assert_pca_dist));
  report.summary = {{"f_star", f_star},
                    {"step_size", step},
                    {"max_f_gap", max_gap},
                    {"max_dist_to_min", max_dist}};
}

void run_optimize_tensor(const ExperimentConfig& cfg, ExperimentReport& report) {
  const GeneratorSpec spec = resolved_generator(cfg);
  const TensorInstance inst = gen_tensor(spec);
  const auto obj = tensor_ambient(inst);
  const double step = cfg.optimizer.step_size > 0.0 ? cfg.optimizer.step_size
                                                    : default_tensor_ascent_step();

  report.columns = {"run",       "iters",       "termination",
                    "final_value", "rgrad_norm", "max_overlap"};
  report.traces.resize(cfg.n_runs);

  parallel_for(cfg.n_runs, [&](int r) {
    RngStream rng = RngStream::derived(cfg.master_seed, {kTagX0, (std::uint64_t)r});
    const SpherePoint x0(rng.uniform_on_sphere(inst.dim()));
    OptimizerConfig opt = cfg.optimizer;
    opt.step_size = step;
    report.traces[r] = riemannian_ascent(*obj, x0, make_gd(opt, step));
  });

  double min_overlap = 1.0;
  bool all_grad_tol = true;
  for (int r = 0; r < cfg.n_runs; ++r) {
    const OptimizerTrace& t = report.traces[r];
    const double overlap =
        (inst.components * t.final_point).cwiseAbs().maxCoeff();
    min_overlap = std::min(min_overlap, overlap);
    all_grad_tol = all_grad_tol && t.termination == Termination::GradTol;
    report.rows.push_back(
        {r, t.total_iters,
         t.termination == Termination::GradTol ? "GradTol" : "MaxIters",
         t.final_value, t.final_grad_norm, overlap});
  }
  Asserter asserter{&report.assertions};
  asserter.check("all_runs_reach_grad_tol", all_grad_tol, "");
  asserter.check(
      "endpoints_align_with_components",
      min_overlap >= 1.0 - cfg.assert_tensor_overlap_gap,
      "min over runs of max_i |<x, a_i>| = " + fmt_double(min_overlap));
  report.summary = {{"step_size", step}, {"min_max_overlap", min_overlap}};
}

void run_optimize_mc(const ExperimentConfig& cfg, ExperimentReport& report) {
  const GeneratorSpec spec = resolved_generator(cfg);
  const McInstance inst = gen_mc(spec);
  const auto obj = mc_objective(inst);
  const double step = cfg.optimizer.step_size > 0.0 ? cfg.optimizer.step_size
                                                    : default_mc_step(inst);
  const double cap = 2.0 * inst.mu / std::sqrt(static_cast<double>(inst.dim()));

  report.columns = {"run",        "iters",        "termination",
                    "final_value", "grad_norm",   "in_domain",
                    "hess_min_eig", "claim1_margin", "claim2_margin",
                    "dist_to_truth", "localized"};
  report.f_star = 0.0;
  report.traces.resize(cfg.n_runs);

  parallel_for(cfg.n_runs, [&](int r) {
    RngStream rng = RngStream::derived(cfg.master_seed, {kTagX0, (std::uint64_t)r});
    const Eigen::VectorXd x0 = rng.uniform_in_cube(inst.dim(), 0.45 * cap);
    OptimizerConfig opt = cfg.optimizer;
    opt.step_size = step;
    if (cfg.optimizer.use_perturbation) {
      report.traces[r] = perturbed_gradient_descent(
          *obj, x0, make_perturbed(opt, step),
          derive_seed(cfg.master_seed, {kTagKick, (std::uint64_t)r}));
    } else {
      report.traces[r] = gradient_descent(*obj, x0, make_gd(opt, step));
    }
  });

  bool all_in_domain = true, all_claims = true, all_localized = true;
  bool all_grad_tol = true;
  double min_hess_eig = std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.n_runs; ++r) {
    const OptimizerTrace& t = report.traces[r];
    all_grad_tol = all_grad_tol && t.termination == Termination::GradTol;
    const bool in_domain = t.final_point.lpNorm<Eigen::Infinity>() < cap;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(obj->hessian(t.final_point),
                                                      Eigen::EigenvaluesOnly);
    const double hess_min = es.eigenvalues().minCoeff();
    min_hess_eig = std::min(min_hess_eig, hess_min);
    double c1 = 0.0, c2 = 0.0, dist = 0.0;
    bool localized = false, claims = false;
    if (in_domain) {
      const McClaimReport claim = mc_claim_check(
          inst, t.final_point, inst.epsilon, cfg.assert_mc_localization_const);
      c1 = claim.claim1_margin;
      c2 = claim.claim2_margin;
      dist = claim.dist_to_truth;
      localized = claim.localized;
      claims = claim.claims_hold;
    }
    all_in_domain = all_in_domain && in_domain;
    all_claims = all_claims && claims;
    all_localized = all_localized && localized;
    report.rows.push_back(
        {r, t.total_iters,
         t.termination == Termination::GradTol ? "GradTol" : "MaxIters",
         t.final_value, t.final_grad_norm, in_domain, hess_min, c1, c2, dist,
         localized});
  }
  Asserter asserter{&report.assertions};
  asserter.check("all_runs_reach_grad_tol", all_grad_tol, "");
  asserter.check("endpoints_stay_incoherent", all_in_domain, "");
  asserter.check("endpoints_approximately_second_order",
                 min_hess_eig >= -cfg.certifier.hess_psd_tol,
                 "min Hessian eigenvalue over runs = " + fmt_double(min_hess_eig));
  asserter.check("stationarity_claims_hold", all_claims,
                 "overlap^2 >= ||x||^4 - eps and ||x||^2 >= 1/3 - eps/3");
  asserter.check("endpoints_near_ground_truth", all_localized,
                 "min(||x-z||, ||x+z||) <= " +
                     fmt_double(cfg.assert_mc_localization_const) +
                     " * sqrt(eps)");
  report.summary = {{"p", inst.p},
                    {"epsilon", inst.epsilon},
                    {"step_size", step},
                    {"min_hess_eig", min_hess_eig}};
}

void run_optimize_glm(const ExperimentConfig& cfg, ExperimentReport& report) {
  const GeneratorSpec spec = resolved_generator(cfg);
  const GlmInstance inst = gen_glm(spec);
  const auto obj = glm_empirical(inst);
  const double step = cfg.optimizer.step_size > 0.0 ? cfg.optimizer.step_size
                                                    : default_glm_step(inst);

  report.columns = {"run",        "iters",     "termination",
                    "final_value", "grad_norm", "dist_to_w_star", "w_norm"};
  report.traces.resize(cfg.n_runs);

  parallel_for(cfg.n_runs, [&](int r) {
    RngStream rng = RngStream::derived(cfg.master_seed, {kTagX0, (std::uint64_t)r});
    const Eigen::VectorXd w0 = r == 0 ? Eigen::VectorXd::Zero(inst.dim())
                                      : rng.uniform_in_ball(inst.dim(), inst.R);
    OptimizerConfig opt = cfg.optimizer;
    opt.step_size = step;
    report.traces[r] = gradient_descent(*obj, w0, make_gd(opt, step));
  });

  bool all_grad_tol = true, all_in_ball = true;
  double max_dist = 0.0;
  for (int r = 0; r < cfg.n_runs; ++r) {
    const OptimizerTrace& t = report.traces[r];
    all_grad_tol = all_grad_tol && t.termination == Termination::GradTol;
    const double dist = (t.final_point - inst.w_star).norm();
    const double wn = t.final_point.norm();
    all_in_ball = all_in_ball && wn <= inst.R;
    max_dist = std::max(max_dist, dist);
    report.rows.push_back(
        {r, t.total_iters,
         t.termination == Termination::GradTol ? "GradTol" : "MaxIters",
         t.final_value, t.final_grad_norm, dist, wn});
  }
  Asserter asserter{&report.assertions};
  asserter.check("all_runs_reach_grad_tol", all_grad_tol, "");
  asserter.check("endpoints_inside_radius_R", all_in_ball, "");
  report.summary = {{"step_size", step}, {"max_dist_to_w_star", max_dist}};
}

void run_optimize(const ExperimentConfig& cfg, ExperimentReport& report) {
  const std::string& family = cfg.generator.family;
  if (family == "pca") return run_optimize_pca(cfg, report);
  if (family == "tensor") return run_optimize_tensor(cfg, report);
  if (family == "mc") return run_optimize_mc(cfg, report);
  if (family == "glm") return run_optimize_glm(cfg, report);
  throw std::invalid_argument("optimize: unsupported family '" + family + "'");
}

// ---------------------------------------------------------------------------
// certify

void run_certify_pca(const ExperimentConfig& cfg, ExperimentReport& report) {
  const GeneratorSpec spec = resolved_generator(cfg);
  const PcaInstance inst = gen_pca(spec);
  const auto obj = pca_objective(inst);
  const PcaStationaryOracle oracle = pca_stationary_oracle(inst);
  const double l1 = inst.eigvals[0];

  report.columns = {"point",     "eigenvalue",  "grad_norm",
                    "hess_min_eig", "verdict",  "dist_to_min_set"};
  Asserter asserter{&report.assertions};

  int candidates = 0, saddles = 0;
  double max_grad = 0.0;
  bool curvature_ok = true, candidates_are_top = true;
  for (std::size_t i = 0; i < oracle.points.size(); ++i) {
    const auto& [x, eigenvalue] = oracle.points[i];
    const PointClassification cls = classify_point(*obj, x, cfg.certifier);
    const double dist = dist_to_pca_min_set(inst, x);
    max_grad = std::max(max_grad, cls.grad_norm);
    const bool is_top = eigenvalue >= l1 - 1e-9 && x.norm() > 0.0;
    if (cls.verdict == Verdict::CandidateLocalMin) {
      ++candidates;
      if (!is_top) candidates_are_top = false;
    } else if (cls.verdict == Verdict::StrictSaddle) {
      ++saddles;
      // Expected curvature: 2(l_i - l_1) at +-sqrt(l_i) v_i, -2 l_1 at 0.
      const double expected =
          x.norm() > 0.0 ? 2.0 * (eigenvalue - l1) : -2.0 * l1;
      curvature_ok = curvature_ok && cls.hess_min_eig <= expected + 1e-8;
    }
    report.rows.push_back({(long)i, eigenvalue, cls.grad_norm, cls.hess_min_eig,
                           to_string(cls.verdict), dist});
  }

  asserter.check("oracle_points_are_stationary", max_grad <= cfg.oracle_grad_tol,
                 "max ||grad g|| = " + fmt_double(max_grad));
  if (!oracle.degenerate_spectrum) {
    const int expected_saddles = static_cast<int>(oracle.points.size()) - 2;
    asserter.check("only_top_eigendirections_are_minima",
                   candidates == 2 && candidates_are_top,
                   "CandidateLocalMin count = " + std::to_string(candidates));
    asserter.check("all_other_stationary_points_are_strict_saddles",
                   saddles == expected_saddles,
                   "StrictSaddle count = " + std::to_string(saddles) +
                       " expected = " + std::to_string(expected_saddles));
    asserter.check("saddle_curvature_matches_spectral_gaps", curvature_ok, "");
  }
  report.summary = {{"n_points", oracle.points.size()},
                    {"candidates", candidates},
                    {"saddles", saddles},
                    {"degenerate_spectrum", oracle.degenerate_spectrum},
                    {"max_oracle_grad", max_grad}};
}

void run_certify_tensor(const ExperimentConfig& cfg, ExperimentReport& report) {
  const int n = cfg.generator.n_components > 0 ? cfg.generator.n_components
                                               : cfg.generator.d;
  const int d = cfg.generator.d;
  if (n > d) throw std::invalid_argument("certify: n_components > d");

  // Standard-basis representation; stationary points have closed form here.
  TensorInstance inst;
  inst.components = Eigen::MatrixXd::Identity(n, d);
  const auto obj = tensor_ambient(inst);
  const NegatedObjective neg(*obj);  // classify maxima as minima of -f
  const std::vector<SpherePoint> oracle = tensor_stationary_oracle(n, n);

  report.columns = {"point", "support", "rgrad_norm", "tangent_lambda_max",
                    "verdict"};
  Asserter asserter{&report.assertions};

  double max_grad = 0.0;
  bool support1_maxima = true, higher_support_escape = true;
  int maxima_count = 0;
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    Eigen::VectorXd coords = Eigen::VectorXd::Zero(d);
    coords.head(n) = oracle[i].coords();
    const SpherePoint x(coords);
    const int support = static_cast<int>(
        (oracle[i].coords().array().abs() > 1e-12).count());
    const double rgrad = riemannian_grad(*obj, x).vec.norm();
    const double lambda_max =
        tangent_extreme_eigs(riemannian_hess(*obj, x), x).lambda_max;
    const PointClassification cls =
        classify_point(neg, coords, cfg.certifier, nullptr, /*on_sphere=*/true);
    max_grad = std::max(max_grad, rgrad);
    if (support == 1) {
      support1_maxima = support1_maxima &&
                        lambda_max <= cfg.certifier.hess_psd_tol &&
                        cls.verdict == Verdict::CandidateLocalMin;
      ++maxima_count;
    } else {
      higher_support_escape =
          higher_support_escape &&
          lambda_max >= 8.0 / support - 1e-8 &&
          cls.verdict == Verdict::StrictSaddle;
    }
    report.rows.push_back({(long)i, support, rgrad, lambda_max,
                           to_string(cls.verdict)});
  }

  const long expected_count = std::lround(std::pow(3.0, n)) - 1;
  asserter.check("oracle_enumerates_all_sign_patterns",
                 (long)oracle.size() == expected_count,
                 std::to_string(oracle.size()) + " points, expected " +
                     std::to_string(expected_count));
  asserter.check("oracle_points_are_stationary", max_grad <= cfg.oracle_grad_tol,
                 "max Riemannian gradient norm = " + fmt_double(max_grad));
  asserter.check("support_1_points_are_local_maxima",
                 support1_maxima && maxima_count == 2 * n,
                 std::to_string(maxima_count) + " support-1 points");
  asserter.check("wider_support_points_have_escape_directions",
                 higher_support_escape,
                 "tangent quadratic form >= 8/s - 1e-8 for s >= 2");
  report.summary = {{"n_points", oracle.size()},
                    {"max_oracle_rgrad", max_grad},
                    {"support1_count", maxima_count}};
}

void run_certify(const ExperimentConfig& cfg, ExperimentReport& report) {
  const std::string& family = cfg.generator.family;
  if (family == "pca") return run_certify_pca(cfg, report);
  if (family == "tensor") return run_certify_tensor(cfg, report);
  throw std::invalid_argument(
      "certify: stationary-point oracles exist for pca and tensor only");
}

// ---------------------------------------------------------------------------
// landscape-sweep

void run_sweep_classify(const ExperimentConfig& cfg, ExperimentReport& report) {
  const GeneratorSpec spec = resolved_generator(cfg);
  report.columns = {"sample", "grad_norm", "hess_min_eig", "verdict"};

  std::unique_ptr<Objective> obj;
  std::function<Eigen::VectorXd(RngStream&)> sampler;
  bool on_sphere = false;
  std::unique_ptr<NegatedObjective> negated;

  const std::string& family = spec.family;
  if (family == "pca") {
    PcaInstance inst = gen_pca(spec);
    const double radius = 2.0 * std::sqrt(inst.eigvals[0]);
    const int d = inst.dim();
    obj = pca_objective(std::move(inst));
    sampler = [d, radius](RngStream& rng) { return rng.uniform_in_ball(d, radius); };
  } else if (family == "glm") {
    GlmInstance inst = gen_glm(spec);
    const double radius = inst.R;
    const int d = inst.dim();
    obj = glm_empirical(std::move(inst));
    sampler = [d, radius](RngStream& rng) { return rng.uniform_in_ball(d, radius); };
  } else if (family == "mc") {
    McInstance inst = gen_mc(spec);
    const int d = inst.dim();
    const double half = 0.95 * 2.0 * inst.mu / std::sqrt(static_cast<double>(d));
    obj = mc_objective(std::move(inst));
    sampler = [d, half](RngStream& rng) { return rng.uniform_in_cube(d, half); };
  } else if (family == "tensor") {
    TensorInstance inst = gen_tensor(spec);
    const int d = inst.dim();
    obj = tensor_ambient(std::move(inst));
    sampler = [d](RngStream& rng) { return rng.uniform_on_sphere(d); };
    on_sphere = true;
    negated = std::make_unique<NegatedObjective>(*obj);
  } else {
    throw std::invalid_argument("landscape-sweep: unknown family '" + family + "'");
  }

  struct Row {
    double grad_norm, hess_min;
    Verdict verdict;
  };
  std::vector<Row> rows(cfg.n_samples);
  parallel_for(cfg.n_samples, [&](int i) {
    RngStream rng = RngStream::derived(cfg.master_seed, {kTagPoints, (std::uint64_t)i});
    const Eigen::VectorXd x = sampler(rng);
    const Objective& target = on_sphere ? *negated : *obj;
    const PointClassification cls =
        classify_point(target, x, cfg.certifier, nullptr, on_sphere);
    rows[i] = {cls.grad_norm, cls.hess_min_eig, cls.verdict};
  });

  int large = 0, saddle = 0, candidate = 0;
  for (int i = 0; i < cfg.n_samples; ++i) {
    const Row& r = rows[i];
    large += r.verdict == Verdict::LargeGradient;
    saddle += r.verdict == Verdict::StrictSaddle;
    candidate += r.verdict == Verdict::CandidateLocalMin;
    report.rows.push_back({i, r.grad_norm, r.hess_min, to_string(r.verdict)});
  }
  report.summary = {{"large_gradient", large},
                    {"strict_saddle", saddle},
                    {"candidate_local_min", candidate}};
}

void run_sweep_condition(const ExperimentConfig& cfg, ExperimentReport& report) {
  const GeneratorSpec spec = resolved_generator(cfg);
  const Condition condition = condition_from_string(cfg.condition);
  report.columns = {"condition", "parameter", "n_samples", "n_violations",
                    "worst_margin"};
  Asserter asserter{&report.assertions};

  std::unique_ptr<Objective> obj;
  Eigen::VectorXd x_star;
  double radius = 0.0;
  double parameter = cfg.condition_parameter;
  std::string proxy_warning;

  if (spec.family == "glm") {
    GlmInstance inst = gen_glm(spec);
    x_star = inst.w_star;
    radius = inst.R;
    if (parameter <= 0.0) {
      if (condition != Condition::WeakQuasiConvex)
        throw std::invalid_argument(
            "landscape-sweep: condition_parameter required for rsi/pl");
      parameter = 2.0 * inst.gamma;
    }
    if (cfg.use_population_proxy) {
      obj = glm_population_proxy(inst, cfg.proxy_samples,
                                 derive_seed(cfg.master_seed, {kTagProxy}),
                                 &proxy_warning);
    } else {
      obj = glm_empirical(std::move(inst));
    }
  } else if (spec.family == "pca") {
    PcaInstance inst = gen_pca(spec);
    radius = 2.0 * std::sqrt(inst.eigvals[0]);
    x_star = std::sqrt(inst.eigvals[0]) * inst.eigvecs.col(0);
    if (parameter <= 0.0)
      throw std::invalid_argument(
          "landscape-sweep: condition_parameter required for pca probes");
    obj = pca_objective(std::move(inst));
  } else {
    throw std::invalid_argument(
        "landscape-sweep condition probes support glm and pca");
  }

  // Radially uniform sampling covers every length scale of the domain, which
  // matters for conditions that fail only near interior stationary points.
  const int d = static_cast<int>(x_star.size());
  const double r_cap = radius;
  const DomainSampler sampler = [d, r_cap](RngStream& rng) {
    return rng.uniform(0.0, r_cap) * rng.uniform_on_sphere(d);
  };

  const ConditionProbeReport probe = probe_condition(
      *obj, x_star, condition, parameter, sampler, cfg.n_samples,
      derive_seed(cfg.master_seed, {kTagProbe}));
  report.rows.push_back({to_string(probe.condition), probe.parameter,
                         probe.n_samples, probe.n_violations,
                         probe.worst_margin});

  if (spec.family == "glm") {
    asserter.check("condition_holds_up_to_monte_carlo_slack",
                   probe.worst_margin >= cfg.assert_probe_worst_margin,
                   "worst margin = " + fmt_double(probe.worst_margin));
  } else if (condition == Condition::PL) {
    // The saddle at the origin breaks PL over any ball containing it.
    asserter.check("pl_fails_globally_for_pca", probe.n_violations > 0,
                   std::to_string(probe.n_violations) + " violations");
  }
  report.summary = {{"condition", to_string(probe.condition)},
                    {"parameter", probe.parameter},
                    {"n_violations", probe.n_violations},
                    {"worst_margin", probe.worst_margin}};
  if (!proxy_warning.empty()) report.summary["warning"] = proxy_warning;
}

void run_sweep(const ExperimentConfig& cfg, ExperimentReport& report) {
  if (cfg.sweep_kind == "classify") return run_sweep_classify(cfg, report);
  if (cfg.sweep_kind == "condition") return run_sweep_condition(cfg, report);
  throw std::invalid_argument("landscape-sweep: unknown sweep_kind '" +
                              cfg.sweep_kind + "'");
}

// ---------------------------------------------------------------------------
// concentration

void run_concentration(const ExperimentConfig& cfg, ExperimentReport& report) {
  GeneratorSpec spec = resolved_generator(cfg);
  if (spec.family != "mc")
    throw std::invalid_argument("concentration: requires family mc");
  const McInstance inst = gen_mc(spec);

  const McConcentrationResult probe = mc_concentration_probe(
      inst, cfg.n_trials, derive_seed(cfg.master_seed, {kTagTrials}));

  report.columns = {"trial", "deviation"};
  for (int t = 0; t < cfg.n_trials; ++t)
    report.rows.push_back({t, probe.deviations[t]});

  Asserter asserter{&report.assertions};

  // Full-observation control: P_Omega is the identity and every deviation is
  // exactly zero.
  {
    McInstance full = inst;
    full.p = 1.0;
    full.omega.clear();
    for (int i = 0; i < inst.dim(); ++i)
      for (int j = i; j < inst.dim(); ++j) full.omega.emplace_back(i, j);
    const McConcentrationResult zero = mc_concentration_probe(
        full, std::min(cfg.n_trials, 100),
        derive_seed(cfg.master_seed, {kTagTrials, 1}));
    asserter.check("full_observation_deviation_is_exactly_zero",
                   zero.max_abs_deviation == 0.0,
                   "max = " + fmt_double(zero.max_abs_deviation));
  }

  report.summary = {{"p", inst.p},
                    {"epsilon", inst.epsilon},
                    {"sampling_constant", spec.sampling_constant},
                    {"quantile_99", probe.quantile_99},
                    {"max_abs_deviation", probe.max_abs_deviation},
                    {"z_deviation", probe.z_deviation}};

  if (probe.quantile_99 <= inst.epsilon) {
    asserter.check("q99_deviation_within_epsilon", true,
                   "q99 = " + fmt_double(probe.quantile_99) +
                       " <= eps = " + fmt_double(inst.epsilon));
  } else {
    // Calibration fallback: doubling the sampling rate must shrink the
    // deviation quantile. The calibrated constant is recorded in the report.
    GeneratorSpec denser = spec;
    denser.sampling_constant = 2.0 * spec.sampling_constant;
    const McInstance inst2 = gen_mc(denser);
    const McConcentrationResult probe2 = mc_concentration_probe(
        inst2, cfg.n_trials, derive_seed(cfg.master_seed, {kTagTrials, 2}));
    report.summary["calibrated_sampling_constant"] = denser.sampling_constant;
    report.summary["quantile_99_doubled_p"] = probe2.quantile_99;
    const bool improved =
        probe2.quantile_99 == 0.0 ||
        probe.quantile_99 / probe2.quantile_99 >= 1.2;
    asserter.check("doubling_p_shrinks_deviation_quantile", improved,
                   "q99 " + fmt_double(probe.quantile_99) + " -> " +
                       fmt_double(probe2.quantile_99));
  }
}

// ---------------------------------------------------------------------------
// scaling-study

void run_scaling_study(const ExperimentConfig& cfg, ExperimentReport& report) {
  GeneratorSpec base = resolved_generator(cfg);
  if (base.family != "glm")
    throw std::invalid_argument("scaling-study: requires family glm");

  report.columns = {"seed_index", "dist_small_n", "dist_big_n", "ratio"};
  struct Pair {
    double small, big;
  };
  std::vector<Pair> results(cfg.n_runs);

  parallel_for(cfg.n_runs, [&](int s) {
    const auto solve = [&](int n, std::uint64_t tag) {
      GeneratorSpec spec = base;
      spec.n = n;
      spec.seed = derive_seed(cfg.master_seed, {(std::uint64_t)s, tag});
      const GlmInstance inst = gen_glm(spec);
      const auto obj = glm_empirical(inst);
      const double step = cfg.optimizer.step_size > 0.0
                              ? cfg.optimizer.step_size
                              : default_glm_step(inst);
      const OptimizerTrace t = gradient_descent(
          *obj, Eigen::VectorXd::Zero(inst.dim()), make_gd(cfg.optimizer, step));
      return glm_stationary_localization(inst, {t.final_point}).distances[0];
    };
    results[s] = {solve(cfg.scaling_n_small, 1),
                  solve(cfg.scaling_n_small * cfg.scaling_factor, 2)};
  });

  std::vector<double> small, big;
  for (int s = 0; s < cfg.n_runs; ++s) {
    const double ratio = results[s].small / results[s].big;
    small.push_back(results[s].small);
    big.push_back(results[s].big);
    report.rows.push_back({s, results[s].small, results[s].big, ratio});
  }
  const double factor = median(small) / median(big);

  Asserter asserter{&report.assertions};
  asserter.check(
      "median_distance_shrinks_like_sqrt_n",
      factor >= cfg.assert_scaling_lo && factor <= cfg.assert_scaling_hi,
      "median ratio = " + fmt_double(factor) + " expected in [" +
          fmt_double(cfg.assert_scaling_lo) + ", " +
          fmt_double(cfg.assert_scaling_hi) + "]");
  report.summary = {{"median_dist_small", median(small)},
                    {"median_dist_big", median(big)},
                    {"shrink_factor", factor},
                    {"n_small", cfg.scaling_n_small},
                    {"n_big", cfg.scaling_n_small * cfg.scaling_factor}};
}

}  // namespace

// ---------------------------------------------------------------------------

double default_pca_step(const PcaInstance& inst) {
  return 1.0 / (8.0 * inst.M.norm());
}

double default_mc_step(const McInstance& inst) {
  const int d = inst.dim();
  std::vector<int> degree(d, 0);
  for (const auto& [i, j] : inst.omega) {
    ++degree[i];
    if (i != j) ++degree[j];
  }
  const int deg_max = *std::max_element(degree.begin(), degree.end());
  const double cap_sq = 4.0 * inst.mu * inst.mu / d;
  // Hessian norm bound over the incoherent domain (||x||^2 <= 4 mu^2):
  // 2 deg_max cap^2 from the diagonal part, 16 mu^2 + 2 from the masked
  // rank-one parts.
  const double lipschitz =
      2.0 * deg_max * cap_sq + 16.0 * inst.mu * inst.mu + 2.0;
  return 1.0 / (2.0 * lipschitz);
}

double default_glm_step(const GlmInstance& inst) {
  // sup |sigma'|^2 = 1/16 and sup |sigma''| ~ 0.0962; residuals are bounded
  // by 1 + noise_bound.
  const double lipschitz =
      inst.B * inst.B * (0.0625 + (1.0 + inst.noise_bound) * 0.0962);
  return 1.0 / (2.0 * lipschitz);
}

double default_tensor_ascent_step() { return 1.0 / 24.0; }

void ExperimentConfig::validate() const {
  static const char* kNames[] = {"check-grad",     "optimize",
                                 "certify",        "landscape-sweep",
                                 "concentration",  "scaling-study"};
  bool known = false;
  for (const char* name : kNames) known = known || experiment == name;
  if (!known)
    throw std::invalid_argument("ExperimentConfig: unknown experiment '" +
                                experiment + "'");
  if (n_runs < 1) throw std::invalid_argument("ExperimentConfig: n_runs >= 1");
  if (fd_points < 1 || n_samples < 1 || n_trials < 1)
    throw std::invalid_argument("ExperimentConfig: sample counts must be >= 1");
  if (experiment != "check-grad") {
    GeneratorSpec copy = generator;
    copy.validate();
  }
  certifier.validate();
}

void to_json(nlohmann::json& j, const OptimizerConfig& cfg) {
  j = nlohmann::json{{"step_size", cfg.step_size},
                     {"max_iters", cfg.max_iters},
                     {"grad_tol", cfg.grad_tol},
                     {"use_perturbation", cfg.use_perturbation},
                     {"perturb_radius", cfg.perturb_radius},
                     {"perturb_grad_threshold", cfg.perturb_grad_threshold},
                     {"perturb_cooldown_iters", cfg.perturb_cooldown_iters},
                     {"x0_radius", cfg.x0_radius}};
}

void from_json(const nlohmann::json& j, OptimizerConfig& cfg) {
  cfg = OptimizerConfig{};
  cfg.step_size = j.value("step_size", cfg.step_size);
  cfg.max_iters = j.value("max_iters", cfg.max_iters);
  cfg.grad_tol = j.value("grad_tol", cfg.grad_tol);
  cfg.use_perturbation = j.value("use_perturbation", cfg.use_perturbation);
  cfg.perturb_radius = j.value("perturb_radius", cfg.perturb_radius);
  cfg.perturb_grad_threshold =
      j.value("perturb_grad_threshold", cfg.perturb_grad_threshold);
  cfg.perturb_cooldown_iters =
      j.value("perturb_cooldown_iters", cfg.perturb_cooldown_iters);
  cfg.x0_radius = j.value("x0_radius", cfg.x0_radius);
}

void to_json(nlohmann::json& j, const ClassifierThresholds& thr) {
  j = nlohmann::json{{"alpha", thr.alpha},
                     {"beta", thr.beta},
                     {"hess_psd_tol", thr.hess_psd_tol}};
}

void from_json(const nlohmann::json& j, ClassifierThresholds& thr) {
  thr = ClassifierThresholds{};
  thr.alpha = j.value("alpha", thr.alpha);
  thr.beta = j.value("beta", thr.beta);
  thr.hess_psd_tol = j.value("hess_psd_tol", thr.hess_psd_tol);
}

void to_json(nlohmann::json& j, const ExperimentConfig& cfg) {
  j = nlohmann::json{{"experiment", cfg.experiment},
                     {"generator", cfg.generator},
                     {"optimizer", cfg.optimizer},
                     {"certifier", cfg.certifier},
                     {"n_runs", cfg.n_runs},
                     {"master_seed", cfg.master_seed},
                     {"output_dir", cfg.output_dir},
                     {"fd_points", cfg.fd_points},
                     {"fd_rel_tol", cfg.fd_rel_tol},
                     {"fd_step_h", cfg.fd_step_h},
                     {"sweep_kind", cfg.sweep_kind},
                     {"condition", cfg.condition},
                     {"condition_parameter", cfg.condition_parameter},
                     {"n_samples", cfg.n_samples},
                     {"use_population_proxy", cfg.use_population_proxy},
                     {"proxy_samples", cfg.proxy_samples},
                     {"n_trials", cfg.n_trials},
                     {"scaling_n_small", cfg.scaling_n_small},
                     {"scaling_factor", cfg.scaling_factor},
                     {"oracle_grad_tol", cfg.oracle_grad_tol},
                     {"assert_pca_f_gap", cfg.assert_pca_f_gap},
                     {"assert_pca_dist", cfg.assert_pca_dist},
                     {"assert_tensor_overlap_gap", cfg.assert_tensor_overlap_gap},
                     {"assert_mc_localization_const", cfg.assert_mc_localization_const},
                     {"assert_probe_worst_margin", cfg.assert_probe_worst_margin},
                     {"assert_scaling_lo", cfg.assert_scaling_lo},
                     {"assert_scaling_hi", cfg.assert_scaling_hi}};
}

void from_json(const nlohmann::json& j, ExperimentConfig& cfg) {
  cfg = ExperimentConfig{};
  cfg.experiment = j.at("experiment").get<std::string>();
  if (j.contains("generator")) cfg.generator = j.at("generator").get<GeneratorSpec>();
  if (j.contains("optimizer")) cfg.optimizer = j.at("optimizer").get<OptimizerConfig>();
  if (j.contains("certifier")) cfg.certifier = j.at("certifier").get<ClassifierThresholds>();
  cfg.n_runs = j.value("n_runs", cfg.n_runs);
  cfg.master_seed = j.value("master_seed", cfg.master_seed);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  cfg.fd_points = j.value("fd_points", cfg.fd_points);
  cfg.fd_rel_tol = j.value("fd_rel_tol", cfg.fd_rel_tol);
  cfg.fd_step_h = j.value("fd_step_h", cfg.fd_step_h);
  cfg.sweep_kind = j.value("sweep_kind", cfg.sweep_kind);
  cfg.condition = j.value("condition", cfg.condition);
  cfg.condition_parameter = j.value("condition_parameter", cfg.condition_parameter);
  cfg.n_samples = j.value("n_samples", cfg.n_samples);
  cfg.use_population_proxy = j.value("use_population_proxy", cfg.use_population_proxy);
  cfg.proxy_samples = j.value("proxy_samples", cfg.proxy_samples);
  cfg.n_trials = j.value("n_trials", cfg.n_trials);
  cfg.scaling_n_small = j.value("scaling_n_small", cfg.scaling_n_small);
  cfg.scaling_factor = j.value("scaling_factor", cfg.scaling_factor);
  cfg.oracle_grad_tol = j.value("oracle_grad_tol", cfg.oracle_grad_tol);
  cfg.assert_pca_f_gap = j.value("assert_pca_f_gap", cfg.assert_pca_f_gap);
  cfg.assert_pca_dist = j.value("assert_pca_dist", cfg.assert_pca_dist);
  cfg.assert_tensor_overlap_gap =
      j.value("assert_tensor_overlap_gap", cfg.assert_tensor_overlap_gap);
  cfg.assert_mc_localization_const =
      j.value("assert_mc_localization_const", cfg.assert_mc_localization_const);
  cfg.assert_probe_worst_margin =
      j.value("assert_probe_worst_margin", cfg.assert_probe_worst_margin);
  cfg.assert_scaling_lo = j.value("assert_scaling_lo", cfg.assert_scaling_lo);
  cfg.assert_scaling_hi = j.value("assert_scaling_hi", cfg.assert_scaling_hi);
}

bool ExperimentReport::all_passed() const {
  for (const auto& a : assertions)
    if (!a.passed) return false;
  return true;
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json assertions = nlohmann::json::array();
  for (const auto& a : report.assertions)
    assertions.push_back(
        {{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  return nlohmann::json{{"config_echo", report.config_echo},
                        {"columns", report.columns},
                        {"rows", report.rows},
                        {"summary", report.summary},
                        {"assertions", std::move(assertions)},
                        {"all_passed", report.all_passed()},
                        {"wall_time_seconds", report.wall_time_seconds},
                        {"version", report.version}};
}

void write_rows_csv(const ExperimentReport& report, std::ostream& os) {
  for (std::size_t c = 0; c < report.columns.size(); ++c)
    os << (c ? "," : "") << report.columns[c];
  os << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      const nlohmann::json& v = row[c];
      if (v.is_number_float())
        os << fmt_double(v.get<double>());
      else if (v.is_boolean())
        os << (v.get<bool>() ? 1 : 0);
      else if (v.is_string())
        os << v.get<std::string>();
      else
        os << v.dump();
    }
    os << '\n';
  }
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();

  ExperimentReport report;
  {
    // Echo the resolved generator (derived seed, default spectrum) so reruns
    // need no hidden state.
    ExperimentConfig resolved = cfg;
    if (cfg.experiment != "check-grad") resolved.generator = resolved_generator(cfg);
    report.config_echo = resolved;
  }

  if (cfg.experiment == "check-grad")
    run_check_grad(cfg, report);
  else if (cfg.experiment == "optimize")
    run_optimize(cfg, report);
  else if (cfg.experiment == "certify")
    run_certify(cfg, report);
  else if (cfg.experiment == "landscape-sweep")
    run_sweep(cfg, report);
  else if (cfg.experiment == "concentration")
    run_concentration(cfg, report);
  else if (cfg.experiment == "scaling-study")
    run_scaling_study(cfg, report);

  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!cfg.output_dir.empty()) {
    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);
    {
      std::ofstream out(dir / "report.json");
      out << report_to_json(report).dump(2) << '\n';
    }
    {
      std::ofstream out(dir / "rows.csv");
      write_rows_csv(report, out);
    }
    if (!report.traces.empty()) {
      std::filesystem::create_directories(dir / "traces");
      for (std::size_t r = 0; r < report.traces.size(); ++r) {
        char name[32];
        std::snprintf(name, sizeof(name), "run_%03zu.csv", r);
        std::ofstream out(dir / "traces" / name);
        trace_to_csv(report.traces[r], out);
      }
    }
  }
  return report;
}

void emit_plots_data(const ExperimentReport& report,
                     const std::filesystem::path& out_dir) {
  const std::filesystem::path dir = out_dir / "plots";
  std::filesystem::create_directories(dir);

  if (report.f_star.has_value()) {
    if (report.traces.empty()) {
      std::ofstream out(dir / "decay.csv");
      out << "iter,log10_gap\n";
    }
    for (std::size_t r = 0; r < report.traces.size(); ++r) {
      char name[32];
      std::snprintf(name, sizeof(name), "decay_run_%03zu.csv", r);
      std::ofstream out(dir / name);
      out << "iter,log10_gap\n";
      const OptimizerTrace& t = report.traces[r];
      for (std::size_t i = 0; i < t.iters.size(); ++i) {
        const double gap = t.values[i] - *report.f_star;
        if (gap > 0.0)
          out << t.iters[i] << ',' << fmt_double(std::log10(gap)) << '\n';
      }
    }
  }

  // Scatter of (grad_norm, hess_min_eig) for classification sweeps.
  auto grad_col = std::find(report.columns.begin(), report.columns.end(),
                            "grad_norm");
  auto hess_col = std::find(report.columns.begin(), report.columns.end(),
                            "hess_min_eig");
  if (grad_col != report.columns.end() && hess_col != report.columns.end()) {
    const std::size_t gi = grad_col - report.columns.begin();
    const std::size_t hi = hess_col - report.columns.begin();
    std::ofstream out(dir / "sweep_scatter.csv");
    out << "grad_norm,hess_min_eig\n";
    for (const auto& row : report.rows) {
      if (gi < row.size() && hi < row.size() && row[gi].is_number() &&
          row[hi].is_number())
        out << fmt_double(row[gi].get<double>()) << ','
            << fmt_double(row[hi].get<double>()) << '\n';
    }
  }
}

}  // namespace landscape
