#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "gricci/analysis.hpp"
#include "gricci/functionals.hpp"
#include "gricci/scenario.hpp"

namespace gricci::scenario {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int log_level() {
  const char* v = std::getenv("GRICCI_LOG");
  return v ? std::atoi(v) : 0;
}

void log(const std::string& message) {
  if (log_level() > 0) std::cerr << "[gricci] " << message << '\n';
}

FlowState initial_state(const ScenarioConfig& c) {
  const GridSpec grid(c.n_nodes, c.scheme);
  return {0.0, GroupoidMetric(grid, TwistedField(c.k_per.sample(grid), c.lambda), c.u.sample(grid)),
          HaarWeight{c.f.sample(grid)}};
}

EvolveControls controls_for(const ScenarioConfig& c) {
  EvolveControls e;
  e.checkpoint_interval = c.flow.checkpoint_interval;
  e.cfl = c.flow.cfl;
  e.coupled = c.flow.coupled;
  if (c.flow.dt_policy == DtPolicy::fixed) e.fixed_dt = c.flow.fixed_dt;
  return e;
}

/// Trajectory with an evolving Haar system, built once and shared by the
/// suites that need it.
class Context {
 public:
  Context(const ScenarioConfig& config, const FlowTrajectory& traj) : config_(config), traj_(traj) {}

  const FlowTrajectory& trajectory() const { return traj_; }
  const ScenarioConfig& config() const { return config_; }

  const ConjugateSolution& conjugate() {
    if (!conjugate_) {
      const FlowState& last = traj_.checkpoints.back();
      conjugate_ = backward_conjugate_solve(traj_, PeriodicField((-last.haar.f.values).exp()));
    }
    return *conjugate_;
  }

  const FlowTrajectory& with_haar() {
    if (traj_.haar_evolution != HaarEvolution::frozen) return traj_;
    if (!coupled_) coupled_ = with_conjugate_haar(traj_, conjugate());
    return *coupled_;
  }

 private:
  const ScenarioConfig& config_;
  const FlowTrajectory& traj_;
  std::optional<ConjugateSolution> conjugate_;
  std::optional<FlowTrajectory> coupled_;
};

SuiteResult failed(Suite suite, const std::string& message) {
  SuiteResult r;
  r.suite = suite;
  r.status = SuiteStatus::fail;
  r.message = message;
  return r;
}

void set_worst(SuiteResult& r, double t, std::optional<double> y, double margin) {
  if (!r.worst || margin < r.worst->margin) r.worst = Location{t, y, margin};
}

void finish(SuiteResult& r) {
  if (r.status != SuiteStatus::not_applicable) {
    r.status = (r.worst && r.worst->margin < 0.0) ? SuiteStatus::fail : SuiteStatus::pass;
  }
}

SuiteResult monotonicity_suite(Context& ctx) {
  const Tolerances& tol = ctx.config().tolerances;
  SuiteResult r;
  r.suite = Suite::monotonicity;
  const FlowTrajectory& traj = ctx.with_haar();
  const std::vector<double> f = f_functional_series(traj);
  const std::vector<VariationSample> variation = f_variation_residual(traj);

  std::vector<double> rate;
  for (const FlowState& s : traj.checkpoints) rate.push_back(f_functional_rate(s.metric, s.haar));
  std::vector<double> residual(f.size(), kNaN);
  for (std::size_t i = 0, j = 0; i < traj.checkpoints.size(); ++i) {
    r.times.push_back(traj.checkpoints[i].t);
    if (j < variation.size() && variation[j].t == traj.checkpoints[i].t) residual[i] = variation[j++].residual;
  }

  std::vector<double> integral(f.size(), 0.0);
  double worst_decrease = 0.0, worst_defect = 0.0, worst_residual = 0.0;
  std::size_t decreases = 0;
  for (std::size_t i = 1; i < f.size(); ++i) {
    integral[i] = integral[i - 1] + 0.5 * (r.times[i] - r.times[i - 1]) * (rate[i] + rate[i - 1]);
    worst_defect = std::max(worst_defect, std::abs(f[i] - f[0] - integral[i]));
    const double drop = f[i - 1] - f[i];
    const double allowed = tol.monotonicity_slack * (1.0 + std::abs(f[i - 1]));
    worst_decrease = std::max(worst_decrease, drop);
    if (drop > allowed) ++decreases;
    set_worst(r, r.times[i], std::nullopt, allowed - drop);
  }
  for (const VariationSample& v : variation) {
    if (v.t < tol.monotonicity_t_min) continue;
    worst_residual = std::max(worst_residual, v.residual);
    set_worst(r, v.t, std::nullopt, tol.monotonicity_residual - v.residual);
  }
  r.series.emplace_back("F", f);
  r.series.emplace_back("rhs_integral", integral);
  r.series.emplace_back("residual", residual);
  r.metrics["F_initial"] = f.front();
  r.metrics["F_final"] = f.back();
  r.metrics["worst_residual"] = worst_residual;
  r.metrics["worst_decrease"] = worst_decrease;
  r.metrics["decreases"] = static_cast<double>(decreases);
  r.metrics["increment_defect"] = worst_defect;
  r.metrics["mass_drift"] = std::abs(total_measure(traj.checkpoints.back().metric, traj.checkpoints.back().haar) -
                                     total_measure(traj.checkpoints.front().metric, traj.checkpoints.front().haar));
  finish(r);
  if (variation.empty()) {
    r.status = SuiteStatus::fail;
    r.message = "too few checkpoints for a centered derivative";
  }
  return r;
}

SuiteResult blowdown_suite(Context& ctx) {
  const Tolerances& tol = ctx.config().tolerances;
  const FlowTrajectory& traj = ctx.trajectory();
  SuiteResult r;
  r.suite = Suite::blowdown;
  const auto samples = blowdown_diagnostics(traj);
  if (samples.empty()) {
    r.status = SuiteStatus::not_applicable;
    r.message = "no checkpoints with t > 0";
    return r;
  }
  std::vector<double> lo_g, hi_g, h, lo_r, hi_r;
  for (const BlowdownSample& s : samples) {
    r.times.push_back(s.t);
    lo_g.push_back(s.t_min_grad_sq);
    hi_g.push_back(s.t_max_grad_sq);
    h.push_back(s.t2_max_h);
    lo_r.push_back(s.t_min_r);
    hi_r.push_back(s.t_max_r);
  }
  r.series.emplace_back("t_min_grad_sq", lo_g);
  r.series.emplace_back("t_max_grad_sq", hi_g);
  r.series.emplace_back("t2_max_h", h);
  r.series.emplace_back("t_min_r", lo_r);
  r.series.emplace_back("t_max_r", hi_r);

  const BlowdownSample& last = samples.back();
  const FlowState& state = traj.checkpoints.back();
  const Eigen::ArrayXd grad = grad_norm_sq(state.metric, state.metric.k()).values * last.t;
  const Eigen::ArrayXd curv = scalar_curvature(state.metric).values * last.t;
  const GridSpec& grid = state.metric.spec();
  auto node = [&](const Eigen::ArrayXd& v, bool low) {
    Eigen::Index j = 0;
    low ? v.minCoeff(&j) : v.maxCoeff(&j);
    return grid.node(static_cast<int>(j));
  };

  if (state.metric.holonomy() != 0.0) {
    // Limit: |∇k̂|² = 1/2, Ĥ = 0, R̂ = -1.
    set_worst(r, last.t, node(grad, true), last.t_min_grad_sq - tol.blowdown_grad_low);
    set_worst(r, last.t, node(grad, false), tol.blowdown_grad_high - last.t_max_grad_sq);
    set_worst(r, last.t, std::nullopt, tol.blowdown_h - last.t2_max_h);
    set_worst(r, last.t, node(curv, true), last.t_min_r - tol.blowdown_r_low);
    set_worst(r, last.t, node(curv, false), tol.blowdown_r_high - last.t_max_r);
  } else {
    // Untwisted flows flatten, so every rescaled invariant tends to 0.
    set_worst(r, last.t, node(grad, false), tol.flat - last.t_max_grad_sq);
    set_worst(r, last.t, std::nullopt, tol.blowdown_h - last.t2_max_h);
    set_worst(r, last.t, node(curv.abs(), false), tol.flat - last.t_max_abs_r);
  }
  std::size_t h_increases = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].t > 10.0 && samples[i].t2_max_h > samples[i - 1].t2_max_h && samples[i].t2_max_h > 1e-12) {
      ++h_increases;
    }
  }
  r.metrics["t"] = last.t;
  r.metrics["t_min_grad_sq"] = last.t_min_grad_sq;
  r.metrics["t_max_grad_sq"] = last.t_max_grad_sq;
  r.metrics["t2_max_h"] = last.t2_max_h;
  r.metrics["t_min_r"] = last.t_min_r;
  r.metrics["t_max_r"] = last.t_max_r;
  r.metrics["h_increases_after_10"] = static_cast<double>(h_increases);
  finish(r);
  return r;
}

SuiteResult max_principle_suite(Context& ctx) {
  const Tolerances& tol = ctx.config().tolerances;
  const FlowTrajectory& traj = ctx.trajectory();
  SuiteResult r;
  r.suite = Suite::max_principle;
  const FlowState& first = traj.checkpoints.front();
  const PeriodicField g0 = grad_norm_sq(first.metric, first.metric.k());
  const double alpha = g0.min(), beta = g0.max();
  r.metrics["alpha"] = alpha;
  r.metrics["beta"] = beta;
  if (!(alpha > 0.0)) {
    r.status = SuiteStatus::not_applicable;
    r.message = "min |∇k|² = 0 initially; the envelopes need a positive lower bound";
    return r;
  }
  MonitorOptions opts;
  opts.slack = tol.max_principle_slack;
  opts.fit_until = tol.max_principle_fit_until;
  const MonitorReport m = max_principle_monitor(traj, alpha, beta, opts);
  std::vector<double> lo, hi, h, lb, ub;
  for (const MonitorSample& s : m.series) {
    r.times.push_back(s.t);
    lo.push_back(s.min_grad_sq);
    hi.push_back(s.max_grad_sq);
    h.push_back(s.max_h);
    lb.push_back(alpha / (2.0 * alpha * s.t + 1.0));
    ub.push_back(beta / (2.0 * beta * s.t + 1.0));
  }
  r.series.emplace_back("min_grad_sq", lo);
  r.series.emplace_back("max_grad_sq", hi);
  r.series.emplace_back("max_h", h);
  r.series.emplace_back("lower_bound", lb);
  r.series.emplace_back("upper_bound", ub);
  std::size_t lower = 0, upper = 0, hv = 0;
  for (const BoundViolation& v : m.violations) {
    (v.bound == "lower" ? lower : v.bound == "upper" ? upper : hv)++;
    set_worst(r, v.t, v.y, v.margin);
  }
  if (m.violations.empty()) {
    const double margin = std::min({m.worst_lower_margin, m.worst_upper_margin, m.worst_h_margin});
    set_worst(r, 0.0, std::nullopt, margin);
  }
  r.metrics["fitted_h_constant"] = m.fitted_h_constant;
  r.metrics["worst_lower_margin"] = m.worst_lower_margin;
  r.metrics["worst_upper_margin"] = m.worst_upper_margin;
  r.metrics["worst_h_margin"] = m.worst_h_margin;
  r.metrics["lower_violations"] = static_cast<double>(lower);
  r.metrics["upper_violations"] = static_cast<double>(upper);
  r.metrics["h_violations"] = static_cast<double>(hv);
  finish(r);
  return r;
}

SuiteResult lambda_suite(Context& ctx) {
  const Tolerances& tol = ctx.config().tolerances;
  const FlowTrajectory& traj = ctx.trajectory();
  SuiteResult r;
  r.suite = Suite::lambda;
  // Dense eigensolves are the cost driver; thin long trajectories to ~200 samples.
  const std::size_t stride = std::max<std::size_t>(1, (traj.checkpoints.size() + 199) / 200);
  double prev = 0.0, worst_drop = 0.0, min_ground = std::numeric_limits<double>::infinity();
  std::vector<double> values;
  for (std::size_t i = 0; i < traj.checkpoints.size(); i += stride) {
    const FlowState& s = traj.checkpoints[i];
    const LambdaResult lr = lambda_functional(s.metric);
    r.times.push_back(s.t);
    values.push_back(lr.lambda);
    min_ground = std::min(min_ground, lr.ground_state.min());
    if (values.size() > 1) {
      const double drop = prev - lr.lambda;
      worst_drop = std::max(worst_drop, drop);
      set_worst(r, s.t, std::nullopt, tol.lambda_slack * (1.0 + std::abs(prev)) - drop);
    }
    prev = lr.lambda;
  }
  if (r.times.back() != traj.checkpoints.back().t) {
    const FlowState& s = traj.checkpoints.back();
    const LambdaResult lr = lambda_functional(s.metric);
    r.times.push_back(s.t);
    values.push_back(lr.lambda);
    min_ground = std::min(min_ground, lr.ground_state.min());
    set_worst(r, s.t, std::nullopt, tol.lambda_slack * (1.0 + std::abs(prev)) - (prev - lr.lambda));
  }
  r.series.emplace_back("lambda", values);

  // λ(g) <= F(g, f) for random normalized weights at the final state.
  const GroupoidMetric& g = traj.checkpoints.back().metric;
  const double lam = values.back();
  std::mt19937_64 rng(ctx.config().seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst_gap = std::numeric_limits<double>::infinity();
  const GridSpec& grid = g.spec();
  for (int trial = 0; trial < 50; ++trial) {
    FieldSpec spec;
    for (int m = 1; m <= 4; ++m) {
      spec.cos.push_back(0.3 * normal(rng) / m);
      spec.sin.push_back(0.3 * normal(rng) / m);
    }
    const HaarWeight h = normalized(g, HaarWeight{spec.sample(grid)});
    const double gap = f_functional(g, h) - lam;
    worst_gap = std::min(worst_gap, gap);
    set_worst(r, traj.checkpoints.back().t, std::nullopt, gap + tol.lambda_slack * (1.0 + std::abs(lam)));
  }
  if (!r.worst) set_worst(r, r.times.front(), std::nullopt, tol.lambda_slack);
  r.metrics["lambda_initial"] = values.front();
  r.metrics["lambda_final"] = values.back();
  r.metrics["worst_decrease"] = worst_drop;
  r.metrics["min_ground_state"] = min_ground;
  r.metrics["min_f_minus_lambda"] = worst_gap;
  r.metrics["samples"] = static_cast<double>(values.size());
  finish(r);
  if (!(min_ground > 0.0)) {
    r.status = SuiteStatus::fail;
    r.message = "ground state lost positivity";
  }
  return r;
}

SuiteResult harnack_suite(Context& ctx) {
  const Tolerances& tol = ctx.config().tolerances;
  SuiteResult r;
  r.suite = Suite::harnack;
  const auto samples = harnack_residual(ctx.trajectory(), ctx.conjugate());
  if (samples.empty()) {
    r.status = SuiteStatus::fail;
    r.message = "too few checkpoints for a centered derivative";
    return r;
  }
  std::vector<double> residual, rhs_min;
  double worst = 0.0, lowest = std::numeric_limits<double>::infinity();
  for (const HarnackSample& s : samples) {
    r.times.push_back(s.t);
    residual.push_back(s.residual);
    rhs_min.push_back(s.rhs_min);
    worst = std::max(worst, s.residual);
    lowest = std::min(lowest, s.rhs_min);
    set_worst(r, s.t, s.y, tol.harnack_residual - s.residual);
    if (s.rhs_min < 0.0) set_worst(r, s.t, std::nullopt, s.rhs_min);
  }
  r.series.emplace_back("harnack_residual", residual);
  r.series.emplace_back("harnack_rhs_min", rhs_min);
  r.metrics["worst_residual"] = worst;
  r.metrics["min_rhs"] = lowest;
  r.metrics["min_v"] = [&] {
    double m = std::numeric_limits<double>::infinity();
    for (const PeriodicField& v : ctx.conjugate().v) m = std::min(m, v.min());
    return m;
  }();
  finish(r);
  return r;
}

/// Least-squares slope of log E against t; 0 when E vanishes identically.
double log_slope(const std::vector<EnergyBreakdown>& e) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const EnergyBreakdown& b : e) {
    if (!(b.E > 0.0)) continue;
    const double y = std::log(b.E);
    n += 1;
    sx += b.t;
    sy += y;
    sxx += b.t * b.t;
    sxy += b.t * y;
  }
  if (n < 2) return 0.0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SuiteResult uniqueness_suite(Context& ctx) {
  const ScenarioConfig& c = ctx.config();
  const Tolerances& tol = c.tolerances;
  SuiteResult r;
  r.suite = Suite::uniqueness;
  const FlowState start = initial_state(c);
  const double t_end = std::min(c.flow.t_end, tol.uniqueness_t_max);
  const double cfl = c.flow.cfl > 0.0 ? c.flow.cfl : default_cfl(c.scheme);
  // Half the initial limit leaves room for the limit to shrink along the run.
  const double dt = 0.5 * stability_limit(start.metric, cfl);
  auto run = [&](const FlowState& s, double step) {
    EvolveControls e;
    e.checkpoint_interval = std::min(c.flow.checkpoint_interval, 0.1 * t_end);
    e.fixed_dt = step;
    return evolve(s, t_end, e);
  };
  const auto refined = uniqueness_energy(run(start, dt), run(start, 0.5 * dt));

  std::mt19937_64 rng(c.seed);
  const double centre = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  FlowState bumped = start;
  const GridSpec& grid = start.metric.spec();
  const PeriodicField bump = PeriodicField::sample(grid, [&](double y) {
    const double d = std::remainder(y - centre, 1.0);
    return 1e-3 * std::exp(-40.0 * d * d);
  });
  bumped.metric = GroupoidMetric(grid, start.metric.k(), PeriodicField(start.metric.u().values + bump.values));
  const auto coarse = uniqueness_energy(run(start, dt), run(bumped, dt));
  const auto fine = uniqueness_energy(run(start, 0.5 * dt), run(bumped, 0.5 * dt));

  std::vector<double> e_ref, e_pert;
  double worst = 0.0;
  for (std::size_t i = 0; i < refined.size(); ++i) {
    r.times.push_back(refined[i].t);
    e_ref.push_back(refined[i].E);
    e_pert.push_back(fine[i].E);
    worst = std::max(worst, refined[i].E);
    set_worst(r, refined[i].t, std::nullopt, tol.uniqueness_energy - refined[i].E);
  }
  r.series.emplace_back("energy_refinement", e_ref);
  r.series.emplace_back("energy_perturbed", e_pert);
  const double rate_coarse = log_slope(coarse), rate_fine = log_slope(fine);
  const double change = std::abs(rate_coarse - rate_fine) / std::max(1.0, std::abs(rate_fine));
  r.metrics["dt"] = dt;
  r.metrics["worst_refinement_energy"] = worst;
  r.metrics["growth_rate"] = rate_fine;
  r.metrics["growth_rate_coarse"] = rate_coarse;
  r.metrics["growth_rate_change"] = change;
  r.metrics["bump_centre"] = centre;
  if (!std::isfinite(rate_fine) || !std::isfinite(rate_coarse)) {
    set_worst(r, t_end, std::nullopt, -1.0);
    r.message = "growth rate of the perturbed energy is not finite";
  } else {
    set_worst(r, t_end, centre, tol.uniqueness_rate_stability - change);
  }
  finish(r);
  return r;
}

SuiteResult steady_suite(Context& ctx) {
  const ScenarioConfig& c = ctx.config();
  SuiteResult r;
  r.suite = Suite::steady_classify;
  const FlowState& s = ctx.trajectory().checkpoints.back();
  const SteadyClassification cls = classify_steady(s.metric, s.haar, c.tolerances.steady);
  r.metrics["sup_abs_r"] = cls.sup_abs_r;
  r.metrics["cusp_residual"] = cls.cusp_residual;
  r.metrics["soliton_residual"] = cls.soliton_residual;
  r.message = std::string(to_string(cls.kind));
  const bool ok = c.expected_steady_kind.empty() || c.expected_steady_kind == to_string(cls.kind);
  const double residual = cls.kind == SteadyKind::flat_torus ? std::max(cls.sup_abs_r, cls.soliton_residual)
                          : cls.kind == SteadyKind::hyperbolic_cusp_normalized ? cls.cusp_residual
                                                                               : cls.sup_abs_r;
  set_worst(r, s.t, std::nullopt, ok ? c.tolerances.steady - residual : -1.0);
  if (ok && cls.kind == SteadyKind::none) r.worst->margin = 0.0;
  finish(r);
  if (!ok) r.message = "classified as " + r.message + ", expected " + c.expected_steady_kind;
  return r;
}

SuiteResult run_suite(Suite suite, Context& ctx) {
  switch (suite) {
    case Suite::monotonicity: return monotonicity_suite(ctx);
    case Suite::blowdown: return blowdown_suite(ctx);
    case Suite::max_principle: return max_principle_suite(ctx);
    case Suite::lambda: return lambda_suite(ctx);
    case Suite::harnack: return harnack_suite(ctx);
    case Suite::uniqueness: return uniqueness_suite(ctx);
    case Suite::steady_classify: return steady_suite(ctx);
  }
  throw UsageError("unknown suite");
}

std::string trajectory_csv(const FlowTrajectory& traj) {
  std::ostringstream out;
  out.precision(17);
  const int n = traj.spec().n_nodes();
  out << "t";
  for (const char* block : {"k_per", "u", "f"}) {
    for (int j = 0; j < n; ++j) out << ',' << block << '[' << j << ']';
  }
  out << '\n';
  for (const FlowState& s : traj.checkpoints) {
    out << s.t;
    for (const PeriodicField* field : {&s.metric.k().periodic_part, &s.metric.u(), &s.haar.f}) {
      for (int j = 0; j < n; ++j) out << ',' << (*field)[j];
    }
    out << '\n';
  }
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

}  // namespace

bool RunReport::all_passed() const {
  return std::none_of(suites.begin(), suites.end(),
                      [](const SuiteResult& s) { return s.status == SuiteStatus::fail; });
}

RunReport run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  validate(config);
  const auto start = Clock::now();
  RunReport report;
  report.config = config;

  FlowTrajectory traj;
  std::string flow_error;
  log("evolving " + config.name + " to t=" + std::to_string(config.flow.t_end));
  try {
    traj = evolve(initial_state(config), config.flow.t_end, controls_for(config));
  } catch (const Error& e) {
    flow_error = e.what();
    if (const auto* blow = dynamic_cast<const BlowUpError*>(&e); blow && blow->partial()) traj = *blow->partial();
  }
  report.timing.flow_seconds = seconds_since(start);
  report.statistics.checkpoints = traj.checkpoints.size();
  report.statistics.steps = traj.step_log.size();
  if (!traj.step_log.empty()) {
    const auto [lo, hi] = std::minmax_element(traj.step_log.begin(), traj.step_log.end(),
                                              [](const StepRecord& a, const StepRecord& b) { return a.dt < b.dt; });
    report.statistics.min_dt = lo->dt;
    report.statistics.max_dt = hi->dt;
  }

  const auto suites_start = Clock::now();
  Context ctx(config, traj);
  for (Suite suite : config.suites) {
    if (!flow_error.empty()) {
      report.suites.push_back(failed(suite, "flow failed: " + flow_error));
      continue;
    }
    log("suite " + std::string(to_string(suite)));
    try {
      report.suites.push_back(run_suite(suite, ctx));
    } catch (const Error& e) {
      report.suites.push_back(failed(suite, e.what()));
    }
  }
  report.timing.suites_seconds = seconds_since(suites_start);
  report.timing.total_seconds = seconds_since(start);

  if (options.write_files) {
    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    if (config.write_trajectory && !traj.checkpoints.empty()) {
      report.trajectory_csv = "trajectory.csv";
      write_file(dir / report.trajectory_csv, trajectory_csv(traj));
    }
    write_file(dir / "report.json", emit_report(report, ReportFormat::json));
    write_file(dir / "series.csv", emit_report(report, ReportFormat::csv));
    std::ostringstream timing;
    timing.precision(6);
    timing << "{\n  \"flow_seconds\": " << report.timing.flow_seconds << ",\n  \"suites_seconds\": "
           << report.timing.suites_seconds << ",\n  \"total_seconds\": " << report.timing.total_seconds << "\n}\n";
    write_file(dir / "timing.json", timing.str());
  }
  return report;
}

}  // namespace gricci::scenario
