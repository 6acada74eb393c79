#include "csf/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include "csf/asymptotics.hpp"
#include "csf/errors.hpp"
#include "csf/exact_solutions.hpp"
#include "csf/flow_arclength.hpp"
#include "csf/flow_theta.hpp"
#include "csf/functionals.hpp"
#include "csf/io.hpp"

namespace csf {
namespace {

namespace fs = std::filesystem;
using std::numbers::pi;

auto indexed(const std::string& stem, std::size_t k) -> std::string {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu", k);
  return stem + "_" + buf + ".csv";
}

class Run {
 public:
  Run(const ExperimentConfig& cfg, fs::path root) : cfg_(cfg), root_(std::move(root)) {
    summary_.name = cfg.name;
  }

  [[nodiscard]] auto config() const -> const ExperimentConfig& { return cfg_; }
  [[nodiscard]] auto control(const std::string& key) const -> double { return cfg_.controls.at(key); }
  [[nodiscard]] auto tol(const std::string& key) const -> double { return cfg_.tolerances.at(key); }

  [[nodiscard]] auto count(const std::string& key, std::size_t min) const -> std::size_t {
    const double v = control(key);
    if (!(v >= static_cast<double>(min)) || v != std::floor(v)) {
      throw Error(ErrorCode::ConfigInvalid, "control '" + key + "' must be an integer >= " +
                                                std::to_string(min));
    }
    return static_cast<std::size_t>(v);
  }

  void metric(const std::string& key, double value) { summary_.metrics[key] = value; }

  void check(bool ok, const std::string& what) {
    if (!ok) { summary_.failures.push_back(what); }
  }

  void write(const std::string& rel, const std::string& content) {
    const auto path = fs::path(cfg_.output_dir) / rel;
    io::write_file(root_ / path, content);
    summary_.files.push_back(path.generic_string());
  }

  template <class State>
  void write_series(const FlowTrajectory<State>& traj, const std::string& prefix = "") {
    for (const auto& [name, values] : traj.diagnostics) {
      write(prefix + "series_" + name + ".csv", io::series_csv(traj.series(name)));
    }
  }

  void write_profiles(const ThetaTrajectory& traj, const std::string& prefix = "") {
    for (std::size_t k = 0; k < traj.size(); ++k) {
      write(prefix + "profiles/" + indexed("profile", k), io::profile_csv(traj.states[k].profile));
    }
  }

  void write_curves(const CurveTrajectory& traj, const std::string& prefix = "") {
    for (std::size_t k = 0; k < traj.size(); ++k) {
      write(prefix + "curves/" + indexed("curve", k), io::curve_csv(traj.states[k].curve));
    }
  }

  auto finish() -> ExperimentSummary {
    summary_.pass = summary_.failures.empty();
    nlohmann::ordered_json m;
    m["experiment"] = cfg_.name;
    m["grid_n"] = cfg_.grid_n;
    m["t_start"] = cfg_.t_start;
    m["t_end"] = cfg_.t_end;
    m["seed"] = cfg_.seed;
    m["controls"] = cfg_.controls;
    m["tolerances"] = cfg_.tolerances;
    m["pass"] = summary_.pass;
    m["metrics"] = summary_.metrics;
    m["failures"] = summary_.failures;
    m["files"] = summary_.files;
    const auto rel = (fs::path(cfg_.output_dir) / "manifest.json").generic_string();
    io::write_file(root_ / rel, m.dump(2) + "\n");
    summary_.files.push_back(rel);
    return summary_;
  }

 private:
  const ExperimentConfig& cfg_;
  fs::path root_;
  ExperimentSummary summary_;
};

auto max_of(const std::vector<double>& v) -> double {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

// Largest drop below the running value; 0 when the sequence never decreases.
auto worst_decrease(const std::vector<double>& v) -> double {
  double worst = 0.0;
  for (std::size_t k = 1; k < v.size(); ++k) { worst = std::max(worst, v[k - 1] - v[k]); }
  return worst;
}

auto worst_increase(const std::vector<double>& v) -> double {
  double worst = 0.0;
  for (std::size_t k = 1; k < v.size(); ++k) { worst = std::max(worst, v[k] - v[k - 1]); }
  return worst;
}

auto least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) -> double {
  const double n = static_cast<double>(x.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  return sxy / sxx;
}

auto theta_controls(const Run& run) -> ThetaControls {
  ThetaControls c;
  c.c_cfl = run.control("c_cfl");
  c.output_times = uniform_output_times(run.config().t_start, run.config().t_end,
                                        run.count("samples", 1));
  return c;
}

auto l_inf(const std::vector<double>& a, const std::vector<double>& b) -> double {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) { worst = std::max(worst, std::abs(a[j] - b[j])); }
  return worst;
}

// Pressure run checked against a closed form at every retained time.
void closed_form_run(Run& run, const std::function<CurvatureProfile(double)>& exact) {
  const auto& cfg = run.config();
  if (!(cfg.t_end < 0.0)) {
    throw Error(ErrorCode::ConfigInvalid, "t_end must be negative for a pressure run");
  }
  const auto traj = evolve_pressure({exact(cfg.t_start), cfg.t_start, Frame::Unnormalized},
                                    cfg.t_end, theta_controls(run));
  FunctionalSeries err{"l_inf_err", {}, {}};
  for (const auto& s : traj.states) {
    err.push(s.time, l_inf(s.profile.values, exact(s.time).values));
  }
  run.write_series(traj);
  run.write("series_l_inf_err.csv", io::series_csv(err));
  run.write_profiles(traj);

  const double e = max_of(err.values);
  const double closure = max_of(traj.diagnostics.at("closure_residual"));
  const auto& max_p = traj.diagnostics.at("max_p");
  const auto& min_p = traj.diagnostics.at("min_p");
  const auto& grad = traj.diagnostics.at("sup_p_theta_sq");
  double lemma_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grad.size(); ++k) {
    lemma_gap = std::max(lemma_gap, grad[k] - 4.0 * max_p[k] * max_p[k]);
  }
  run.metric("l_inf_err", e);
  run.metric("max_closure_residual", closure);
  run.metric("max_p_decrease", worst_decrease(max_p));
  run.metric("min_p_decrease", worst_decrease(min_p));
  run.metric("gradient_bound_gap", lemma_gap);
  run.metric("steps", static_cast<double>(traj.steps));
  run.check(traj.status == RunStatus::Completed, "run stopped before t_end");
  run.check(e < run.tol("l_inf_err"), "l_inf_err above tolerance");
  run.check(closure < run.tol("closure"), "closure residual above tolerance");
  run.check(worst_decrease(max_p) <= 1e-10 * max_of(max_p), "max p decreased");
  run.check(worst_decrease(min_p) <= 1e-10 * max_of(max_p), "min p decreased");
  run.check(lemma_gap <= 0.0, "sup p_theta^2 exceeded 4 sup p^2");
}

void oval_verify(Run& run) {
  const AngleGrid grid(run.config().grid_n);
  const OvalParams op(run.control("lambda"), run.control("gamma"));
  closed_form_run(run, [&](double t) { return oval_pressure(grid, op, t); });
}

void circle_verify(Run& run) {
  const AngleGrid grid(run.config().grid_n);
  closed_form_run(run, [&](double t) { return circle_pressure(grid, t); });
}

void lyapunov_monotone(Run& run) {
  const auto& cfg = run.config();
  const AngleGrid grid(cfg.grid_n);
  const OvalParams op(run.control("lambda"), run.control("gamma"));
  const auto traj = evolve_pressure({oval_pressure(grid, op, cfg.t_start), cfg.t_start,
                                     Frame::Unnormalized},
                                    cfg.t_end, theta_controls(run));
  run.write_series(traj);

  const auto j = traj.series("J");
  const auto& d = traj.diagnostics.at("J_dissipation");
  FunctionalSeries rel{"identity_rel_err", {}, {}};
  for (std::size_t k = 1; k < j.size(); ++k) {
    const double slope = (j.values[k] - j.values[k - 1]) / (j.times[k] - j.times[k - 1]);
    const double avg = 0.5 * (d[k] + d[k - 1]);
    rel.push(j.times[k], std::abs(slope - avg) / std::abs(avg));
  }
  run.write("series_identity_rel_err.csv", io::series_csv(rel));
  run.metric("identity_rel_err", max_of(rel.values));
  run.metric("J_max_increase", worst_increase(j.values));
  run.metric("J_max", max_of(j.values));
  run.check(max_of(rel.values) <= run.tol("identity_rel"), "dJ/dt differs from the dissipation");
  run.check(worst_increase(j.values) <= run.tol("monotone_slack"), "J increased");
  run.check(max_of(j.values) < 0.0, "J is not negative");
}

void i_functional_zero(Run& run) {
  const auto& cfg = run.config();
  if (!(cfg.t_end < 0.0)) { throw Error(ErrorCode::ConfigInvalid, "t_end must be negative"); }
  const AngleGrid grid(cfg.grid_n);
  const OvalParams op(run.control("lambda"), run.control("gamma"));
  const std::vector<double> times{cfg.t_start, -std::sqrt(cfg.t_start * cfg.t_end), cfg.t_end};
  double worst_i = 0.0;
  double worst_d = 0.0;
  for (double t : times) {
    for (const auto& p : {circle_pressure(grid, t), oval_pressure(grid, op, t)}) {
      const auto v = stability_I(p);
      worst_i = std::max(worst_i, std::abs(v.value));
      worst_d = std::max(worst_d, std::abs(v.dissipation));
    }
  }
  run.metric("max_abs_I", worst_i);
  run.metric("max_abs_I_dissipation", worst_d);
  run.check(worst_i < run.tol("I_abs"), "I is not zero");
  run.check(worst_d < run.tol("dissipation_abs"), "I dissipation is not zero");

  FunctionalSeries circle{"harnack_circle", {}, {}};
  FunctionalSeries oval{"harnack_oval", {}, {}};
  const auto ts = uniform_output_times(cfg.t_start, cfg.t_end, run.count("harnack_samples", 1));
  std::vector<double> all{cfg.t_start};
  all.insert(all.end(), ts.begin(), ts.end());
  all.push_back(cfg.t_end);
  for (double t : all) {
    circle.push(t, harnack_margin(circle_pressure(grid, t)));
    oval.push(t, harnack_margin(oval_pressure(grid, op, t)));
  }
  run.write("series_harnack_circle.csv", io::series_csv(circle));
  run.write("series_harnack_oval.csv", io::series_csv(oval));
  const double min_c = *std::min_element(circle.values.begin(), circle.values.end());
  const double min_o = *std::min_element(oval.values.begin(), oval.values.end());
  const double steep = harnack_margin(
      CurvatureProfile::sample(grid, [](double th) { return 1.0 + 0.5 * std::cos(3.0 * th); }));
  run.metric("harnack_min_circle", min_c);
  run.metric("harnack_min_oval", min_o);
  run.metric("harnack_non_ancient", steep);
  run.check(min_c >= 0.0, "negative Harnack margin on the circle");
  run.check(min_o >= 0.0, "negative Harnack margin on the oval");
  run.check(steep < 0.0, "Harnack margin did not detect the non-ancient profile");
}

void normalized_rate(Run& run) {
  const auto& cfg = run.config();
  const AngleGrid grid(cfg.grid_n);
  const double amp = run.control("amplitude");
  for (int l : {2, 3}) {
    const auto k0 = CurvatureProfile::sample(
        grid, [&](double th) { return 1.0 + amp * std::cos(l * th); }, cfg.t_start,
        Representation::Curvature);
    const auto traj = evolve_normalized({anchor_normalized(k0), cfg.t_start, Frame::Normalized},
                                        cfg.t_end, theta_controls(run));
    const std::string tag = "mode" + std::to_string(l);
    run.write_series(traj, tag + "/");
    const auto fit = fit_exponential_rate(traj.series(tag + "_amplitude"));
    const double expected = linearized_spectrum(l);
    run.metric("rate_" + tag, fit.rate);
    run.metric("r_squared_" + tag, fit.r_squared);
    run.check(std::abs(fit.rate - expected) <= run.tol("rate_rel") * std::abs(expected),
              "fitted " + tag + " rate outside the window");
  }
}

void backward_limit(Run& run) {
  const auto& cfg = run.config();
  const AngleGrid grid(cfg.grid_n);
  const OvalParams op(run.control("lambda"), run.control("gamma"));
  const std::vector<double> times{cfg.t_end, 0.5 * (cfg.t_start + cfg.t_end), cfg.t_start};
  std::vector<double> log_res;
  std::string csv = "time,a,b,residual\n";
  BackwardLimitFit last;
  for (double t : times) {
    last = fit_backward_limit(oval_pressure(grid, op, t));
    log_res.push_back(std::log(last.residual));
    csv += io::format_double(t) + "," + io::format_double(last.a) + "," +
           io::format_double(last.b) + "," + io::format_double(last.residual) + "\n";
  }
  run.write("backward_fit.csv", csv);
  const double slope = least_squares_slope(times, log_res);
  const double expected = 2.0 * op.lambda();
  run.metric("a", last.a);
  run.metric("b", last.b);
  run.metric("residual", last.residual);
  run.metric("log_slope", slope);
  run.check(std::abs(last.a - op.lambda()) <= run.tol("a_abs"), "a does not approach lambda");
  run.check(angle_distance_mod_pi(last.b, op.gamma()) <= run.tol("b_abs"),
            "b does not approach gamma");
  run.check(std::abs(slope / expected - 1.0) <= run.tol("slope_rel"),
            "residual log-slope differs from 2 lambda");
}

void classify(Run& run) {
  const auto& cfg = run.config();
  if (!(cfg.t_end < 0.0)) { throw Error(ErrorCode::ConfigInvalid, "t_end must be negative"); }
  const AngleGrid grid(cfg.grid_n);
  const std::size_t count = run.count("snapshots", 3);
  std::vector<double> times;
  for (std::size_t k = 0; k < count; ++k) {
    times.push_back(cfg.t_start + (cfg.t_end - cfg.t_start) * static_cast<double>(k) /
                                      static_cast<double>(count - 1));
  }
  const double tol = run.tol("param_abs");
  std::size_t correct = 0;
  std::size_t cases = 0;
  std::string table = "case,kind,lambda,gamma,residual\n";
  auto record = [&](const std::string& label, const std::vector<CurvatureProfile>& snaps,
                    const std::function<bool(const Classification&)>& ok_if) {
    const auto c = classify_ancient(snaps);
    run.write("snapshots/" + label + ".csv", io::snapshots_csv(snaps));
    table += label + "," + to_string(c.kind) + "," +
             (c.params ? io::format_double(c.params->lambda()) : std::string("nan")) + "," +
             (c.params ? io::format_double(c.params->gamma()) : std::string("nan")) + "," +
             io::format_double(c.residual) + "\n";
    ++cases;
    if (ok_if(c)) {
      ++correct;
    } else {
      run.check(false, "misclassified " + label);
    }
  };

  std::vector<CurvatureProfile> snaps;
  for (double t : times) { snaps.push_back(circle_pressure(grid, t)); }
  record("circle", snaps, [](const Classification& c) { return c.kind == AncientKind::Circle; });

  const std::vector<double> lambdas{0.5, 1.0, 2.0};
  const std::vector<double> gammas{0.0, 0.3, pi / 2.0};
  for (std::size_t a = 0; a < lambdas.size(); ++a) {
    for (std::size_t b = 0; b < gammas.size(); ++b) {
      const OvalParams op(lambdas[a], gammas[b]);
      snaps.clear();
      for (double t : times) { snaps.push_back(oval_pressure(grid, op, t)); }
      record("oval_" + std::to_string(a) + "_" + std::to_string(b), snaps,
             [&](const Classification& c) {
               return c.kind == AncientKind::AngenentOval && c.params &&
                      std::abs(c.params->lambda() - op.lambda()) < tol &&
                      angle_distance_mod_pi(c.params->gamma(), op.gamma()) < tol;
             });
    }
  }

  snaps.clear();
  for (double t : times) {
    snaps.push_back(CurvatureProfile::sample(
        grid, [](double th) { return 1.0 + 0.3 * std::cos(3.0 * th); }, t));
  }
  record("static_mode3", snaps,
         [](const Classification& c) { return c.kind == AncientKind::Unknown; });

  run.write("classification.csv", table);
  run.metric("cases", static_cast<double>(cases));
  run.metric("correct", static_cast<double>(correct));
}

auto polar_curve(const std::function<double(double)>& r, std::size_t m) -> PlanarCurve {
  PlanarCurve c;
  c.points.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double phi = 2.0 * pi * static_cast<double>(j) / static_cast<double>(m);
    c.points.push_back({r(phi) * std::cos(phi), r(phi) * std::sin(phi)});
  }
  return c;
}

auto arc_controls(const Run& run) -> ArcControls {
  ArcControls c;
  c.c_cfl = run.control("c_cfl");
  c.output_times = uniform_output_times(run.config().t_start, run.config().t_end,
                                        run.count("samples", 1));
  return c;
}

// Shared health checks for closed-curve runs.
void closed_curve_checks(Run& run, const CurveTrajectory& traj) {
  const auto& area = traj.diagnostics.at("area");
  const double slope = least_squares_slope(traj.times(), area);
  const double ratio = slope / (-2.0 * pi);
  std::size_t simple = 0;
  for (const auto& s : traj.states) { simple += is_simple(s.curve) ? 1 : 0; }
  run.metric("area_slope", slope);
  run.metric("steps", static_cast<double>(traj.steps));
  run.check(traj.status == RunStatus::Completed, "curve reached extinction before t_end");
  run.check(std::abs(ratio - 1.0) <= run.tol("area_slope_rel"), "area slope differs from -2 pi");
  run.check(simple == traj.size(), "a retained curve is not embedded");
}

void zero_count_checks(Run& run, const CurveTrajectory& traj) {
  const auto& z = traj.diagnostics.at("zero_count");
  run.metric("zero_count_initial", z.front());
  run.metric("zero_count_final", z.back());
  run.metric("zero_count_max_increase", worst_increase(z));
  run.check(z.front() > 0.0, "initial curve has no inflection points");
  run.check(worst_increase(z) == 0.0, "zero count increased");
  run.check(z.back() == 0.0, "curve did not become convex before t_end");
}

void grayson_convexify(Run& run) {
  const auto& cfg = run.config();
  const double a = run.control("limacon");
  const auto c0 = polar_curve([a](double phi) { return 1.0 + a * std::cos(phi); }, cfg.grid_n);
  const auto traj = evolve_curve({c0, cfg.t_start}, cfg.t_end, arc_controls(run));
  run.write_series(traj);
  run.write_curves(traj);
  closed_curve_checks(run, traj);
  zero_count_checks(run, traj);
  run.metric("tac_max_increase", worst_increase(traj.diagnostics.at("tac")));
  run.check(worst_increase(traj.diagnostics.at("tac")) <= run.tol("tac_step"), "TAC increased");

  // The convex tail must certify and carry no sign changes.
  const auto& z = traj.diagnostics.at("zero_count");
  const auto first = static_cast<std::size_t>(std::find(z.begin(), z.end(), 0.0) - z.begin());
  if (first < traj.size()) {
    CurveTrajectory tail;
    for (std::size_t k = first; k < traj.size(); ++k) { tail.append(traj.states[k], {}); }
    const auto cert = convexity_certificate(tail, 1e3, 2.0 * pi + 1e-3);
    run.metric("convex_from_time", traj.states[first].time);
    run.metric("certificate_max_kappa", cert.max_kappa);
    run.metric("certificate_max_tac", cert.max_tac);
    run.check(cert.holds, "convexity certificate fails on the convex tail");
  }
}

auto peanut(const Run& run) -> PlanarCurve {
  const auto& cfg = run.config();
  const double a = run.control("peanut");
  const double eps = run.control("perturbation");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> amp(-eps, eps);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  std::vector<std::pair<double, double>> modes;
  for (int k = 3; k <= 6; ++k) { modes.emplace_back(amp(rng), phase(rng)); }
  return polar_curve(
      [&](double phi) {
        double r = 1.0 + a * std::cos(2.0 * phi);
        for (std::size_t k = 0; k < modes.size(); ++k) {
          r += modes[k].first * std::cos(static_cast<double>(k + 3) * phi + modes[k].second);
        }
        return r;
      },
      cfg.grid_n);
}

void sturm_monotone(Run& run) {
  const auto& cfg = run.config();
  const auto traj = evolve_curve({peanut(run), cfg.t_start}, cfg.t_end, arc_controls(run));
  run.write_series(traj);
  run.write_curves(traj);
  closed_curve_checks(run, traj);
  zero_count_checks(run, traj);
}

void tac_monotone(Run& run) {
  const auto& cfg = run.config();
  const auto traj = evolve_curve({peanut(run), cfg.t_start}, cfg.t_end, arc_controls(run));
  run.write_series(traj);
  run.write_curves(traj);
  closed_curve_checks(run, traj);
  for (const char* name : {"tac", "tac_eps0.1", "tac_eps1"}) {
    const double rise = worst_increase(traj.diagnostics.at(name));
    run.metric(std::string(name) + "_max_increase", rise);
    run.check(rise <= run.tol("tac_step"), std::string(name) + " increased");
  }
  const auto& tac = traj.diagnostics.at("tac");
  run.metric("tac_initial", tac.front());
  run.metric("tac_final", tac.back());
  run.check(tac.front() > 2.0 * pi, "initial curve is convex");
  run.check(std::abs(tac.back() - 2.0 * pi) <= run.tol("final_tac"), "final TAC is not 2 pi");
}

void grim_reaper_soliton(Run& run) {
  const auto& cfg = run.config();
  const double hw = run.control("half_width");
  const double window = run.control("window");
  ArcControls c;
  c.c_cfl = run.control("c_cfl");
  const auto traj =
      evolve_curve({grim_reaper_curve(cfg.t_start, hw, cfg.grid_n), cfg.t_start}, cfg.t_end, c);
  run.write_curves(traj);
  const auto exact = grim_reaper_curve(cfg.t_end, hw, 8 * cfg.grid_n);
  const double h = windowed_hausdorff(traj.states.back().curve, exact, window);
  run.metric("hausdorff", h);
  run.check(traj.status == RunStatus::Completed, "grim reaper run stopped early");
  run.check(h < run.tol("hausdorff"), "evolved grim reaper drifted from the translate");

  // Thin ellipse: blow-up rescaling near the tip against the unit grim reaper.
  const double ratio = run.control("ellipse_ratio");
  PlanarCurve dense;
  for (std::size_t j = 0; j < 8192; ++j) {
    const double s = 2.0 * pi * static_cast<double>(j) / 8192.0;
    dense.points.push_back({ratio * std::cos(s), std::sin(s)});
  }
  ArcControls ce;
  ce.c_cfl = run.control("c_cfl");
  const auto ellipse =
      evolve_curve({redistribute_arclength(dense, run.count("ellipse_points", 32)), 0.0},
                   run.control("ellipse_time"), ce);
  CurveTrajectory last;
  last.append(ellipse.states.back(), {});
  const auto rescaled = blowup_rescale(last);
  run.write("ellipse_rescaled.csv", io::curve_csv(rescaled.trajectory.states.back().curve));
  const double hb = windowed_hausdorff(rescaled.trajectory.states.back().curve,
                                       grim_reaper_curve(0.0, 1.5, 4000), window);
  run.metric("blowup_scale", rescaled.scale);
  run.metric("blowup_hausdorff", hb);
  run.check(hb < run.tol("blowup_hausdorff"), "rescaled ellipse tip is not grim-reaper shaped");
}

using Body = void (*)(Run&);

auto body_for(const std::string& name) -> Body {
  static const std::map<std::string, Body> table{
      {"oval-verify", oval_verify},
      {"circle-verify", circle_verify},
      {"lyapunov-monotone", lyapunov_monotone},
      {"I-functional-zero", i_functional_zero},
      {"normalized-rate", normalized_rate},
      {"backward-limit", backward_limit},
      {"classify", classify},
      {"grayson-convexify", grayson_convexify},
      {"sturm-monotone", sturm_monotone},
      {"tac-monotone", tac_monotone},
      {"grim-reaper-soliton", grim_reaper_soliton},
  };
  const auto it = table.find(name);
  if (it == table.end()) {
    throw Error(ErrorCode::UnknownExperiment, "unknown experiment '" + name + "'");
  }
  return it->second;
}

}  // namespace

auto run_experiment(const ExperimentConfig& config, const std::filesystem::path& root)
    -> ExperimentSummary {
  validate(config);
  const Body body = body_for(config.name);
  Run run(config, root);
  try {
    body(run);
  } catch (const Error& e) {
    throw Error(e.code(), "experiment '" + config.name + "': " + e.detail());
  }
  return run.finish();
}

auto summary_json(const std::vector<ExperimentSummary>& summaries) -> std::string {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& s : summaries) {
    nlohmann::ordered_json e;
    e["name"] = s.name;
    e["pass"] = s.pass;
    e["metrics"] = s.metrics;
    e["files"] = s.files;
    e["failures"] = s.failures;
    out.push_back(std::move(e));
  }
  return out.dump(2) + "\n";
}

}  // namespace csf
