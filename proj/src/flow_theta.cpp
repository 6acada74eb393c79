#include "csf/flow_theta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "csf/asymptotics.hpp"
#include "csf/errors.hpp"
#include "csf/functionals.hpp"
#include "csf/spectral.hpp"

namespace csf {
namespace {

using Rhs = std::function<std::vector<double>(const std::vector<double>&)>;

auto raw_pressure_rhs(const std::vector<double>& p) -> std::vector<double> {
  const auto p1 = spectral::derivative(p, 1);
  const auto p2 = spectral::derivative(p, 2);
  std::vector<double> out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    out[j] = p[j] * p2[j] - 0.5 * p1[j] * p1[j] + 2.0 * p[j] * p[j];
  }
  return out;
}

auto raw_normalized_rhs(const std::vector<double>& k) -> std::vector<double> {
  const auto k2 = spectral::derivative(k, 2);
  std::vector<double> out(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    out[j] = k[j] * k[j] * k2[j] + k[j] * k[j] * k[j] - k[j];
  }
  return out;
}

void require_positive(const std::vector<double>& v, double time, const char* where) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!(v[j] > 0.0)) {
      std::ostringstream msg;
      msg << where << ": positivity lost at node " << j << ", time " << time << " (value "
          << v[j] << ")";
      throw Error(ErrorCode::NonPositive, msg.str());
    }
  }
}

auto rk4_step(const std::vector<double>& u, double dt, const Rhs& f) -> std::vector<double> {
  const std::size_t n = u.size();
  std::vector<double> tmp(n);
  const auto k1 = f(u);
  for (std::size_t j = 0; j < n; ++j) { tmp[j] = u[j] + 0.5 * dt * k1[j]; }
  const auto k2 = f(tmp);
  for (std::size_t j = 0; j < n; ++j) { tmp[j] = u[j] + 0.5 * dt * k2[j]; }
  const auto k3 = f(tmp);
  for (std::size_t j = 0; j < n; ++j) { tmp[j] = u[j] + dt * k3[j]; }
  const auto k4 = f(tmp);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = u[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return out;
}

auto pressure_diagnostics(const CurvatureProfile& p) -> std::map<std::string, double> {
  std::map<std::string, double> d;
  const auto j = lyapunov_J(p);
  const auto i = stability_I(p);
  d["J"] = j.value;
  d["J_dissipation"] = j.dissipation;
  d["I"] = i.value;
  d["I_dissipation"] = i.dissipation;
  d["closure_residual"] = closure_residual(p).norm();
  d["min_p"] = p.min_value();
  d["max_p"] = p.max_value();
  d["harnack_margin"] = harnack_margin(p);
  const auto p1 = spectral::derivative(p.values, 1);
  double sup_p1_sq = 0.0;
  for (double v : p1) { sup_p1_sq = std::max(sup_p1_sq, v * v); }
  d["sup_p_theta_sq"] = sup_p1_sq;
  return d;
}

auto normalized_diagnostics(const CurvatureProfile& k) -> std::map<std::string, double> {
  std::map<std::string, double> d;
  std::vector<double> dev(k.values);
  double dev_inf = 0.0;
  for (auto& v : dev) {
    v -= 1.0;
    dev_inf = std::max(dev_inf, std::abs(v));
  }
  d["kappa_dev_inf"] = dev_inf;
  const auto modes = fourier_decompose(dev, 4);
  for (int l = 0; l <= 4; ++l) { d["mode" + std::to_string(l) + "_amplitude"] = modes.amplitude(l); }
  d["alpha2"] = modes.alpha[2];
  d["beta2"] = modes.beta[2];
  d["min_kappa"] = k.min_value();
  d["max_kappa"] = k.max_value();
  return d;
}

struct Integration {
  Rhs rhs;
  // Largest stable step for the current state.
  std::function<double(const std::vector<double>&)> stable_dt;
  // Blow-up indicator compared against p_blowup.
  std::function<double(const std::vector<double>&)> blowup_measure;
  std::function<std::map<std::string, double>(const CurvatureProfile&)> diagnostics;
  Representation representation;
  Frame frame;
  const char* name;
};

auto integrate(const ThetaFlowState& initial, double t_end, const ThetaControls& controls,
               const Integration& scheme) -> ThetaTrajectory {
  if (!(t_end > initial.time)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(scheme.name) + ": end time must exceed start time");
  }
  require_positive(initial.profile.values, initial.time, scheme.name);

  std::vector<double> stops;
  for (double t : controls.output_times) {
    if (t > initial.time && t < t_end) { stops.push_back(t); }
  }
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  stops.push_back(t_end);

  const AngleGrid grid = initial.profile.grid;
  auto make_state = [&](std::vector<double> values, double t) {
    return ThetaFlowState{CurvatureProfile(grid, std::move(values), t, scheme.representation), t,
                          scheme.frame};
  };

  ThetaTrajectory traj;
  auto first = make_state(initial.profile.values, initial.time);
  traj.append(first, scheme.diagnostics(first.profile));

  std::vector<double> u = initial.profile.values;
  double t = initial.time;
  for (double stop : stops) {
    while (t < stop) {
      if (traj.steps >= controls.max_steps) {
        throw Error(ErrorCode::StepSizeUnderflow, std::string(scheme.name) + ": step budget exhausted");
      }
      const double dt_stable = scheme.stable_dt(u);
      if (dt_stable < controls.dt_min) {
        std::ostringstream msg;
        msg << scheme.name << ": stable step " << dt_stable << " below dt_min at time " << t;
        throw Error(ErrorCode::StepSizeUnderflow, msg.str());
      }
      double dt = dt_stable;
      bool lands = false;
      if (t + dt >= stop || stop - (t + dt) < 1e-3 * dt_stable) {
        dt = stop - t;
        lands = true;
      }
      u = rk4_step(u, dt, scheme.rhs);
      t = lands ? stop : t + dt;
      ++traj.steps;
      require_positive(u, t, scheme.name);
      if (scheme.blowup_measure(u) > controls.p_blowup) {
        auto state = make_state(u, t);
        traj.append(state, scheme.diagnostics(state.profile));
        traj.status = RunStatus::Extinction;
        return traj;
      }
    }
    auto state = make_state(u, t);
    traj.append(state, scheme.diagnostics(state.profile));
  }
  return traj;
}

}  // namespace

auto pressure_rhs(const CurvatureProfile& profile) -> std::vector<double> {
  const auto p = profile.pressure();
  require_positive(p, profile.time, "pressure_rhs");
  return raw_pressure_rhs(p);
}

auto normalized_rhs(const CurvatureProfile& profile) -> std::vector<double> {
  const auto k = profile.curvature();
  require_positive(k, profile.time, "normalized_rhs");
  return raw_normalized_rhs(k);
}

auto harnack_margin(const CurvatureProfile& profile) -> double {
  const auto rhs = pressure_rhs(profile);
  return *std::min_element(rhs.begin(), rhs.end());
}

auto evolve_pressure(const ThetaFlowState& initial, double t_end, const ThetaControls& controls)
    -> ThetaTrajectory {
  if (initial.frame != Frame::Unnormalized) {
    throw Error(ErrorCode::WrongFrame, "evolve_pressure expects an unnormalized state");
  }
  if (t_end > 0.0) {
    throw Error(ErrorCode::InvalidArgument, "evolve_pressure: t_end must be <= 0");
  }
  const double h2 = initial.profile.grid.spacing() * initial.profile.grid.spacing();
  auto max_of = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
  Integration scheme{
      raw_pressure_rhs,
      [&](const std::vector<double>& p) { return controls.c_cfl * h2 / max_of(p); },
      max_of,
      pressure_diagnostics,
      Representation::Pressure,
      Frame::Unnormalized,
      "evolve_pressure",
  };
  ThetaFlowState start = initial;
  start.profile = initial.profile.as_pressure();
  return integrate(start, t_end, controls, scheme);
}

auto evolve_normalized(const ThetaFlowState& initial, double tau_end, const ThetaControls& controls)
    -> ThetaTrajectory {
  if (initial.frame != Frame::Normalized) {
    throw Error(ErrorCode::WrongFrame, "evolve_normalized expects a normalized state");
  }
  const double h2 = initial.profile.grid.spacing() * initial.profile.grid.spacing();
  auto max_sq = [](const std::vector<double>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    return m * m;
  };
  Integration scheme{
      raw_normalized_rhs,
      [&](const std::vector<double>& k) { return controls.c_cfl * h2 / max_sq(k); },
      max_sq,
      normalized_diagnostics,
      Representation::Curvature,
      Frame::Normalized,
      "evolve_normalized",
  };
  ThetaFlowState start = initial;
  start.profile = initial.profile.as_curvature();
  return integrate(start, tau_end, controls, scheme);
}

auto estimate_extinction_time(const CurvatureProfile& pressure_profile) -> double {
  return pressure_profile.time + enclosed_area(pressure_profile) / (2.0 * std::numbers::pi);
}

auto shift_to_extinction(const ThetaFlowState& state) -> ThetaFlowState {
  if (state.frame != Frame::Unnormalized) {
    throw Error(ErrorCode::WrongFrame, "extinction shift applies to unnormalized states");
  }
  const double extinction = estimate_extinction_time(state.profile);
  ThetaFlowState out = state;
  out.time = state.time - extinction;
  out.profile.time = out.time;
  return out;
}

auto anchor_normalized(const CurvatureProfile& kappa_tilde) -> CurvatureProfile {
  const auto k = kappa_tilde.as_curvature();
  const double area = enclosed_area(k);
  const double scale = std::sqrt(area / std::numbers::pi);
  auto out = k;
  for (auto& v : out.values) { v *= scale; }
  return out;
}

auto to_normalized(const ThetaFlowState& state) -> ThetaFlowState {
  if (state.frame != Frame::Unnormalized) {
    throw Error(ErrorCode::WrongFrame, "to_normalized expects an unnormalized state");
  }
  if (!(state.time < 0.0)) {
    throw Error(ErrorCode::NonAncientTime, "normalization needs t < 0");
  }
  const double factor = std::sqrt(-2.0 * state.time);
  const double tau = -0.5 * std::log(-state.time);
  auto k = state.profile.curvature();
  for (auto& v : k) { v *= factor; }
  return {CurvatureProfile(state.profile.grid, std::move(k), tau, Representation::Curvature), tau,
          Frame::Normalized};
}

auto to_unnormalized(const ThetaFlowState& state) -> ThetaFlowState {
  if (state.frame != Frame::Normalized) {
    throw Error(ErrorCode::WrongFrame, "to_unnormalized expects a normalized state");
  }
  const double t = -std::exp(-2.0 * state.time);
  auto p = state.profile.curvature();
  for (auto& v : p) { v = v * v / (-2.0 * t); }
  return {CurvatureProfile(state.profile.grid, std::move(p), t, Representation::Pressure), t,
          Frame::Unnormalized};
}

auto geometric_output_times(double t_start, double t_end, int per_octave) -> std::vector<double> {
  if (!(t_start < t_end && t_end < 0.0) || per_octave < 1) {
    throw Error(ErrorCode::InvalidArgument, "geometric sampling needs t_start < t_end < 0");
  }
  std::vector<double> out;
  const double ratio = std::pow(2.0, -1.0 / per_octave);
  for (int k = 1;; ++k) {
    const double t = t_start * std::pow(ratio, k);
    if (t >= t_end) { break; }
    out.push_back(t);
  }
  return out;
}

auto uniform_output_times(double t_start, double t_end, std::size_t count) -> std::vector<double> {
  std::vector<double> out;
  for (std::size_t k = 1; k <= count; ++k) {
    out.push_back(t_start + (t_end - t_start) * static_cast<double>(k) /
                                static_cast<double>(count + 1));
  }
  return out;
}

}  // namespace csf
