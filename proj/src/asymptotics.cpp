#include "csf/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "csf/errors.hpp"
#include "csf/spectral.hpp"

namespace csf {

auto ModeSpectrum::amplitude(int l) const -> double {
  if (l < 0 || l > max_mode()) { throw Error(ErrorCode::InvalidArgument, "mode out of range"); }
  return std::hypot(alpha[static_cast<std::size_t>(l)], beta[static_cast<std::size_t>(l)]);
}

auto ModeSpectrum::l2_norm_squared() const -> double {
  double sum = 2.0 * std::numbers::pi * alpha[0] * alpha[0];
  for (std::size_t l = 1; l < alpha.size(); ++l) {
    sum += std::numbers::pi * (alpha[l] * alpha[l] + beta[l] * beta[l]);
  }
  return sum;
}

auto fourier_decompose(std::span<const double> samples, int max_mode) -> ModeSpectrum {
  const std::size_t n = samples.size();
  if (max_mode < 0) { throw Error(ErrorCode::InvalidArgument, "negative max mode"); }
  if (n < 2 * static_cast<std::size_t>(max_mode) + 2) {
    std::ostringstream msg;
    msg << "need n >= 2L + 2 samples for L = " << max_mode << ", got n = " << n;
    throw Error(ErrorCode::GridTooCoarse, msg.str());
  }
  const auto L = static_cast<std::size_t>(max_mode);
  ModeSpectrum s{std::vector<double>(L + 1, 0.0), std::vector<double>(L + 1, 0.0)};
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t l = 0; l <= L; ++l) {
    double c = 0.0;
    double sn = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      // l·j reduced mod n keeps the angle argument exact.
      const double angle = h * static_cast<double>((l * j) % n);
      c += samples[j] * std::cos(angle);
      sn += samples[j] * std::sin(angle);
    }
    const double w = (l == 0 ? 1.0 : 2.0) / static_cast<double>(n);
    s.alpha[l] = w * c;
    s.beta[l] = l == 0 ? 0.0 : w * sn;
  }
  return s;
}

auto synthesize(const ModeSpectrum& spectrum, std::size_t n) -> std::vector<double> {
  std::vector<double> out(n, 0.0);
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    double v = spectrum.alpha[0];
    for (std::size_t l = 1; l < spectrum.alpha.size(); ++l) {
      const double angle = h * static_cast<double>((l * j) % n);
      v += spectrum.alpha[l] * std::cos(angle) + spectrum.beta[l] * std::sin(angle);
    }
    out[j] = v;
  }
  return out;
}

auto linearized_spectrum(int l) -> double {
  if (l < 0) { throw Error(ErrorCode::InvalidArgument, "mode index must be >= 0"); }
  return 2.0 - static_cast<double>(l) * static_cast<double>(l);
}

auto apply_linearized_operator(std::span<const double> f) -> std::vector<double> {
  auto out = spectral::derivative(f, 2);
  for (std::size_t j = 0; j < out.size(); ++j) { out[j] += 2.0 * f[j]; }
  return out;
}

auto fit_exponential_rate(const FunctionalSeries& series) -> RateFit {
  const std::size_t m = series.values.size();
  if (m < 5 || series.times.size() != m) {
    throw Error(ErrorCode::InvalidArgument, "rate fit needs at least 5 samples");
  }
  std::vector<double> logs(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (!(series.values[k] > 0.0)) {
      throw Error(ErrorCode::NonPositiveValues,
                  "series '" + series.name + "' has a non-positive value at index " +
                      std::to_string(k));
    }
    logs[k] = std::log(series.values[k]);
  }
  const double mt = std::accumulate(series.times.begin(), series.times.end(), 0.0) / m;
  const double my = std::accumulate(logs.begin(), logs.end(), 0.0) / m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double dx = series.times[k] - mt;
    const double dy = logs[k] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) { throw Error(ErrorCode::InvalidArgument, "rate fit needs distinct times"); }
  RateFit fit;
  fit.rate = sxy / sxx;
  fit.intercept = my - fit.rate * mt;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double r = logs[k] - (fit.intercept + fit.rate * series.times[k]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

// a cos²(θ + b) = a g_b with g_b = ½ + ½ cos 2(θ + b) and ‖g_b‖² = 3π/4
// for every b. Maximising ⟨p, g_b⟩ over b fixes 2b from the mode-2 phase.
auto fit_backward_limit(const CurvatureProfile& profile) -> BackwardLimitFit {
  const auto p = profile.pressure();
  const auto modes = fourier_decompose(p, 2);
  const double m2 = modes.amplitude(2);
  BackwardLimitFit fit;
  fit.b = m2 > 0.0 ? wrap_pi(0.5 * std::atan2(-modes.beta[2], modes.alpha[2])) : 0.0;
  fit.a = std::max(0.0, (4.0 * modes.alpha[0] + 2.0 * m2) / 3.0);
  std::vector<double> misfit(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double c = std::cos(profile.grid.node(j) + fit.b);
    const double r = p[j] - fit.a * c * c;
    misfit[j] = r * r;
  }
  fit.residual = std::sqrt(spectral::integrate(misfit));
  return fit;
}

auto extract_quadrupole(const ThetaTrajectory& trajectory) -> QuadrupoleSeries {
  QuadrupoleSeries out;
  for (const auto& state : trajectory.states) {
    if (state.frame != Frame::Normalized) {
      throw Error(ErrorCode::WrongFrame, "quadrupole extraction needs a normalized trajectory");
    }
    auto dev = state.profile.curvature();
    for (auto& v : dev) { v -= 1.0; }
    const auto modes = fourier_decompose(dev, 2);
    const double growth = std::exp(2.0 * state.time);
    out.times.push_back(state.time);
    out.a.push_back(modes.alpha[2] * growth);
    out.b.push_back(modes.beta[2] * growth);
  }
  return out;
}

auto to_string(AncientKind kind) -> const char* {
  switch (kind) {
    case AncientKind::Circle: return "Circle";
    case AncientKind::AngenentOval: return "AngenentOval";
    case AncientKind::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

struct SnapshotModes {
  double time;
  double mean;       // c(t)
  double alpha2;
  double beta2;
  double off_form;   // sup-norm of content outside modes 0 and 2, relative to sup p
};

auto analyse_snapshot(const CurvatureProfile& profile) -> SnapshotModes {
  const auto p = profile.pressure();
  const int top = static_cast<int>(p.size() / 2) - 1;
  const auto modes = fourier_decompose(p, top);
  ModeSpectrum kept{std::vector<double>(3, 0.0), std::vector<double>(3, 0.0)};
  kept.alpha[0] = modes.alpha[0];
  kept.alpha[2] = modes.alpha[2];
  kept.beta[2] = modes.beta[2];
  const auto model = synthesize(kept, p.size());
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    worst = std::max(worst, std::abs(p[j] - model[j]));
    scale = std::max(scale, std::abs(p[j]));
  }
  return {profile.time, modes.alpha[0], modes.alpha[2], modes.beta[2],
          scale > 0.0 ? worst / scale : worst};
}

// c(t) for the oval family with extinction at t0.
auto oval_mean(double lambda, double t, double t0) -> double {
  const double x = 2.0 * lambda * (t - t0);
  return lambda * (1.0 + std::exp(x)) / (-2.0 * std::expm1(x));
}

}  // namespace

auto classify_ancient(std::span<const CurvatureProfile> snapshots, ClassifyTolerances tol)
    -> Classification {
  if (snapshots.size() < 3) {
    throw Error(ErrorCode::TooFewSnapshots, "classification needs at least 3 snapshots");
  }
  std::vector<SnapshotModes> data;
  for (const auto& s : snapshots) {
    if (!(s.time < 0.0)) { throw Error(ErrorCode::NonAncientTime, "snapshot times must be < 0"); }
    data.push_back(analyse_snapshot(s));
  }
  std::sort(data.begin(), data.end(),
            [](const SnapshotModes& a, const SnapshotModes& b) { return a.time < b.time; });
  for (std::size_t k = 1; k < data.size(); ++k) {
    if (data[k].time == data[k - 1].time) {
      throw Error(ErrorCode::TooFewSnapshots, "snapshot times must be distinct");
    }
  }

  Classification result;
  double worst = 0.0;
  for (const auto& d : data) { worst = std::max(worst, d.off_form); }
  if (worst > tol.form) {
    result.residual = worst;
    return result;
  }
  for (const auto& d : data) {
    if (!(d.mean > 0.0)) {
      result.residual = std::max(worst, 1.0);
      return result;
    }
  }

  bool round = true;
  for (const auto& d : data) {
    if (std::hypot(d.alpha2, d.beta2) > tol.round * d.mean) { round = false; }
  }

  const double m = static_cast<double>(data.size());
  if (round) {
    // c' = 2c² ⇒ c = 1/(−2(t − t0)).
    double t0 = 0.0;
    for (const auto& d : data) { t0 += (d.time + 1.0 / (2.0 * d.mean)) / m; }
    for (const auto& d : data) {
      if (!(d.time < t0)) { worst = std::max(worst, 1.0); continue; }
      const double model = 1.0 / (-2.0 * (d.time - t0));
      worst = std::max(worst, std::abs(d.mean - model) / d.mean);
    }
    result.residual = worst;
    if (worst <= tol.form) {
      result.kind = AncientKind::Circle;
      result.extinction_time = t0;
    }
    return result;
  }

  // p = c(t) + (λ/2) cos 2(θ + γ): mode 2 has amplitude λ/2 and phase −2γ.
  double lambda = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  for (const auto& d : data) {
    const double amp = std::hypot(d.alpha2, d.beta2);
    lambda += 2.0 * amp / m;
    cx += d.alpha2 / amp;
    cy += -d.beta2 / amp;
  }
  const double gamma = wrap_pi(0.5 * std::atan2(cy, cx));
  for (const auto& d : data) {
    const double amp = 2.0 * std::hypot(d.alpha2, d.beta2);
    worst = std::max(worst, std::abs(amp - lambda) / lambda);
    const double g = wrap_pi(0.5 * std::atan2(-d.beta2, d.alpha2));
    worst = std::max(worst, angle_distance_mod_pi(g, gamma));
  }

  // c' = 2c² − λ²/2 needs c > λ/2; invert c(t) for the extinction time.
  double t0 = 0.0;
  for (const auto& d : data) {
    const double num = 2.0 * d.mean - lambda;
    if (!(num > 0.0)) {
      result.residual = std::max(worst, 1.0);
      return result;
    }
    const double shift = std::log(num / (2.0 * d.mean + lambda)) / (2.0 * lambda);
    t0 += (d.time - shift) / m;
  }
  for (const auto& d : data) {
    if (!(d.time < t0)) { worst = std::max(worst, 1.0); continue; }
    worst = std::max(worst, std::abs(d.mean - oval_mean(lambda, d.time, t0)) / d.mean);
  }
  result.residual = worst;
  if (worst <= tol.form) {
    result.kind = AncientKind::AngenentOval;
    result.params = OvalParams(lambda, gamma);
    result.extinction_time = t0;
  }
  return result;
}

}  // namespace csf
