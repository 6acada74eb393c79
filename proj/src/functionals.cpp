#include "csf/functionals.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "csf/errors.hpp"
#include "csf/flow_theta.hpp"
#include "csf/spectral.hpp"

namespace csf {

void FunctionalSeries::push(double time, double value) {
  if (!times.empty() && !(time > times.back())) {
    throw Error(ErrorCode::InvalidArgument, "series '" + name + "' times must increase strictly");
  }
  times.push_back(time);
  values.push_back(value);
}

auto lyapunov_J(const CurvatureProfile& profile) -> FunctionalValue {
  const auto p = profile.pressure();
  const auto pt = pressure_rhs(profile);  // validates positivity
  const auto p1 = spectral::derivative(p, 1);
  std::vector<double> value(p.size());
  std::vector<double> diss(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    value[j] = p1[j] * p1[j] / p[j] - 4.0 * p[j];
    diss[j] = pt[j] * pt[j] / (p[j] * p[j]);
  }
  return {spectral::integrate(value), -2.0 * spectral::integrate(diss)};
}

auto stability_I(const CurvatureProfile& profile) -> FunctionalValue {
  const auto p = profile.pressure();
  for (double v : p) {
    if (!(v > 0.0)) { throw Error(ErrorCode::NonPositive, "stability_I needs p > 0"); }
  }
  const auto alpha = spectral::derivative(p, 1);
  const auto alpha1 = spectral::derivative(alpha, 1);
  const auto alpha2 = spectral::derivative(alpha, 2);
  std::vector<double> value(p.size());
  std::vector<double> diss(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    value[j] = alpha1[j] * alpha1[j] - 4.0 * alpha[j] * alpha[j];
    const double alpha_t = p[j] * (alpha2[j] + 4.0 * alpha[j]);
    diss[j] = alpha_t * alpha_t / p[j];
  }
  return {spectral::integrate(value), -2.0 * spectral::integrate(diss)};
}

auto steady_state_residual(const CurvatureProfile& profile) -> double {
  const auto p = profile.pressure();
  const auto p1 = spectral::derivative(p, 1);
  const auto p2 = spectral::derivative(p, 2);
  double worst = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double r = p[j] * p2[j] - 0.5 * p1[j] * p1[j] + 2.0 * p[j] * p[j];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

namespace {

// Fourth-order differences; one-sided at the two nodes nearest each end.
auto derivative_4th(std::span<const double> f, double h) -> std::vector<double> {
  const std::size_t m = f.size();
  std::vector<double> d(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (j >= 2 && j + 2 < m) {
      d[j] = (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) / (12.0 * h);
    } else if (j < 2) {
      d[j] = (-25.0 * f[j] + 48.0 * f[j + 1] - 36.0 * f[j + 2] + 16.0 * f[j + 3] - 3.0 * f[j + 4]) /
             (12.0 * h);
    } else {
      d[j] = (25.0 * f[j] - 48.0 * f[j - 1] + 36.0 * f[j - 2] - 16.0 * f[j - 3] + 3.0 * f[j - 4]) /
             (12.0 * h);
    }
  }
  return d;
}

// Composite Simpson; a trailing 3/8 panel handles an odd interval count.
auto simpson(std::span<const double> f, double h) -> double {
  const std::size_t intervals = f.size() - 1;
  std::size_t simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
  double sum = 0.0;
  for (std::size_t j = 0; j + 2 <= simpson_end; j += 2) {
    sum += h / 3.0 * (f[j] + 4.0 * f[j + 1] + f[j + 2]);
  }
  if (simpson_end != intervals) {
    const std::size_t j = simpson_end;
    sum += 3.0 * h / 8.0 * (f[j] + 3.0 * f[j + 1] + 3.0 * f[j + 2] + f[j + 3]);
  }
  return sum;
}

}  // namespace

auto wirtinger_gap(std::span<const double> f, double a, double b, double lambda_w,
                   double boundary_tol) -> double {
  if (f.size() < 7) { throw Error(ErrorCode::InvalidArgument, "wirtinger_gap needs >= 7 samples"); }
  if (!(b > a)) { throw Error(ErrorCode::BadInterval, "interval must have b > a"); }
  if (b - a > lambda_w * std::numbers::pi * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "interval length " << b - a << " exceeds lambda_w * pi = " << lambda_w * std::numbers::pi;
    throw Error(ErrorCode::BadInterval, msg.str());
  }
  if (std::abs(f.front()) > boundary_tol || std::abs(f.back()) > boundary_tol) {
    std::ostringstream msg;
    msg << "endpoint values (" << f.front() << ", " << f.back() << ") exceed " << boundary_tol;
    throw Error(ErrorCode::BadBoundary, msg.str());
  }
  const double h = (b - a) / static_cast<double>(f.size() - 1);
  const auto df = derivative_4th(f, h);
  std::vector<double> f_sq(f.size());
  std::vector<double> df_sq(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    f_sq[j] = f[j] * f[j];
    df_sq[j] = df[j] * df[j];
  }
  return lambda_w * lambda_w * simpson(df_sq, h) - simpson(f_sq, h);
}

}  // namespace csf
