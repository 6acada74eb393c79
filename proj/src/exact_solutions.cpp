#include "csf/exact_solutions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "csf/errors.hpp"

namespace csf {
namespace {

void require_ancient(double t) {
  if (!(t < 0.0)) {
    throw Error(ErrorCode::NonAncientTime, "time must be negative, got " + std::to_string(t));
  }
}

// q/(1 − q) with q = e^{2λt}, without cancellation for very negative t.
auto oval_offset(double lambda, double t) -> double {
  const double x = 2.0 * lambda * t;
  return std::exp(x) / -std::expm1(x);
}

}  // namespace

OvalParams::OvalParams(double lambda, double gamma) : lambda_(lambda), gamma_(wrap_pi(gamma)) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidArgument, "oval lambda must be positive and finite");
  }
}

auto wrap_pi(double angle) -> double {
  double r = std::fmod(angle, std::numbers::pi);
  if (r < 0.0) { r += std::numbers::pi; }
  if (r >= std::numbers::pi) { r = 0.0; }
  return r;
}

auto angle_distance_mod_pi(double a, double b) -> double {
  const double d = wrap_pi(a - b);
  return std::min(d, std::numbers::pi - d);
}

auto circle_pressure_value(double t) -> double {
  require_ancient(t);
  return 1.0 / (-2.0 * t);
}

// λ(1/(1 − q) − sin²) = λ(q/(1 − q) + cos²): the second form keeps full
// relative precision where p is tiny.
auto oval_pressure_value(const OvalParams& params, double t, double theta) -> double {
  require_ancient(t);
  const double c = std::cos(theta + params.gamma());
  return params.lambda() * (oval_offset(params.lambda(), t) + c * c);
}

auto oval_pressure_dt(const OvalParams& params, double t) -> double {
  require_ancient(t);
  const double lambda = params.lambda();
  const double x = 2.0 * lambda * t;
  const double one_minus_q = -std::expm1(x);
  return 2.0 * lambda * lambda * std::exp(x) / (one_minus_q * one_minus_q);
}

auto oval_pressure_dtheta(const OvalParams& params, double theta) -> double {
  return -params.lambda() * std::sin(2.0 * (theta + params.gamma()));
}

auto oval_pressure_dtheta2(const OvalParams& params, double theta) -> double {
  return -2.0 * params.lambda() * std::cos(2.0 * (theta + params.gamma()));
}

auto circle_pressure(const AngleGrid& grid, double t) -> CurvatureProfile {
  const double p = circle_pressure_value(t);
  return {grid, std::vector<double>(grid.size(), p), t, Representation::Pressure};
}

auto oval_pressure(const AngleGrid& grid, const OvalParams& params, double t) -> CurvatureProfile {
  require_ancient(t);
  return CurvatureProfile::sample(
      grid, [&](double theta) { return oval_pressure_value(params, t, theta); }, t);
}

auto oval_ansatz_residual(double a, double b, double da_dt, double db_dt) -> AnsatzResidual {
  return {db_dt, da_dt - (-2.0 * a * b + 2.0 * a * a)};
}

auto backward_limit_profile(const AngleGrid& grid, double a, double b) -> CurvatureProfile {
  if (a < 0.0) { throw Error(ErrorCode::InvalidArgument, "backward limit amplitude must be >= 0"); }
  return CurvatureProfile::sample(grid, [&](double theta) {
    const double c = std::cos(theta + b);
    return a * c * c;
  });
}

auto grim_reaper_height(double t, double x) -> double { return t - std::log(std::cos(x)); }

auto grim_reaper_curve(double t, double half_width, std::size_t points) -> PlanarCurve {
  if (!(half_width > 0.0 && half_width < std::numbers::pi / 2.0)) {
    throw Error(ErrorCode::InvalidArgument, "grim reaper half width must lie in (0, pi/2)");
  }
  if (points < 3) { throw Error(ErrorCode::InvalidArgument, "grim reaper needs >= 3 points"); }
  PlanarCurve curve;
  curve.closed = false;
  curve.points.reserve(points);
  for (std::size_t j = 0; j < points; ++j) {
    const double x =
        -half_width + 2.0 * half_width * static_cast<double>(j) / static_cast<double>(points - 1);
    curve.points.push_back({x, grim_reaper_height(t, x)});
  }
  return curve;
}

}  // namespace csf
