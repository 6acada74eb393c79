#pragma once

#include "csf/geometry.hpp"

namespace csf {

/// Identifies one Angenent oval. λ > 0; γ is reduced to [0, π).
class OvalParams {
 public:
  OvalParams(double lambda, double gamma);

  [[nodiscard]] auto lambda() const noexcept -> double { return lambda_; }
  [[nodiscard]] auto gamma() const noexcept -> double { return gamma_; }

 private:
  double lambda_;
  double gamma_;
};

/// Reduces an angle to [0, π).
auto wrap_pi(double angle) -> double;

/// Distance between two angles taken mod π.
auto angle_distance_mod_pi(double a, double b) -> double;

// Pointwise closed forms. All require t < 0 and throw NonAncientTime otherwise.
auto circle_pressure_value(double t) -> double;
auto oval_pressure_value(const OvalParams& params, double t, double theta) -> double;
auto oval_pressure_dt(const OvalParams& params, double t) -> double;
auto oval_pressure_dtheta(const OvalParams& params, double theta) -> double;
auto oval_pressure_dtheta2(const OvalParams& params, double theta) -> double;

/// p(θ, t) = 1/(−2t): the contracting circle of radius √(−2t).
auto circle_pressure(const AngleGrid& grid, double t) -> CurvatureProfile;

/// p(θ, t) = λ(1/(1 − e^{2λt}) − sin²(θ + γ)).
auto oval_pressure(const AngleGrid& grid, const OvalParams& params, double t) -> CurvatureProfile;

struct AnsatzResidual {
  double b_equation = 0.0;  // b' − 0
  double a_equation = 0.0;  // a' − (−2ab + 2a²)
};

/// Residual of p = a(t) − b(t) sin²(θ + γ) substituted into the pressure equation.
auto oval_ansatz_residual(double a, double b, double da_dt, double db_dt) -> AnsatzResidual;

/// p̃(θ) = a cos²(θ + b), the possible backward limits. Zeros are allowed.
auto backward_limit_profile(const AngleGrid& grid, double a, double b) -> CurvatureProfile;

/// Samples the grim reaper y = t − ln cos x on x ∈ [−w, w], uniform in x.
auto grim_reaper_curve(double t, double half_width, std::size_t points) -> PlanarCurve;

/// Height of the grim reaper at x.
auto grim_reaper_height(double t, double x) -> double;

}  // namespace csf
