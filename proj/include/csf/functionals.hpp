#pragma once

#include <span>

#include "csf/geometry.hpp"
#include "csf/trajectory.hpp"

namespace csf {

/// Quadrature tolerances shared by tests and experiments.
struct QuadratureTolerances {
  static constexpr double closed_form = 1e-10;
  static constexpr double evolved = 1e-6;
};

struct FunctionalValue {
  double value = 0.0;
  double dissipation = 0.0;  // instantaneous d/dt along the pressure equation
};

/// J(p) = ∫ (p_θ²/p − 4p) dθ with dJ/dt = −2 ∫ p_t²/p² dθ.
auto lyapunov_J(const CurvatureProfile& profile) -> FunctionalValue;

/// I(α) = ∫ (α_θ² − 4α²) dθ, α = p_θ, with dI/dt = −2 ∫ α_t²/p dθ and
/// α_t = p(α_θθ + 4α).
auto stability_I(const CurvatureProfile& profile) -> FunctionalValue;

/// max_j |p p_θθ − ½ p_θ² + 2p²|; zeros of p are allowed.
auto steady_state_residual(const CurvatureProfile& profile) -> double;

/// λ_w² ∫_a^b f_θ² − ∫_a^b f², for f sampled uniformly on [a, b] including
/// both endpoints. Nonnegative exactly when the Wirtinger inequality holds.
auto wirtinger_gap(std::span<const double> f, double a, double b, double lambda_w,
                   double boundary_tol = 1e-8) -> double;

}  // namespace csf
