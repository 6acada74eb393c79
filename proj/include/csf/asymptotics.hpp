#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "csf/exact_solutions.hpp"
#include "csf/flow_theta.hpp"
#include "csf/geometry.hpp"
#include "csf/trajectory.hpp"

namespace csf {

/// Coefficients against {1, cos lθ, sin lθ}, scaled so that a pure cos lθ
/// input gives alpha[l] = 1. beta[0] is always 0.
struct ModeSpectrum {
  std::vector<double> alpha;
  std::vector<double> beta;

  [[nodiscard]] auto max_mode() const noexcept -> int { return static_cast<int>(alpha.size()) - 1; }
  [[nodiscard]] auto amplitude(int l) const -> double;
  /// ∫ f² dθ implied by the coefficients: 2π α₀² + π Σ (α_l² + β_l²).
  [[nodiscard]] auto l2_norm_squared() const -> double;
};

/// Discrete inner products with the trigonometric basis. Needs n ≥ 2L + 2.
auto fourier_decompose(std::span<const double> samples, int max_mode) -> ModeSpectrum;

auto synthesize(const ModeSpectrum& spectrum, std::size_t n) -> std::vector<double>;

/// Eigenvalue 2 − l² of f ↦ f_θθ + 2f on cos lθ, sin lθ.
auto linearized_spectrum(int l) -> double;

/// f_θθ + 2f with spectral second derivative.
auto apply_linearized_operator(std::span<const double> f) -> std::vector<double>;

struct RateFit {
  double rate = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

/// Least-squares slope of log(value) against time. Needs ≥ 5 positive values.
auto fit_exponential_rate(const FunctionalSeries& series) -> RateFit;

struct BackwardLimitFit {
  double a = 0.0;
  double b = 0.0;  // in [0, π)
  double residual = 0.0;  // L² misfit over [0, 2π)
};

/// Least-squares fit of a cos²(θ + b), a ≥ 0, solved in closed form from
/// modes 0 and 2.
auto fit_backward_limit(const CurvatureProfile& profile) -> BackwardLimitFit;

struct QuadrupoleSeries {
  std::vector<double> times;
  std::vector<double> a;
  std::vector<double> b;
};

/// a(τ) = α₂(κ̃ − 1) e^{2τ}, b(τ) = β₂(κ̃ − 1) e^{2τ} per retained state.
auto extract_quadrupole(const ThetaTrajectory& trajectory) -> QuadrupoleSeries;

enum class AncientKind { Circle, AngenentOval, Unknown };

auto to_string(AncientKind kind) -> const char*;

struct Classification {
  AncientKind kind = AncientKind::Unknown;
  std::optional<OvalParams> params;
  double residual = 0.0;
  /// Fitted extinction time (the free time translation of the c(t) fit).
  std::optional<double> extinction_time;
};

struct ClassifyTolerances {
  double form = 1e-6;   // relative misfit allowed in each check
  double round = 1e-9;  // mode-2 amplitude (relative to mean) treated as a circle
};

/// Decides between contracting circles, Angenent ovals and neither from
/// pressure snapshots at ≥ 3 distinct negative times.
auto classify_ancient(std::span<const CurvatureProfile> snapshots, ClassifyTolerances tol = {})
    -> Classification;

}  // namespace csf
