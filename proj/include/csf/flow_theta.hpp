#pragma once

#include <cstddef>
#include <vector>

#include "csf/geometry.hpp"
#include "csf/trajectory.hpp"

namespace csf {

enum class Frame { Unnormalized, Normalized };

/// Tangent-angle state: pressure p(θ, t) in the unnormalized frame, the
/// rescaled curvature κ̃(θ, τ) in the normalized frame.
struct ThetaFlowState {
  CurvatureProfile profile;
  double time = 0.0;
  Frame frame = Frame::Unnormalized;
};

using ThetaTrajectory = FlowTrajectory<ThetaFlowState>;

struct ThetaControls {
  double c_cfl = 0.2;
  double p_blowup = 1e6;
  double dt_min = 1e-12;
  /// Extra retained times strictly inside (start, end); start and end are always kept.
  std::vector<double> output_times;
  std::size_t max_steps = 100'000'000;
};

/// p p_θθ − ½ p_θ² + 2p², derivatives taken spectrally.
auto pressure_rhs(const CurvatureProfile& profile) -> std::vector<double>;

/// κ̃² κ̃_θθ + κ̃³ − κ̃.
auto normalized_rhs(const CurvatureProfile& profile) -> std::vector<double>;

/// Pointwise left side of the Harnack inequality (equal to p_t); returns its minimum.
auto harnack_margin(const CurvatureProfile& profile) -> double;

/// Explicit RK4 in t with dt = c_cfl Δθ² / max p. Halts with
/// RunStatus::Extinction once max p exceeds p_blowup.
auto evolve_pressure(const ThetaFlowState& initial, double t_end, const ThetaControls& controls = {})
    -> ThetaTrajectory;

/// Explicit RK4 in τ for κ̃ with dt = c_cfl Δθ² / max κ̃².
auto evolve_normalized(const ThetaFlowState& initial, double tau_end,
                       const ThetaControls& controls = {}) -> ThetaTrajectory;

/// Extinction time estimate T = t + A(t)/(2π) from the exact area law.
auto estimate_extinction_time(const CurvatureProfile& pressure_profile) -> double;

/// Shifts the state's clock so that the estimated extinction time is 0.
auto shift_to_extinction(const ThetaFlowState& state) -> ThetaFlowState;

/// Rescales κ̃ so the curve it describes encloses area π, i.e. extinction
/// happens exactly at t = 0 (τ = ∞).
auto anchor_normalized(const CurvatureProfile& kappa_tilde) -> CurvatureProfile;

/// κ̃ = √p √(−2t) at τ = −½ log(−t).
auto to_normalized(const ThetaFlowState& state) -> ThetaFlowState;

/// Inverse of `to_normalized`.
auto to_unnormalized(const ThetaFlowState& state) -> ThetaFlowState;

/// Times t_k with −t_k halving `per_octave` times per factor of two, from
/// t_start up to t_end (both excluded). Uniform in τ.
auto geometric_output_times(double t_start, double t_end, int per_octave) -> std::vector<double>;

/// Uniformly spaced interior times.
auto uniform_output_times(double t_start, double t_end, std::size_t count) -> std::vector<double>;

}  // namespace csf
