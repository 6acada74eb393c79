#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "csf/geometry.hpp"
#include "csf/trajectory.hpp"

namespace csf {

struct ArcFlowState {
  PlanarCurve curve;
  double time = 0.0;
};

using CurveTrajectory = FlowTrajectory<ArcFlowState>;

struct ArcControls {
  double c_cfl = 0.2;
  double kappa_blowup = 1e4;
  double area_min = 1e-6;
  double dt_min = 1e-12;
  std::size_t embed_check_every = 16;
  /// Resample to uniform arclength after every step.
  bool redistribute = true;
  /// Zero band for the κ sign count, relative to max |κ|.
  double zero_tolerance = 1e-6;
  std::vector<double> output_times;
  std::size_t max_steps = 100'000'000;
};

/// Moves every point by κν (Heun steps, dt = c_cfl h_min² / 2) and
/// redistributes to uniform arclength. Closed curves must be embedded and
/// have ≥ 32 points. Open curves move their endpoints by the curvature
/// extrapolated linearly from the interior.
auto evolve_curve(const ArcFlowState& initial, double t_end, const ArcControls& controls = {})
    -> CurveTrajectory;

/// Resamples to `points` nodes equally spaced in arclength (periodic cubic
/// spline for closed curves, natural cubic spline for open ones).
auto redistribute_arclength(const PlanarCurve& curve, std::size_t points) -> PlanarCurve;

/// Sign changes around the period; |v| ≤ tolerance is a single band.
auto sturm_zero_count(std::span<const double> kappa_samples, double tolerance) -> int;

/// Σ √(ε² ds_i² + φ_i²) over vertices, φ_i the turning angle and ds_i the
/// dual edge length. ε = 0 gives ∫|κ| ds.
auto total_absolute_curvature(const PlanarCurve& curve, double epsilon) -> double;

struct ConvexityCertificate {
  bool holds = false;
  double max_kappa = 0.0;
  double max_tac = 0.0;
};

auto convexity_certificate(const CurveTrajectory& trajectory, double c1, double c2)
    -> ConvexityCertificate;

struct BlowupRescaling {
  CurveTrajectory trajectory;
  double scale = 0.0;            // Q = max |κ| on the last state
  std::size_t point_index = 0;   // p_i
  Point center;                  // γ(p_i, t_i)
  double reference_time = 0.0;   // t_i
  double rotation = 0.0;         // applied so the inward normal at p_i is +y
};

/// Re-centres at the max-|κ| point of the last state, dilates by Q,
/// rescales time by Q² and rotates so the curve opens upward at the origin.
auto blowup_rescale(const CurveTrajectory& trajectory) -> BlowupRescaling;

/// Symmetric Hausdorff distance between polylines. From each side only the
/// contiguous arc with |x| ≤ window through the point nearest the origin is
/// taken, measured against the full other polyline.
auto windowed_hausdorff(const PlanarCurve& a, const PlanarCurve& b, double window) -> double;

/// Distance from a point to a polyline (open or closed).
auto distance_to_polyline(const Point& p, const PlanarCurve& curve) -> double;

}  // namespace csf
