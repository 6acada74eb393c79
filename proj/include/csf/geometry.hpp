#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace csf {

/// Uniform periodic grid θ_j = 2πj/n, j = 0..n-1. n must be even and ≥ 8.
class AngleGrid {
 public:
  explicit AngleGrid(std::size_t n);

  [[nodiscard]] auto size() const noexcept -> std::size_t { return n_; }
  [[nodiscard]] auto spacing() const noexcept -> double;
  [[nodiscard]] auto node(std::size_t j) const noexcept -> double;
  [[nodiscard]] auto nodes() const -> std::vector<double>;

  friend auto operator==(const AngleGrid&, const AngleGrid&) -> bool = default;

 private:
  std::size_t n_;
};

enum class Representation { Pressure, Curvature };

/// Samples of the pressure p = κ² (or of κ itself) over the tangent angle.
struct CurvatureProfile {
  AngleGrid grid;
  std::vector<double> values;
  double time = 0.0;
  Representation representation = Representation::Pressure;

  CurvatureProfile(AngleGrid g, std::vector<double> v, double t = 0.0,
                   Representation r = Representation::Pressure);

  /// Samples `f(θ_j)` on every node.
  static auto sample(AngleGrid grid, const std::function<double(double)>& f, double time = 0.0,
                     Representation r = Representation::Pressure) -> CurvatureProfile;

  [[nodiscard]] auto size() const noexcept -> std::size_t { return values.size(); }
  [[nodiscard]] auto pressure() const -> std::vector<double>;
  [[nodiscard]] auto curvature() const -> std::vector<double>;
  [[nodiscard]] auto as_pressure() const -> CurvatureProfile;
  [[nodiscard]] auto as_curvature() const -> CurvatureProfile;
  [[nodiscard]] auto min_value() const -> double;
  [[nodiscard]] auto max_value() const -> double;
  [[nodiscard]] auto strictly_positive() const -> bool;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend auto operator==(const Point&, const Point&) -> bool = default;
};

struct PlanarCurve {
  std::vector<Point> points;
  bool closed = true;

  [[nodiscard]] auto size() const noexcept -> std::size_t { return points.size(); }
};

struct ClosureResidual {
  double cos_component = 0.0;  // ∫ cos θ / κ dθ
  double sin_component = 0.0;  // ∫ sin θ / κ dθ

  [[nodiscard]] auto norm() const -> double;
};

struct CurvatureSample {
  double arclength = 0.0;
  double kappa = 0.0;
};

struct GeometricMeasures {
  double length = 0.0;
  double signed_area = 0.0;
};

/// Default absolute tolerance on the closure residual.
inline constexpr double kCloseTolerance = 1e-8;

/// Periodic trapezoid evaluation of the two closure integrals. Throws
/// NonPositive when any sample is ≤ 0.
auto closure_residual(const CurvatureProfile& profile) -> ClosureResidual;

/// Rebuilds the convex curve whose tangent-angle curvature is `profile`.
/// Points are X(θ_j), counterclockwise, centred on the area centroid.
auto reconstruct_curve(const CurvatureProfile& profile, double tau_close = kCloseTolerance)
    -> PlanarCurve;

/// Enclosed area of the closed convex curve described by `profile`,
/// computed spectrally from the support function (A = ½∫ h/κ dθ).
auto enclosed_area(const CurvatureProfile& profile, double tau_close = kCloseTolerance) -> double;

/// Signed curvature per vertex from the circle through each vertex and its
/// two neighbours. Open curves report κ at interior vertices and copy the
/// nearest interior value to the two endpoints.
auto curvature_of_curve(const PlanarCurve& curve) -> std::vector<CurvatureSample>;

/// Signed Menger curvature of the triangle (a, b, c) at b.
auto menger_curvature(const Point& a, const Point& b, const Point& c) -> double;

auto geometric_measures(const PlanarCurve& curve) -> GeometricMeasures;

auto area_centroid(const PlanarCurve& curve) -> Point;

/// True when no two non-adjacent edges intersect and no adjacent pair folds
/// back on itself (Shamos–Hoey sweep, O(m log m)).
auto is_simple(const PlanarCurve& curve) -> bool;

/// Closed-segment intersection test, collinear overlaps included.
auto segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) -> bool;

}  // namespace csf
