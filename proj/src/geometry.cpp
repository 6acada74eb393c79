#include "csf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <sstream>

#include "csf/errors.hpp"
#include "csf/spectral.hpp"

namespace csf {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

auto cross(const Point& a, const Point& b) -> double { return a.x * b.y - a.y * b.x; }
auto sub(const Point& a, const Point& b) -> Point { return {a.x - b.x, a.y - b.y}; }
auto norm(const Point& a) -> double { return std::hypot(a.x, a.y); }

void require_positive(const CurvatureProfile& profile, const char* where) {
  for (std::size_t j = 0; j < profile.size(); ++j) {
    if (!(profile.values[j] > 0.0)) {
      std::ostringstream msg;
      msg << where << ": sample " << j << " (theta = " << profile.grid.node(j)
          << ") is not strictly positive: " << profile.values[j];
      throw Error(ErrorCode::NonPositive, msg.str());
    }
  }
}

void require_closable(const CurvatureProfile& profile, double tau_close, const char* where) {
  const auto residual = closure_residual(profile);
  if (residual.norm() > tau_close) {
    std::ostringstream msg;
    msg << where << ": closure residual (" << residual.cos_component << ", "
        << residual.sin_component << ") exceeds tolerance " << tau_close;
    throw Error(ErrorCode::NonClosable, msg.str());
  }
}

}  // namespace

AngleGrid::AngleGrid(std::size_t n) : n_(n) {
  if (n < 8 || n % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument,
                "angle grid needs an even node count >= 8, got " + std::to_string(n));
  }
}

auto AngleGrid::spacing() const noexcept -> double { return kTwoPi / static_cast<double>(n_); }

auto AngleGrid::node(std::size_t j) const noexcept -> double {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(n_);
}

auto AngleGrid::nodes() const -> std::vector<double> {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) { out[j] = node(j); }
  return out;
}

CurvatureProfile::CurvatureProfile(AngleGrid g, std::vector<double> v, double t, Representation r)
    : grid(g), values(std::move(v)), time(t), representation(r) {
  if (values.size() != grid.size()) {
    throw Error(ErrorCode::InvalidArgument, "profile sample count does not match its grid");
  }
}

auto CurvatureProfile::sample(AngleGrid grid, const std::function<double(double)>& f, double time,
                              Representation r) -> CurvatureProfile {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) { v[j] = f(grid.node(j)); }
  return {grid, std::move(v), time, r};
}

auto CurvatureProfile::pressure() const -> std::vector<double> {
  if (representation == Representation::Pressure) { return values; }
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [](double k) { return k * k; });
  return out;
}

auto CurvatureProfile::curvature() const -> std::vector<double> {
  if (representation == Representation::Curvature) { return values; }
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(),
                 [](double p) { return std::sqrt(std::max(p, 0.0)); });
  return out;
}

auto CurvatureProfile::as_pressure() const -> CurvatureProfile {
  return {grid, pressure(), time, Representation::Pressure};
}

auto CurvatureProfile::as_curvature() const -> CurvatureProfile {
  return {grid, curvature(), time, Representation::Curvature};
}

auto CurvatureProfile::min_value() const -> double {
  return *std::min_element(values.begin(), values.end());
}

auto CurvatureProfile::max_value() const -> double {
  return *std::max_element(values.begin(), values.end());
}

auto CurvatureProfile::strictly_positive() const -> bool { return min_value() > 0.0; }

auto ClosureResidual::norm() const -> double { return std::hypot(cos_component, sin_component); }

auto closure_residual(const CurvatureProfile& profile) -> ClosureResidual {
  require_positive(profile, "closure_residual");
  const auto kappa = profile.curvature();
  std::vector<double> fc(kappa.size());
  std::vector<double> fs(kappa.size());
  for (std::size_t j = 0; j < kappa.size(); ++j) {
    const double theta = profile.grid.node(j);
    fc[j] = std::cos(theta) / kappa[j];
    fs[j] = std::sin(theta) / kappa[j];
  }
  return {spectral::integrate(fc), spectral::integrate(fs)};
}

// Each cell integrates the linear interpolant of 1/κ against e^{iθ} exactly.
// Over a full period this is sinc²(Δθ/2) times the trapezoid sum, so the
// closing chord vanishes exactly when closure_residual does.
auto reconstruct_curve(const CurvatureProfile& profile, double tau_close) -> PlanarCurve {
  require_positive(profile, "reconstruct_curve");
  require_closable(profile, tau_close, "reconstruct_curve");

  const auto kappa = profile.curvature();
  const std::size_t n = kappa.size();
  const double h = profile.grid.spacing();
  const std::complex<double> i{0.0, 1.0};

  std::vector<std::complex<double>> z(n);
  z[0] = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double rho0 = 1.0 / kappa[j];
    const double rho1 = 1.0 / kappa[j + 1];
    const auto e0 = std::exp(i * profile.grid.node(j));
    const auto e1 = std::exp(i * profile.grid.node(j + 1));
    const auto constant_part = -i * (e1 - e0);
    const auto linear_part = -i * h * e1 + (e1 - e0);
    z[j + 1] = z[j] + rho0 * constant_part + (rho1 - rho0) / h * linear_part;
  }

  PlanarCurve curve;
  curve.closed = true;
  curve.points.reserve(n);
  for (const auto& w : z) { curve.points.push_back({w.real(), w.imag()}); }
  const Point c = area_centroid(curve);
  for (auto& p : curve.points) { p = sub(p, c); }
  return curve;
}

auto enclosed_area(const CurvatureProfile& profile, double tau_close) -> double {
  require_positive(profile, "enclosed_area");
  require_closable(profile, tau_close, "enclosed_area");
  const auto kappa = profile.curvature();
  std::vector<double> rho(kappa.size());
  std::transform(kappa.begin(), kappa.end(), rho.begin(), [](double k) { return 1.0 / k; });

  // Support function: h + h_θθ = ρ, mode 1 is a translation and is dropped.
  auto c = spectral::forward(rho);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k == 1) {
      c[k] = 0.0;
      continue;
    }
    c[k] /= 1.0 - static_cast<double>(k * k);
  }
  const auto support = spectral::inverse(c, rho.size());
  std::vector<double> integrand(rho.size());
  for (std::size_t j = 0; j < rho.size(); ++j) { integrand[j] = 0.5 * support[j] * rho[j]; }
  return spectral::integrate(integrand);
}

auto menger_curvature(const Point& a, const Point& b, const Point& c) -> double {
  const Point u = sub(b, a);
  const Point v = sub(c, b);
  const Point w = sub(c, a);
  const double denom = norm(u) * norm(v) * norm(w);
  if (denom == 0.0) { throw Error(ErrorCode::DegenerateSegment, "repeated point in curve"); }
  return 2.0 * cross(u, v) / denom;
}

auto curvature_of_curve(const PlanarCurve& curve) -> std::vector<CurvatureSample> {
  const std::size_t m = curve.size();
  if (m < 3) { throw Error(ErrorCode::InvalidArgument, "curvature needs at least 3 points"); }
  for (std::size_t j = 0; j + 1 < m; ++j) {
    if (curve.points[j] == curve.points[j + 1]) {
      throw Error(ErrorCode::DegenerateSegment, "repeated point at index " + std::to_string(j));
    }
  }
  if (curve.closed && curve.points.front() == curve.points.back()) {
    throw Error(ErrorCode::DegenerateSegment, "closed curve repeats its first point");
  }

  std::vector<CurvatureSample> out(m);
  double s = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    out[j].arclength = s;
    if (j + 1 < m) { s += norm(sub(curve.points[j + 1], curve.points[j])); }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!curve.closed && (j == 0 || j + 1 == m)) { continue; }
    const auto& prev = curve.points[(j + m - 1) % m];
    const auto& next = curve.points[(j + 1) % m];
    out[j].kappa = menger_curvature(prev, curve.points[j], next);
  }
  if (!curve.closed) {
    out.front().kappa = out[1].kappa;
    out.back().kappa = out[m - 2].kappa;
  }
  return out;
}

auto geometric_measures(const PlanarCurve& curve) -> GeometricMeasures {
  const std::size_t m = curve.size();
  GeometricMeasures g;
  if (m < 2) { return g; }
  const std::size_t edges = curve.closed ? m : m - 1;
  double twice_area = 0.0;
  for (std::size_t j = 0; j < edges; ++j) {
    const auto& a = curve.points[j];
    const auto& b = curve.points[(j + 1) % m];
    g.length += norm(sub(b, a));
    twice_area += cross(a, b);
  }
  if (curve.closed) { g.signed_area = 0.5 * twice_area; }
  return g;
}

auto area_centroid(const PlanarCurve& curve) -> Point {
  const std::size_t m = curve.size();
  if (m == 0) { return {}; }
  double a2 = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  const Point origin = curve.points[0];
  for (std::size_t j = 0; j < m; ++j) {
    const Point p = sub(curve.points[j], origin);
    const Point q = sub(curve.points[(j + 1) % m], origin);
    const double w = cross(p, q);
    a2 += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  if (std::abs(a2) < 1e-300) {
    Point mean{};
    for (const auto& p : curve.points) {
      mean.x += p.x;
      mean.y += p.y;
    }
    return {mean.x / static_cast<double>(m), mean.y / static_cast<double>(m)};
  }
  return {origin.x + cx / (3.0 * a2), origin.y + cy / (3.0 * a2)};
}

auto segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) -> bool {
  auto orient = [](const Point& p, const Point& q, const Point& r) {
    const double v = cross(sub(q, p), sub(r, p));
    return (v > 0.0) - (v < 0.0);
  };
  auto on_segment = [](const Point& p, const Point& q, const Point& r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) { return true; }
  if (o1 == 0 && on_segment(a, b, c)) { return true; }
  if (o2 == 0 && on_segment(a, b, d)) { return true; }
  if (o3 == 0 && on_segment(c, d, a)) { return true; }
  if (o4 == 0 && on_segment(c, d, b)) { return true; }
  return false;
}

namespace {

struct Segment {
  Point left;
  Point right;
  std::size_t index;
};

struct SweepOrder {
  const std::vector<Segment>* segments;
  const double* sweep_x;

  [[nodiscard]] auto y_at(const Segment& s) const -> double {
    const double dx = s.right.x - s.left.x;
    if (dx == 0.0) { return s.left.y; }
    const double t = std::clamp((*sweep_x - s.left.x) / dx, 0.0, 1.0);
    return s.left.y + t * (s.right.y - s.left.y);
  }

  [[nodiscard]] auto slope(const Segment& s) const -> double {
    const double dx = s.right.x - s.left.x;
    return dx == 0.0 ? 1e300 : (s.right.y - s.left.y) / dx;
  }

  auto operator()(std::size_t i, std::size_t j) const -> bool {
    if (i == j) { return false; }
    const auto& a = (*segments)[i];
    const auto& b = (*segments)[j];
    const double ya = y_at(a);
    const double yb = y_at(b);
    if (ya != yb) { return ya < yb; }
    const double sa = slope(a);
    const double sb = slope(b);
    if (sa != sb) { return sa < sb; }
    return i < j;
  }
};

}  // namespace

auto is_simple(const PlanarCurve& curve) -> bool {
  const std::size_t m = curve.size();
  if (m < 3) { return true; }
  const std::size_t edges = curve.closed ? m : m - 1;

  // A fixed irrational-ish rotation keeps edges off the vertical.
  const double angle = 0.3183098861837907;
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);
  std::vector<Point> pts(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& p = curve.points[j];
    pts[j] = {ca * p.x - sa * p.y, sa * p.x + ca * p.y};
  }

  auto adjacent = [&](std::size_t i, std::size_t j) {
    if (i > j) { std::swap(i, j); }
    if (j == i + 1) { return true; }
    return curve.closed && i == 0 && j == edges - 1;
  };

  auto conflict = [&](std::size_t i, std::size_t j) {
    const Point& a = pts[i];
    const Point& b = pts[(i + 1) % m];
    const Point& c = pts[j];
    const Point& d = pts[(j + 1) % m];
    if (adjacent(i, j)) {
      // The shared vertex is expected; only a fold-back (collinear overlap) is a fault.
      std::size_t first = i;
      std::size_t second = j;
      if ((first + 1) % edges != second) { std::swap(first, second); }
      const Point u = sub(pts[(first + 1) % m], pts[first]);
      const Point v = sub(pts[(second + 1) % m], pts[second]);
      const double dot = u.x * v.x + u.y * v.y;
      return std::abs(cross(u, v)) <= 1e-14 * norm(u) * norm(v) && dot < 0.0;
    }
    return segments_intersect(a, b, c, d);
  };

  std::vector<Segment> segs(edges);
  for (std::size_t i = 0; i < edges; ++i) {
    Point p = pts[i];
    Point q = pts[(i + 1) % m];
    if (q.x < p.x || (q.x == p.x && q.y < p.y)) { std::swap(p, q); }
    segs[i] = {p, q, i};
  }

  struct Event {
    double x;
    double y;
    int kind;  // 0 insert, 1 remove
    std::size_t seg;
  };
  std::vector<Event> events;
  events.reserve(2 * edges);
  for (const auto& s : segs) {
    events.push_back({s.left.x, s.left.y, 0, s.index});
    events.push_back({s.right.x, s.right.y, 1, s.index});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.x != b.x) { return a.x < b.x; }
    if (a.kind != b.kind) { return a.kind < b.kind; }
    if (a.y != b.y) { return a.y < b.y; }
    return a.seg < b.seg;
  });

  double sweep_x = events.empty() ? 0.0 : events.front().x;
  std::set<std::size_t, SweepOrder> status(SweepOrder{&segs, &sweep_x});
  std::vector<std::set<std::size_t, SweepOrder>::iterator> where(edges, status.end());

  for (const auto& ev : events) {
    sweep_x = ev.x;
    if (ev.kind == 0) {
      auto [it, inserted] = status.insert(ev.seg);
      where[ev.seg] = it;
      if (it != status.begin() && conflict(*std::prev(it), ev.seg)) { return false; }
      if (auto nx = std::next(it); nx != status.end() && conflict(*nx, ev.seg)) { return false; }
    } else {
      auto it = where[ev.seg];
      if (it == status.end()) { continue; }
      if (it != status.begin()) {
        auto nx = std::next(it);
        if (nx != status.end() && conflict(*std::prev(it), *nx)) { return false; }
      }
      status.erase(it);
      where[ev.seg] = status.end();
    }
  }
  return true;
}

}  // namespace csf
