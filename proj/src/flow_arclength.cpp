#include "csf/flow_arclength.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "csf/errors.hpp"

namespace csf {
namespace {

auto sub(const Point& a, const Point& b) -> Point { return {a.x - b.x, a.y - b.y}; }
auto norm(const Point& a) -> double { return std::hypot(a.x, a.y); }
auto cross(const Point& a, const Point& b) -> double { return a.x * b.y - a.y * b.x; }
auto dot(const Point& a, const Point& b) -> double { return a.x * b.x + a.y * b.y; }

struct SplineDeleter {
  void operator()(gsl_spline* s) const { gsl_spline_free(s); }
};
struct AccelDeleter {
  void operator()(gsl_interp_accel* a) const { gsl_interp_accel_free(a); }
};

// GSL aborts on error by default; status codes are checked explicitly instead.
void silence_gsl() {
  static const bool once = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)once;
}

class Spline {
 public:
  Spline(const gsl_interp_type* type, const std::vector<double>& s, const std::vector<double>& v)
      : spline_(gsl_spline_alloc(type, s.size())), accel_(gsl_interp_accel_alloc()) {
    if (!spline_ || !accel_ || gsl_spline_init(spline_.get(), s.data(), v.data(), s.size()) != 0) {
      throw Error(ErrorCode::DegenerateSegment, "spline construction failed during resampling");
    }
  }

  auto operator()(double s) const -> double { return gsl_spline_eval(spline_.get(), s, accel_.get()); }

 private:
  std::unique_ptr<gsl_spline, SplineDeleter> spline_;
  std::unique_ptr<gsl_interp_accel, AccelDeleter> accel_;
};

// Curvature at every vertex; open ends use quadratic extrapolation.
auto vertex_curvature(const PlanarCurve& c) -> std::vector<double> {
  const std::size_t m = c.size();
  std::vector<double> k(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    if (!c.closed && (j == 0 || j + 1 == m)) { continue; }
    k[j] = menger_curvature(c.points[(j + m - 1) % m], c.points[j], c.points[(j + 1) % m]);
  }
  if (!c.closed) {
    k[0] = 2.0 * k[1] - k[2];
    k[m - 1] = 2.0 * k[m - 2] - k[m - 3];
  }
  return k;
}

// κν with ν the left normal of the local tangent.
auto velocity(const PlanarCurve& c) -> std::vector<Point> {
  const std::size_t m = c.size();
  const auto k = vertex_curvature(c);
  std::vector<Point> v(m);
  for (std::size_t j = 0; j < m; ++j) {
    Point tangent;
    if (c.closed) {
      tangent = sub(c.points[(j + 1) % m], c.points[(j + m - 1) % m]);
    } else if (j == 0) {
      tangent = sub(c.points[1], c.points[0]);
    } else if (j + 1 == m) {
      tangent = sub(c.points[m - 1], c.points[m - 2]);
    } else {
      tangent = sub(c.points[j + 1], c.points[j - 1]);
    }
    const double len = norm(tangent);
    if (len == 0.0) { throw Error(ErrorCode::DegenerateSegment, "coincident neighbours"); }
    v[j] = {-k[j] * tangent.y / len, k[j] * tangent.x / len};
  }
  return v;
}

auto min_edge(const PlanarCurve& c) -> double {
  const std::size_t m = c.size();
  const std::size_t edges = c.closed ? m : m - 1;
  double h = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < edges; ++j) {
    h = std::min(h, norm(sub(c.points[(j + 1) % m], c.points[j])));
  }
  return h;
}

auto curve_diagnostics(const PlanarCurve& c, double zero_tol) -> std::map<std::string, double> {
  std::map<std::string, double> d;
  const auto k = vertex_curvature(c);
  double kmax = 0.0;
  for (double v : k) { kmax = std::max(kmax, std::abs(v)); }
  const auto g = geometric_measures(c);
  d["length"] = g.length;
  d["max_abs_kappa"] = kmax;
  d["tac"] = total_absolute_curvature(c, 0.0);
  if (c.closed) {
    d["area"] = g.signed_area;
    d["isoperimetric_ratio"] = g.length * g.length / (4.0 * std::numbers::pi * g.signed_area);
    d["tac_eps0.1"] = total_absolute_curvature(c, 0.1);
    d["tac_eps1"] = total_absolute_curvature(c, 1.0);
    d["zero_count"] = static_cast<double>(sturm_zero_count(k, zero_tol * kmax));
  }
  return d;
}

void require_valid(const PlanarCurve& c) {
  if (c.size() < 32) {
    throw Error(ErrorCode::InvalidArgument, "arclength flow needs at least 32 points");
  }
  for (std::size_t j = 0; j + 1 < c.size(); ++j) {
    if (c.points[j] == c.points[j + 1]) {
      throw Error(ErrorCode::DegenerateSegment, "repeated point at index " + std::to_string(j));
    }
  }
  if (c.closed && !is_simple(c)) {
    throw Error(ErrorCode::SelfIntersection, "initial curve is not embedded");
  }
}

}  // namespace

auto redistribute_arclength(const PlanarCurve& curve, std::size_t points) -> PlanarCurve {
  silence_gsl();
  const std::size_t m = curve.size();
  if (m < 4 || points < 3) {
    throw Error(ErrorCode::InvalidArgument, "resampling needs at least 4 input points");
  }
  const std::size_t knots = curve.closed ? m + 1 : m;
  std::vector<double> s(knots);
  std::vector<double> x(knots);
  std::vector<double> y(knots);
  s[0] = 0.0;
  for (std::size_t j = 0; j < knots; ++j) {
    const auto& p = curve.points[j % m];
    x[j] = p.x;
    y[j] = p.y;
    if (j > 0) {
      const double len = norm(sub(p, curve.points[j - 1]));
      if (len == 0.0) { throw Error(ErrorCode::DegenerateSegment, "zero-length edge in resampling"); }
      s[j] = s[j - 1] + len;
    }
  }
  const auto* type = curve.closed ? gsl_interp_cspline_periodic : gsl_interp_cspline;
  const Spline sx(type, s, x);
  const Spline sy(type, s, y);
  const double total = s.back();
  PlanarCurve out;
  out.closed = curve.closed;
  out.points.resize(points);
  const double denom = curve.closed ? static_cast<double>(points) : static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) {
    const double sk = total * static_cast<double>(k) / denom;
    out.points[k] = {sx(sk), sy(sk)};
  }
  if (!curve.closed) {
    out.points.front() = curve.points.front();
    out.points.back() = curve.points.back();
  }
  return out;
}

auto evolve_curve(const ArcFlowState& initial, double t_end, const ArcControls& controls)
    -> CurveTrajectory {
  if (!(t_end > initial.time)) {
    throw Error(ErrorCode::InvalidArgument, "evolve_curve: end time must exceed start time");
  }
  require_valid(initial.curve);

  PlanarCurve curve = initial.curve;
  if (curve.closed && geometric_measures(curve).signed_area < 0.0) {
    std::reverse(curve.points.begin(), curve.points.end());
  }
  const std::size_t m = curve.size();

  std::vector<double> stops;
  for (double t : controls.output_times) {
    if (t > initial.time && t < t_end) { stops.push_back(t); }
  }
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  stops.push_back(t_end);

  CurveTrajectory traj;
  traj.append({curve, initial.time}, curve_diagnostics(curve, controls.zero_tolerance));

  double t = initial.time;
  for (double stop : stops) {
    while (t < stop) {
      if (traj.steps >= controls.max_steps) {
        throw Error(ErrorCode::StepSizeUnderflow, "evolve_curve: step budget exhausted");
      }
      const double h = min_edge(curve);
      const double dt_stable = controls.c_cfl * h * h / 2.0;
      if (dt_stable < controls.dt_min) {
        std::ostringstream msg;
        msg << "evolve_curve: stable step " << dt_stable << " below dt_min at time " << t;
        throw Error(ErrorCode::StepSizeUnderflow, msg.str());
      }
      double dt = dt_stable;
      bool lands = false;
      if (t + dt >= stop || stop - (t + dt) < 1e-3 * dt_stable) {
        dt = stop - t;
        lands = true;
      }

      const auto v1 = velocity(curve);
      PlanarCurve trial = curve;
      for (std::size_t j = 0; j < m; ++j) {
        trial.points[j].x += dt * v1[j].x;
        trial.points[j].y += dt * v1[j].y;
      }
      const auto v2 = velocity(trial);
      for (std::size_t j = 0; j < m; ++j) {
        curve.points[j].x += 0.5 * dt * (v1[j].x + v2[j].x);
        curve.points[j].y += 0.5 * dt * (v1[j].y + v2[j].y);
      }
      if (controls.redistribute) { curve = redistribute_arclength(curve, m); }
      t = lands ? stop : t + dt;
      ++traj.steps;

      if (curve.closed && controls.embed_check_every > 0 &&
          traj.steps % controls.embed_check_every == 0 && !is_simple(curve)) {
        std::ostringstream msg;
        msg << "evolve_curve: embeddedness lost at time " << t;
        throw Error(ErrorCode::SelfIntersection, msg.str());
      }

      const auto k = vertex_curvature(curve);
      double kmax = 0.0;
      for (double v : k) { kmax = std::max(kmax, std::abs(v)); }
      const bool too_small = curve.closed && geometric_measures(curve).signed_area < controls.area_min;
      if (too_small || kmax > controls.kappa_blowup) {
        traj.append({curve, t}, curve_diagnostics(curve, controls.zero_tolerance));
        traj.status = RunStatus::Extinction;
        return traj;
      }
    }
    if (curve.closed && !is_simple(curve)) {
      std::ostringstream msg;
      msg << "evolve_curve: embeddedness lost at time " << t;
      throw Error(ErrorCode::SelfIntersection, msg.str());
    }
    traj.append({curve, t}, curve_diagnostics(curve, controls.zero_tolerance));
  }
  return traj;
}

auto sturm_zero_count(std::span<const double> kappa_samples, double tolerance) -> int {
  if (tolerance < 0.0) { throw Error(ErrorCode::InvalidArgument, "tolerance must be >= 0"); }
  std::vector<int> signs;
  signs.reserve(kappa_samples.size());
  for (double v : kappa_samples) {
    if (std::abs(v) > tolerance) { signs.push_back(v > 0.0 ? 1 : -1); }
  }
  if (signs.empty()) {
    throw Error(ErrorCode::AllZero, "every sample lies inside the zero band");
  }
  int changes = 0;
  for (std::size_t k = 0; k < signs.size(); ++k) {
    if (signs[k] != signs[(k + 1) % signs.size()]) { ++changes; }
  }
  return changes;
}

auto total_absolute_curvature(const PlanarCurve& curve, double epsilon) -> double {
  if (epsilon < 0.0) { throw Error(ErrorCode::InvalidArgument, "epsilon must be >= 0"); }
  const std::size_t m = curve.size();
  if (m < 3) { return 0.0; }
  double total = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    if (!curve.closed && (j == 0 || j + 1 == m)) { continue; }
    const Point a = sub(curve.points[j], curve.points[(j + m - 1) % m]);
    const Point b = sub(curve.points[(j + 1) % m], curve.points[j]);
    const double turn = std::atan2(cross(a, b), dot(a, b));
    const double ds = 0.5 * (norm(a) + norm(b));
    total += std::sqrt(epsilon * epsilon * ds * ds + turn * turn);
  }
  return total;
}

auto convexity_certificate(const CurveTrajectory& trajectory, double c1, double c2)
    -> ConvexityCertificate {
  if (trajectory.empty()) { throw Error(ErrorCode::EmptyTrajectory, "no states to certify"); }
  ConvexityCertificate cert;
  for (const auto& state : trajectory.states) {
    for (const auto& sample : curvature_of_curve(state.curve)) {
      cert.max_kappa = std::max(cert.max_kappa, std::abs(sample.kappa));
    }
    cert.max_tac = std::max(cert.max_tac, total_absolute_curvature(state.curve, 0.0));
  }
  cert.holds = cert.max_kappa <= c1 && cert.max_tac <= c2;
  return cert;
}

auto blowup_rescale(const CurveTrajectory& trajectory) -> BlowupRescaling {
  if (trajectory.empty()) { throw Error(ErrorCode::EmptyTrajectory, "nothing to rescale"); }
  const auto& last = trajectory.states.back();
  const auto k = vertex_curvature(last.curve);
  std::size_t idx = 0;
  for (std::size_t j = 1; j < k.size(); ++j) {
    if (std::abs(k[j]) > std::abs(k[idx])) { idx = j; }
  }
  BlowupRescaling out;
  out.scale = std::abs(k[idx]);
  if (!(out.scale > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "last state has zero curvature everywhere");
  }
  out.point_index = idx;
  out.center = last.curve.points[idx];
  out.reference_time = last.time;

  const std::size_t m = last.curve.size();
  Point tangent;
  if (last.curve.closed) {
    tangent = sub(last.curve.points[(idx + 1) % m], last.curve.points[(idx + m - 1) % m]);
  } else {
    const std::size_t lo = idx == 0 ? 0 : idx - 1;
    const std::size_t hi = idx + 1 == m ? idx : idx + 1;
    tangent = sub(last.curve.points[hi], last.curve.points[lo]);
  }
  // Direction of κν at the blow-up point, rotated onto +y.
  const double sign = k[idx] > 0.0 ? 1.0 : -1.0;
  const Point inward{-sign * tangent.y, sign * tangent.x};
  out.rotation = std::numbers::pi / 2.0 - std::atan2(inward.y, inward.x);
  const double cr = std::cos(out.rotation);
  const double sr = std::sin(out.rotation);

  for (const auto& state : trajectory.states) {
    ArcFlowState s;
    s.curve.closed = state.curve.closed;
    s.curve.points.reserve(state.curve.size());
    for (const auto& p : state.curve.points) {
      const Point d = sub(p, out.center);
      s.curve.points.push_back(
          {out.scale * (cr * d.x - sr * d.y), out.scale * (sr * d.x + cr * d.y)});
    }
    s.time = out.scale * out.scale * (state.time - out.reference_time);
    std::map<std::string, double> diag{{"scale", out.scale}};
    out.trajectory.append(std::move(s), diag);
  }
  return out;
}

auto distance_to_polyline(const Point& p, const PlanarCurve& curve) -> double {
  const std::size_t m = curve.size();
  if (m == 0) { return std::numeric_limits<double>::infinity(); }
  if (m == 1) { return norm(sub(p, curve.points[0])); }
  const std::size_t edges = curve.closed ? m : m - 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < edges; ++j) {
    const Point& a = curve.points[j];
    const Point& b = curve.points[(j + 1) % m];
    const Point ab = sub(b, a);
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(sub(p, a), ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, norm(sub(p, {a.x + t * ab.x, a.y + t * ab.y})));
  }
  return best;
}

namespace {

// Contiguous run of points with |x| ≤ window around the point nearest the origin.
auto central_arc(const PlanarCurve& c, double window) -> std::vector<Point> {
  const std::size_t m = c.size();
  std::size_t start = 0;
  for (std::size_t j = 1; j < m; ++j) {
    if (norm(c.points[j]) < norm(c.points[start])) { start = j; }
  }
  std::vector<Point> arc;
  if (std::abs(c.points[start].x) > window) { return arc; }
  arc.push_back(c.points[start]);
  for (std::size_t step = 1; step < m; ++step) {
    if (!c.closed && start + step >= m) { break; }
    const auto& p = c.points[(start + step) % m];
    if (std::abs(p.x) > window) { break; }
    arc.push_back(p);
  }
  for (std::size_t step = 1; step < m; ++step) {
    if (!c.closed && step > start) { break; }
    const auto& p = c.points[(start + m - step) % m];
    if (std::abs(p.x) > window) { break; }
    arc.push_back(p);
  }
  return arc;
}

}  // namespace

auto windowed_hausdorff(const PlanarCurve& a, const PlanarCurve& b, double window) -> double {
  double worst = 0.0;
  for (const auto& p : central_arc(a, window)) { worst = std::max(worst, distance_to_polyline(p, b)); }
  for (const auto& p : central_arc(b, window)) { worst = std::max(worst, distance_to_polyline(p, a)); }
  return worst;
}

}  // namespace csf
