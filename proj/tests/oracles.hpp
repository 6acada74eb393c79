#pragma once
// Independent reference computations. None of these call into the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using std::numbers::pi;

// Composite midpoint rule on [a, b], long double accumulation.
inline double midpoint(const std::function<double(double)>& f, double a, double b,
                       std::size_t cells = 200000) {
  const long double h = (static_cast<long double>(b) - a) / cells;
  long double sum = 0.0L;
  for (std::size_t k = 0; k < cells; ++k) {
    sum += f(static_cast<double>(a + (k + 0.5L) * h));
  }
  return static_cast<double>(sum * h);
}

// Literal oval closed form, long double, no cancellation tricks.
inline double oval_literal(double lambda, double gamma, double t, double theta) {
  const long double q = std::exp(2.0L * lambda * t);
  const long double s = std::sin(static_cast<long double>(theta) + gamma);
  return static_cast<double>(lambda * (1.0L / (1.0L - q) - s * s));
}

inline double ellipse_curvature(double a, double b, double s) {
  const double d = a * a * std::sin(s) * std::sin(s) + b * b * std::cos(s) * std::cos(s);
  return a * b / std::pow(d, 1.5);
}

// Central differences of order 4 in a scalar variable.
inline double d1(const std::function<double(double)>& f, double x, double h = 1e-3) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

inline double d2(const std::function<double(double)>& f, double x, double h = 1e-3) {
  return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
}

struct Pt {
  double x;
  double y;
};

inline double orient(Pt a, Pt b, Pt c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); }

inline bool on_segment(Pt a, Pt b, Pt p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

inline bool segments_cross(Pt a, Pt b, Pt c, Pt d) {
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) {
    return true;
  }
  return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
         (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

// O(m²) check of every non-adjacent edge pair of a closed polygon.
inline bool simple_brute_force(const std::vector<Pt>& p) {
  const std::size_t m = p.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (j == i + 1 || (i == 0 && j == m - 1)) { continue; }
      if (segments_cross(p[i], p[(i + 1) % m], p[j], p[(j + 1) % m])) { return false; }
    }
  }
  return true;
}

// Σ|turning angle| from unwrapped edge headings.
inline double polygon_tac(const std::vector<Pt>& p) {
  const std::size_t m = p.size();
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Pt a = p[(i + m - 1) % m];
    const Pt b = p[i];
    const Pt c = p[(i + 1) % m];
    double turn = std::atan2(c.y - b.y, c.x - b.x) - std::atan2(b.y - a.y, b.x - a.x);
    while (turn > pi) { turn -= 2 * pi; }
    while (turn < -pi) { turn += 2 * pi; }
    total += std::abs(turn);
  }
  return total;
}

// Explicit finite differences for u_t = u_θθ on the periodic grid.
class HeatSolver {
 public:
  explicit HeatSolver(std::vector<double> u0) : u_(std::move(u0)) {
    h_ = 2 * pi / static_cast<double>(u_.size());
  }

  void advance(double duration) {
    const double dt_max = 0.25 * h_ * h_;
    const auto steps = static_cast<std::size_t>(std::ceil(duration / dt_max));
    const double dt = duration / static_cast<double>(steps);
    std::vector<double> next(u_.size());
    const std::size_t n = u_.size();
    for (std::size_t s = 0; s < steps; ++s) {
      for (std::size_t j = 0; j < n; ++j) {
        next[j] = u_[j] + dt / (h_ * h_) * (u_[(j + 1) % n] - 2 * u_[j] + u_[(j + n - 1) % n]);
      }
      u_.swap(next);
    }
  }

  [[nodiscard]] const std::vector<double>& values() const { return u_; }

 private:
  std::vector<double> u_;
  double h_;
};

}  // namespace oracle
