#include <catch_amalgamated.hpp>

#include <charconv>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "csf/asymptotics.hpp"
#include "csf/flow_arclength.hpp"
#include "csf/flow_theta.hpp"
#include "csf/geometry.hpp"
#include "csf/io.hpp"
#include "oracles.hpp"

using namespace csf;
using std::numbers::pi;

namespace {

auto parse(const std::string& s) -> double {
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

auto to_oracle(const PlanarCurve& c) -> std::vector<oracle::Pt> {
  std::vector<oracle::Pt> out;
  for (const auto& p : c.points) { out.push_back({p.x, p.y}); }
  return out;
}

auto random_star(std::mt19937_64& rng, std::size_t m) -> PlanarCurve {
  std::uniform_real_distribution<double> amp(-0.3, 0.3);
  std::uniform_int_distribution<int> mode(2, 7);
  const double a1 = amp(rng);
  const double a2 = amp(rng);
  const int k1 = mode(rng);
  const int k2 = mode(rng);
  PlanarCurve c;
  for (std::size_t j = 0; j < m; ++j) {
    const double s = 2 * pi * static_cast<double>(j) / static_cast<double>(m);
    const double r = 1 + a1 * std::cos(k1 * s) + a2 * std::sin(k2 * s);
    c.points.push_back({r * std::cos(s), r * std::sin(s)});
  }
  return c;
}

}  // namespace

TEST_CASE("sweep-line simplicity agrees with the quadratic check", "[properties]") {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_int_distribution<int> size(4, 14);
  int simple = 0;
  for (int trial = 0; trial < 400; ++trial) {
    PlanarCurve c;
    const int m = size(rng);
    for (int j = 0; j < m; ++j) { c.points.push_back({coord(rng), coord(rng)}); }
    const bool expected = oracle::simple_brute_force(to_oracle(c));
    REQUIRE(is_simple(c) == expected);
    simple += expected ? 1 : 0;
  }
  REQUIRE(simple > 10);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_star(rng, 64);
    REQUIRE(is_simple(c) == oracle::simple_brute_force(to_oracle(c)));
  }
}

TEST_CASE("TAC matches the turning-angle oracle on random stars", "[properties]") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_star(rng, 96);
    const double tac = total_absolute_curvature(c, 0.0);
    REQUIRE(tac == Catch::Approx(oracle::polygon_tac(to_oracle(c))).epsilon(1e-12));
    REQUIRE(tac >= 2 * pi - 1e-12);
    REQUIRE(total_absolute_curvature(c, 0.5) >= tac);
  }
}

TEST_CASE("Fourier analysis and synthesis are inverse", "[properties]") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> coef(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    ModeSpectrum s{std::vector<double>(9), std::vector<double>(9)};
    for (std::size_t l = 0; l < 9; ++l) {
      s.alpha[l] = coef(rng);
      s.beta[l] = l == 0 ? 0.0 : coef(rng);
    }
    const auto back = fourier_decompose(synthesize(s, 32), 8);
    for (std::size_t l = 0; l < 9; ++l) {
      REQUIRE(back.alpha[l] == Catch::Approx(s.alpha[l]).margin(1e-12));
      REQUIRE(back.beta[l] == Catch::Approx(s.beta[l]).margin(1e-12));
    }
  }
}

TEST_CASE("random doubles survive the text round trip", "[properties]") {
  std::mt19937_64 rng(123);
  int checked = 0;
  while (checked < 10000) {
    const std::uint64_t bits = rng();
    double v = 0.0;
    std::memcpy(&v, &bits, sizeof v);
    if (!std::isfinite(v)) { continue; }
    REQUIRE(parse(io::format_double(v)) == v);
    ++checked;
  }
}

TEST_CASE("pressure equation is quadratic under scaling", "[properties]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> amp(-0.2, 0.2);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  const AngleGrid g(64);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = amp(rng);
    const double b = amp(rng);
    const double c = scale(rng);
    const auto p = CurvatureProfile::sample(g, [&](double th) { return 1 + a * std::cos(2 * th) + b * std::sin(3 * th); });
    auto scaled = p;
    for (auto& v : scaled.values) { v *= c; }
    const auto r = pressure_rhs(p);
    const auto rs = pressure_rhs(scaled);
    for (std::size_t j = 0; j < r.size(); ++j) { REQUIRE(rs[j] == Catch::Approx(c * c * r[j]).margin(1e-10)); }
  }
}

TEST_CASE("cyclic zero counts are even", "[properties]") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> v(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(17 + trial % 13);
    for (auto& x : s) { x = v(rng); }
    REQUIRE(sturm_zero_count(s, 0.05) % 2 == 0);
  }
}

TEST_CASE("redistribution keeps the length of smooth curves", "[properties]") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_star(rng, 400);
    const auto r = redistribute_arclength(c, 400);
    REQUIRE(geometric_measures(r).length == Catch::Approx(geometric_measures(c).length).epsilon(1e-3));
    REQUIRE(geometric_measures(r).signed_area == Catch::Approx(geometric_measures(c).signed_area).epsilon(1e-3));
  }
}
