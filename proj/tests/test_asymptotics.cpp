#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "csf/asymptotics.hpp"
#include "csf/errors.hpp"
#include "csf/exact_solutions.hpp"
#include "oracles.hpp"

using namespace csf;
using std::numbers::pi;

namespace {

auto nodes_of(std::size_t n, const std::function<double(double)>& f) -> std::vector<double> {
  return CurvatureProfile::sample(AngleGrid(n), f).values;
}

auto code_of(const std::function<void()>& f) -> std::optional<ErrorCode> {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

auto oval_snapshots(const AngleGrid& g, const OvalParams& op, std::initializer_list<double> ts)
    -> std::vector<CurvatureProfile> {
  std::vector<CurvatureProfile> out;
  for (double t : ts) { out.push_back(oval_pressure(g, op, t)); }
  return out;
}

}  // namespace

TEST_CASE("fourier coefficients", "[asymptotics]") {
  const auto s = fourier_decompose(
      nodes_of(64, [](double th) { return 2 + 3 * std::cos(2 * th) - 0.5 * std::sin(5 * th); }), 6);
  REQUIRE(s.max_mode() == 6);
  REQUIRE(s.alpha[0] == Catch::Approx(2.0).epsilon(1e-14));
  REQUIRE(s.alpha[2] == Catch::Approx(3.0).epsilon(1e-14));
  REQUIRE(s.beta[5] == Catch::Approx(-0.5).epsilon(1e-14));
  REQUIRE(s.beta[0] == 0.0);
  for (int l : {1, 3, 4, 6}) { REQUIRE(s.amplitude(l) < 1e-14); }
  REQUIRE(s.amplitude(2) == Catch::Approx(3.0));
  REQUIRE_THROWS_AS(s.amplitude(7), Error);

  REQUIRE(code_of([] { (void)fourier_decompose(std::vector<double>(9, 1.0), 4); }) ==
          ErrorCode::GridTooCoarse);
  REQUIRE_NOTHROW(fourier_decompose(std::vector<double>(10, 1.0), 4));
}

TEST_CASE("Parseval and resynthesis", "[asymptotics]") {
  const std::size_t n = 128;
  const auto f = nodes_of(n, [](double th) { return 0.3 + std::cos(th) + 0.2 * std::sin(4 * th); });
  const auto s = fourier_decompose(f, 10);
  double sq = 0.0;
  for (double v : f) { sq += v * v * 2 * pi / static_cast<double>(n); }
  REQUIRE(s.l2_norm_squared() == Catch::Approx(sq).epsilon(1e-13));
  const auto back = synthesize(s, n);
  for (std::size_t j = 0; j < n; ++j) { REQUIRE(back[j] == Catch::Approx(f[j]).margin(1e-13)); }
}

TEST_CASE("linearized spectrum", "[asymptotics]") {
  REQUIRE(linearized_spectrum(0) == 2.0);
  REQUIRE(linearized_spectrum(1) == 1.0);
  REQUIRE(linearized_spectrum(2) == -2.0);
  REQUIRE(linearized_spectrum(3) == -7.0);
  REQUIRE_THROWS_AS(linearized_spectrum(-1), Error);
  for (int l = 0; l <= 5; ++l) {
    for (bool use_sin : {false, true}) {
      auto mode = [l, use_sin](double th) { return use_sin ? std::sin(l * th) : std::cos(l * th); };
      const auto f = nodes_of(64, mode);
      const auto lf = apply_linearized_operator(f);
      for (std::size_t j = 0; j < f.size(); ++j) {
        REQUIRE(lf[j] == Catch::Approx(linearized_spectrum(l) * f[j]).margin(1e-11));
      }
    }
  }
}

TEST_CASE("exponential rate fit", "[asymptotics]") {
  FunctionalSeries s{"m", {}, {}};
  for (int k = 0; k < 10; ++k) { s.push(0.1 * k, 0.7 * std::exp(-3.0 * 0.1 * k)); }
  const auto fit = fit_exponential_rate(s);
  REQUIRE(fit.rate == Catch::Approx(-3.0).epsilon(1e-12));
  REQUIRE(fit.intercept == Catch::Approx(std::log(0.7)).epsilon(1e-12));
  REQUIRE(fit.r_squared == Catch::Approx(1.0).epsilon(1e-12));

  FunctionalSeries short_series{"m", {0, 1, 2, 3}, {1, 2, 3, 4}};
  REQUIRE(code_of([&] { (void)fit_exponential_rate(short_series); }) == ErrorCode::InvalidArgument);
  FunctionalSeries with_zero{"m", {0, 1, 2, 3, 4}, {1, 2, 0, 4, 5}};
  REQUIRE(code_of([&] { (void)fit_exponential_rate(with_zero); }) == ErrorCode::NonPositiveValues);
}

TEST_CASE("backward limit fit", "[asymptotics]") {
  const AngleGrid g(128);
  const auto f = fit_backward_limit(
      CurvatureProfile::sample(g, [](double th) { return 3 * std::pow(std::cos(th + 0.7), 2); }));
  REQUIRE(f.a == Catch::Approx(3.0).epsilon(1e-12));
  REQUIRE(f.b == Catch::Approx(0.7).epsilon(1e-12));
  REQUIRE(f.residual < 1e-12);

  const auto zero = fit_backward_limit(CurvatureProfile(g, std::vector<double>(128, 0.0)));
  REQUIRE(zero.a == 0.0);
  REQUIRE(zero.b == 0.0);
  REQUIRE(zero.residual == 0.0);

  // A round profile has no preferred direction and is far from the family.
  const auto round = fit_backward_limit(CurvatureProfile(g, std::vector<double>(128, 1.0)));
  REQUIRE(round.residual > 0.5);

  // The γ = 0 oval at t = −15 is cos²θ up to e^{−30}: b is 0, not π/2.
  const auto oval = fit_backward_limit(oval_pressure(AngleGrid(256), OvalParams(1.0, 0.0), -15.0));
  REQUIRE(oval.a == Catch::Approx(1.0).epsilon(1e-9));
  REQUIRE(angle_distance_mod_pi(oval.b, 0.0) < 1e-9);
  REQUIRE(angle_distance_mod_pi(oval.b, pi / 2) > 1.5);
}

TEST_CASE("quadrupole of the normalized oval tends to lambda/2", "[asymptotics]") {
  const AngleGrid g(128);
  const OvalParams op(1.0, 0.0);
  ThetaTrajectory traj;
  for (double tau : {2.0, 4.0, 6.0}) {
    const double t = -std::exp(-2 * tau);
    auto s = to_normalized({oval_pressure(g, op, t), t, Frame::Unnormalized});
    traj.append(s, {});
  }
  const auto q = extract_quadrupole(traj);
  REQUIRE(q.times.size() == 3);
  REQUIRE(q.a.back() == Catch::Approx(0.5).epsilon(1e-4));
  REQUIRE(std::abs(q.b.back()) < 1e-12);
  REQUIRE(std::abs(q.a[2] - 0.5) < std::abs(q.a[0] - 0.5));

  ThetaTrajectory wrong;
  wrong.append({circle_pressure(g, -1.0), -1.0, Frame::Unnormalized}, {});
  REQUIRE(code_of([&] { (void)extract_quadrupole(wrong); }) == ErrorCode::WrongFrame);
}

TEST_CASE("classifier recognises ovals", "[asymptotics]") {
  const AngleGrid g(256);
  for (const auto& [lam, gam] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {0.5, 1.1}, {2.0, 2.9}}) {
    const auto snaps = oval_snapshots(g, OvalParams(lam, gam), {-3.0, -2.0, -1.0, -0.4});
    const auto c = classify_ancient(snaps);
    REQUIRE(c.kind == AncientKind::AngenentOval);
    REQUIRE(c.params->lambda() == Catch::Approx(lam).epsilon(1e-6));
    REQUIRE(angle_distance_mod_pi(c.params->gamma(), gam) < 1e-6);
    REQUIRE(std::abs(*c.extinction_time) < 1e-6);
    REQUIRE(c.residual < 1e-6);
  }
}

TEST_CASE("classifier recognises circles and shifted clocks", "[asymptotics]") {
  const AngleGrid g(64);
  std::vector<CurvatureProfile> snaps;
  for (double t : {-2.0, -1.0, -0.5}) {
    auto p = circle_pressure(g, t);
    p.time = t - 0.25;  // extinction at −0.25
    snaps.push_back(p);
  }
  const auto c = classify_ancient(snaps);
  REQUIRE(c.kind == AncientKind::Circle);
  REQUIRE(*c.extinction_time == Catch::Approx(-0.25).epsilon(1e-12));
  REQUIRE_FALSE(c.params.has_value());
}

TEST_CASE("classifier rejects other profiles", "[asymptotics]") {
  const AngleGrid g(128);
  std::vector<CurvatureProfile> snaps;
  for (double t : {-3.0, -2.0, -1.0}) {
    snaps.push_back(CurvatureProfile::sample(g, [](double th) { return 1 + 0.3 * std::cos(3 * th); }, t));
  }
  const auto c = classify_ancient(snaps);
  REQUIRE(c.kind == AncientKind::Unknown);
  REQUIRE(c.residual > 1e-3);

  // Oval shape but the wrong time dependence (frozen profile).
  std::vector<CurvatureProfile> frozen;
  for (double t : {-3.0, -2.0, -1.0}) {
    auto p = oval_pressure(g, OvalParams(1.0, 0.2), -1.0);
    p.time = t;
    frozen.push_back(p);
  }
  REQUIRE(classify_ancient(frozen).kind == AncientKind::Unknown);

  std::vector<CurvatureProfile> two(snaps.begin(), snaps.begin() + 2);
  REQUIRE(code_of([&] { (void)classify_ancient(two); }) == ErrorCode::TooFewSnapshots);
  std::vector<CurvatureProfile> late = snaps;
  late[2].time = 0.5;
  REQUIRE(code_of([&] { (void)classify_ancient(late); }) == ErrorCode::NonAncientTime);
  REQUIRE(std::string(to_string(AncientKind::AngenentOval)) == "AngenentOval");
}

TEST_CASE("closing profiles have no mode-1 content in 1/kappa", "[asymptotics]") {
  const AngleGrid g(256);
  const auto p = oval_pressure(g, OvalParams(1.5, 0.8), -0.6);
  std::vector<double> radius(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) { radius[j] = 1 / std::sqrt(p.values[j]); }
  REQUIRE(fourier_decompose(radius, 1).amplitude(1) < 1e-12);

  const auto q = CurvatureProfile::sample(g, [](double th) { return 1 + 0.5 * std::cos(th); });
  std::vector<double> r2(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) { r2[j] = 1 / std::sqrt(q.values[j]); }
  const double expected = oracle::midpoint(
      [](double th) { return std::cos(th) / std::sqrt(1 + 0.5 * std::cos(th)); }, 0.0, 2 * pi) / pi;
  REQUIRE(fourier_decompose(r2, 1).alpha[1] == Catch::Approx(expected).epsilon(1e-10));
}
