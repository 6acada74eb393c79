#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <thread>

#include "csf/errors.hpp"
#include "csf/spectral.hpp"

using std::numbers::pi;

namespace {

auto sampled(std::size_t n, double (*f)(double)) -> std::vector<double> {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) { v[j] = f(2 * pi * static_cast<double>(j) / static_cast<double>(n)); }
  return v;
}

double smooth(double th) { return std::exp(std::sin(th)); }
double smooth_d1(double th) { return std::cos(th) * std::exp(std::sin(th)); }
double smooth_d2(double th) {
  return (std::cos(th) * std::cos(th) - std::sin(th)) * std::exp(std::sin(th));
}

}  // namespace

TEST_CASE("spectral derivatives of a smooth periodic function", "[spectral]") {
  const auto f = sampled(64, smooth);
  const auto d1 = csf::spectral::derivative(f, 1);
  const auto d2 = csf::spectral::derivative(f, 2);
  const auto e1 = sampled(64, smooth_d1);
  const auto e2 = sampled(64, smooth_d2);
  for (std::size_t j = 0; j < f.size(); ++j) {
    REQUIRE(d1[j] == Catch::Approx(e1[j]).margin(1e-12));
    REQUIRE(d2[j] == Catch::Approx(e2[j]).margin(1e-11));
  }
}

TEST_CASE("forward then inverse returns the samples", "[spectral]") {
  const auto f = sampled(48, smooth);
  const auto back = csf::spectral::inverse(csf::spectral::forward(f), f.size());
  for (std::size_t j = 0; j < f.size(); ++j) { REQUIRE(back[j] == Catch::Approx(f[j]).margin(1e-14)); }
}

TEST_CASE("periodic trapezoid integral", "[spectral]") {
  // ∫ e^{sin θ} dθ = 2π I0(1)
  const double expected = 2 * pi * std::cyl_bessel_i(0.0, 1.0);
  REQUIRE(csf::spectral::integrate(sampled(32, smooth)) == Catch::Approx(expected).epsilon(1e-14));
}

TEST_CASE("derivative of a constant is zero", "[spectral]") {
  const std::vector<double> c(16, 3.5);
  for (double v : csf::spectral::derivative(c, 3)) { REQUIRE(std::abs(v) < 1e-13); }
}

TEST_CASE("odd derivative ignores the Nyquist mode", "[spectral]") {
  std::vector<double> alt(16);
  for (std::size_t j = 0; j < alt.size(); ++j) { alt[j] = j % 2 == 0 ? 1.0 : -1.0; }
  for (double v : csf::spectral::derivative(alt, 1)) { REQUIRE(std::abs(v) < 1e-13); }
}

TEST_CASE("concurrent transforms agree with the serial result", "[spectral][concurrency]") {
  const auto f = sampled(128, smooth);
  const auto serial = csf::spectral::derivative(f, 2);
  std::vector<std::vector<double>> results(4);
  {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < results.size(); ++k) {
      pool.emplace_back([&, k] {
        for (int rep = 0; rep < 50; ++rep) { results[k] = csf::spectral::derivative(f, 2); }
      });
    }
  }
  for (const auto& r : results) { REQUIRE(r == serial); }
}
