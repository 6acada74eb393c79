#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

/// Fourier pseudospectral helpers on the uniform periodic grid
/// θ_j = 2πj/n. Plans are cached per thread, so all functions are safe to
/// call concurrently from independent trajectories.
namespace csf::spectral {

/// Unnormalised real-to-complex transform: c_k = Σ_j f_j e^{-ikθ_j}, k = 0..n/2.
auto forward(std::span<const double> f) -> std::vector<std::complex<double>>;

/// Inverse of `forward` (includes the 1/n factor).
auto inverse(std::span<const std::complex<double>> c, std::size_t n) -> std::vector<double>;

/// d^order f / dθ^order. The Nyquist mode is dropped for odd orders.
auto derivative(std::span<const double> f, int order) -> std::vector<double>;

/// Periodic trapezoid rule for ∫_0^{2π} f dθ.
auto integrate(std::span<const double> f) -> double;

}  // namespace csf::spectral
