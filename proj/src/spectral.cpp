#include "csf/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

#include "csf/errors.hpp"

namespace csf::spectral {
namespace {

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class RealFft {
 public:
  explicit RealFft(std::size_t n) : n_(n) {
    real_ = fftw_alloc_real(n_);
    spec_ = fftw_alloc_complex(n_ / 2 + 1);
    std::lock_guard lock(planner_mutex());
    fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), real_, spec_, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_1d(static_cast<int>(n_), spec_, real_, FFTW_ESTIMATE);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  ~RealFft() {
    {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(fwd_);
      fftw_destroy_plan(bwd_);
    }
    fftw_free(real_);
    fftw_free(spec_);
  }

  auto forward(std::span<const double> f) -> std::vector<std::complex<double>> {
    std::copy(f.begin(), f.end(), real_);
    fftw_execute(fwd_);
    std::vector<std::complex<double>> out(n_ / 2 + 1);
    for (std::size_t k = 0; k < out.size(); ++k) { out[k] = {spec_[k][0], spec_[k][1]}; }
    return out;
  }

  auto inverse(std::span<const std::complex<double>> c) -> std::vector<double> {
    for (std::size_t k = 0; k < n_ / 2 + 1; ++k) {
      spec_[k][0] = c[k].real();
      spec_[k][1] = c[k].imag();
    }
    fftw_execute(bwd_);
    std::vector<double> out(real_, real_ + n_);
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& v : out) { v *= scale; }
    return out;
  }

 private:
  std::size_t n_;
  double* real_{};
  fftw_complex* spec_{};
  fftw_plan fwd_{};
  fftw_plan bwd_{};
};

auto plan_for(std::size_t n) -> RealFft& {
  thread_local std::map<std::size_t, std::unique_ptr<RealFft>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) { it = cache.emplace(n, std::make_unique<RealFft>(n)).first; }
  return *it->second;
}

void require_size(std::size_t n) {
  if (n < 2) { throw Error(ErrorCode::InvalidArgument, "spectral grid needs at least 2 nodes"); }
}

}  // namespace

auto forward(std::span<const double> f) -> std::vector<std::complex<double>> {
  require_size(f.size());
  return plan_for(f.size()).forward(f);
}

auto inverse(std::span<const std::complex<double>> c, std::size_t n) -> std::vector<double> {
  require_size(n);
  if (c.size() != n / 2 + 1) {
    throw Error(ErrorCode::InvalidArgument, "coefficient count does not match grid size");
  }
  return plan_for(n).inverse(c);
}

auto derivative(std::span<const double> f, int order) -> std::vector<double> {
  if (order < 0) { throw Error(ErrorCode::InvalidArgument, "negative derivative order"); }
  if (order == 0) { return {f.begin(), f.end()}; }
  const std::size_t n = f.size();
  auto c = forward(f);
  const std::complex<double> i{0.0, 1.0};
  for (std::size_t k = 0; k < c.size(); ++k) {
    const bool nyquist = (n % 2 == 0) && (k == n / 2);
    if (nyquist && order % 2 == 1) {
      c[k] = 0.0;
      continue;
    }
    std::complex<double> factor{1.0, 0.0};
    for (int m = 0; m < order; ++m) { factor *= i * static_cast<double>(k); }
    c[k] *= factor;
  }
  return inverse(c, n);
}

auto integrate(std::span<const double> f) -> double {
  if (f.empty()) { return 0.0; }
  const double h = 2.0 * std::numbers::pi / static_cast<double>(f.size());
  return h * std::accumulate(f.begin(), f.end(), 0.0);
}

}  // namespace csf::spectral
