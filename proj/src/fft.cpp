#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace biofilm::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
  ~PlanPair() {
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

// FFTW planning is not thread-safe; executing a finished plan on new arrays is.
std::mutex plan_mutex;

const PlanPair& plans_for(int n) {
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(plan_mutex);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<PlanPair>();
    std::vector<double> real(n);
    std::vector<std::complex<double>> spec(n / 2 + 1);
    auto* cspec = reinterpret_cast<fftw_complex*>(spec.data());
    // FFTW_ESTIMATE keeps plans (and hence results) deterministic across runs.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    slot->forward = fftw_plan_dft_r2c_1d(n, real.data(), cspec, flags);
    slot->inverse = fftw_plan_dft_c2r_1d(n, cspec, real.data(), flags | FFTW_DESTROY_INPUT);
  }
  return *slot;
}

}  // namespace

void forward_r2c(std::span<const double> in, std::span<std::complex<double>> out) {
  const int n = static_cast<int>(in.size());
  const auto& p = plans_for(n);
  std::vector<double> scratch(in.begin(), in.end());
  fftw_execute_dft_r2c(p.forward, scratch.data(), reinterpret_cast<fftw_complex*>(out.data()));
}

void inverse_c2r(std::span<const std::complex<double>> in, std::span<double> out) {
  const int n = static_cast<int>(out.size());
  const auto& p = plans_for(n);
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(p.inverse, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

const char* fft_backend_version() { return fftw_version; }

}  // namespace biofilm::detail
