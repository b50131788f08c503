#include "psido/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace psido::fft {
namespace {

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

struct Plan {
  Plan(int n, int sign) : in(n), out(n) {
    plan = fftw_plan_dft_1d(n, in.data, out.data, sign, FFTW_ESTIMATE);
    if (plan == nullptr) throw std::runtime_error("fftw: planning failed");
  }
  ~Plan() { fftw_destroy_plan(plan); }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  FftwBuffer in;
  FftwBuffer out;
  fftw_plan plan;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const Plan& plan_for(int n, int sign) {
  static std::map<std::pair<int, int>, std::unique_ptr<Plan>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[{n, sign}];
  if (!slot) slot = std::make_unique<Plan>(n, sign);
  return *slot;
}

void execute(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int sign) {
  if (in.size() != out.size()) throw std::invalid_argument("fft: input/output size mismatch");
  if (in.empty()) return;
  const int n = static_cast<int>(in.size());
  const Plan& p = plan_for(n, sign);
  // New-array execution needs FFTW-aligned storage; stage through local buffers.
  FftwBuffer a(in.size());
  FftwBuffer b(in.size());
  std::memcpy(a.data, in.data(), in.size() * sizeof(fftw_complex));
  fftw_execute_dft(p.plan, a.data, b.data);
  std::memcpy(static_cast<void*>(out.data()), b.data, out.size() * sizeof(fftw_complex));
}

}  // namespace

void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  execute(in, out, FFTW_FORWARD);
}

void backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  execute(in, out, FFTW_BACKWARD);
}

}  // namespace psido::fft
