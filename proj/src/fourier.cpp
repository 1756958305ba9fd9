#include "fourier.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>

namespace nsk::detail {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
// Plans are created once per shape and direction and kept for the process lifetime.
struct PlanCache {
  std::mutex mutex;
  std::map<std::tuple<int, int, int>, fftw_plan> plans;

  fftw_plan get(int n0, int n1, int sign) {
    std::lock_guard lock(mutex);
    auto key = std::make_tuple(n0, n1, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    const std::size_t count = static_cast<std::size_t>(n0) * n1;
    fftw_complex* scratch = fftw_alloc_complex(count);
    fftw_plan plan = n1 == 1 ? fftw_plan_dft_1d(n0, scratch, scratch, sign, FFTW_ESTIMATE)
                             : fftw_plan_dft_2d(n0, n1, scratch, scratch, sign, FFTW_ESTIMATE);
    fftw_free(scratch);
    plans.emplace(key, plan);
    return plan;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : size(n), data(fftw_alloc_complex(n)) {}
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  std::size_t size;
  fftw_complex* data;
};

void transform(const Grid& grid, FftwBuffer& buf, int sign) {
  fftw_plan plan = cache().get(grid.n(0), grid.n(1), sign);
  fftw_execute_dft(plan, buf.data, buf.data);
}

}  // namespace

Spectrum::Spectrum(const Grid& grid) : grid_(grid), data_(grid.size()) {}

Spectrum Spectrum::forward(const Grid& grid, std::span<const double> values) {
  FftwBuffer buf(grid.size());
  for (std::size_t i = 0; i < buf.size; ++i) {
    buf.data[i][0] = values[i];
    buf.data[i][1] = 0.0;
  }
  transform(grid, buf, FFTW_FORWARD);
  Spectrum s(grid);
  for (std::size_t i = 0; i < buf.size; ++i) s.data_[i] = {buf.data[i][0], buf.data[i][1]};
  return s;
}

std::vector<double> Spectrum::inverse_real() const {
  FftwBuffer buf(data_.size());
  for (std::size_t i = 0; i < buf.size; ++i) {
    buf.data[i][0] = data_[i].real();
    buf.data[i][1] = data_[i].imag();
  }
  transform(grid_, buf, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(data_.size());
  std::vector<double> out(data_.size());
  for (std::size_t i = 0; i < buf.size; ++i) out[i] = buf.data[i][0] * scale;
  return out;
}

}  // namespace nsk::detail
