#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "nsk/grid.hpp"

namespace nsk::detail {

/// Complex spectrum of a real periodic field, in FFTW's natural (unnormalised) ordering.
class Spectrum {
 public:
  explicit Spectrum(const Grid& grid);

  static Spectrum forward(const Grid& grid, std::span<const double> values);

  /// Inverse transform (normalised) returning the real part.
  std::vector<double> inverse_real() const;

  std::complex<double>& operator[](std::size_t k) noexcept { return data_[k]; }
  const std::complex<double>& operator[](std::size_t k) const noexcept { return data_[k]; }
  std::size_t size() const noexcept { return data_.size(); }
  const Grid& grid() const noexcept { return grid_; }

  /// Signed integer mode index along `axis` for FFT bin `bin`.
  static int mode(int n, int bin) noexcept { return bin <= n / 2 ? bin : bin - n; }
  /// True when `bin` is the (unpaired) Nyquist bin along an axis of even length.
  static bool is_nyquist(int n, int bin) noexcept { return n % 2 == 0 && bin == n / 2; }

 private:
  Grid grid_;
  std::vector<std::complex<double>> data_;
};

}  // namespace nsk::detail
