#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace nsk::harness {

/// Truncated Taylor series in one variable about a point x0:
/// f(x0 + e) = Σ_k c[k] e^k, valid up to `order`. Arithmetic on jets gives
/// exact derivatives of composite expressions at x0 (up to round-off), with
/// no grid involved.
class Jet {
 public:
  static constexpr int kMaxOrder = 8;

  Jet() = default;
  Jet(double v) { c_[0] = v; }  // NOLINT: implicit lift of constants

  static Jet variable(double x0) {
    Jet j(x0);
    j.c_[1] = 1.0;
    return j;
  }

  int order() const noexcept { return order_; }
  double value() const noexcept { return c_[0]; }
  double coeff(int k) const noexcept { return c_[k]; }

  /// k-th derivative at x0.
  double derivative(int k) const noexcept {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c_[k] * f;
  }

  /// Jet of the derivative; loses one order.
  Jet d() const {
    Jet out;
    out.order_ = std::max(order_ - 1, 0);
    if (order_ == 0) return out;
    for (int k = 0; k < kMaxOrder; ++k) out.c_[k] = (k + 1) * c_[k + 1];
    return out;
  }

  Jet& operator+=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= kMaxOrder; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= kMaxOrder; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet out;
    out.order_ = std::min(a.order_, b.order_);
    for (int k = 0; k <= out.order_; ++k) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      out.c_[k] = s;
    }
    return out;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet out;
    out.order_ = std::min(a.order_, b.order_);
    for (int k = 0; k <= out.order_; ++k) {
      double s = a.c_[k];
      for (int j = 1; j <= k; ++j) s -= b.c_[j] * out.c_[k - j];
      out.c_[k] = s / b.c_[0];
    }
    return out;
  }

  friend Jet exp(const Jet& a) {
    Jet out;
    out.order_ = a.order_;
    out.c_[0] = std::exp(a.c_[0]);
    for (int k = 1; k <= out.order_; ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += j * a.c_[j] * out.c_[k - j];
      out.c_[k] = s / k;
    }
    return out;
  }

  friend Jet sin(const Jet& a) { return sincos(a)[0]; }
  friend Jet cos(const Jet& a) { return sincos(a)[1]; }

  friend Jet tanh(const Jet& a) {
    // tanh is odd; evaluate on -|a0| side to keep exp bounded.
    const double sgn = a.c_[0] < 0.0 ? -1.0 : 1.0;
    const Jet e = exp(Jet(-2.0 * sgn) * a);
    return Jet(sgn) * (Jet(1.0) - e) / (Jet(1.0) + e);
  }

  friend Jet sqrt(const Jet& a) {
    Jet out;
    out.order_ = a.order_;
    out.c_[0] = std::sqrt(a.c_[0]);
    for (int k = 1; k <= out.order_; ++k) {
      double s = a.c_[k];
      for (int j = 1; j < k; ++j) s -= out.c_[j] * out.c_[k - j];
      out.c_[k] = s / (2.0 * out.c_[0]);
    }
    return out;
  }

 private:
  static std::array<Jet, 2> sincos(const Jet& a) {
    Jet s, c;
    s.order_ = c.order_ = a.order_;
    s.c_[0] = std::sin(a.c_[0]);
    c.c_[0] = std::cos(a.c_[0]);
    for (int k = 1; k <= a.order_; ++k) {
      double ss = 0.0, cc = 0.0;
      for (int j = 1; j <= k; ++j) {
        ss += j * a.c_[j] * c.c_[k - j];
        cc -= j * a.c_[j] * s.c_[k - j];
      }
      s.c_[k] = ss / k;
      c.c_[k] = cc / k;
    }
    return {s, c};
  }

  std::array<double, kMaxOrder + 1> c_{};
  int order_ = kMaxOrder;
};

}  // namespace nsk::harness
