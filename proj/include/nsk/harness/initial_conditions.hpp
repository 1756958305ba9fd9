#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "nsk/constitutive.hpp"
#include "nsk/grid.hpp"
#include "nsk/reduced.hpp"

namespace nsk::harness {

enum class IcFamily { Constant, SineDensity, TanhInterface, RandomBandLimited };

std::string to_string(IcFamily f);
IcFamily ic_family_from_string(const std::string& s);

/// Velocity profile shared by all density families.
///
/// Periodic 1-D: u = A sin(q x~ + phase). Periodic 2-D: the compressive
/// field A (sin qx~ cos qy~, cos qx~ sin qy~) or, when `solenoidal`, the
/// Taylor-Green field A (sin qx~ cos qy~, -cos qx~ sin qy~). Bounded 1-D:
/// u = A sin(q pi x / L), which vanishes at both walls. `offset` is a
/// uniform velocity added on periodic grids.
struct VelocitySpec {
  double amplitude = 0.0;
  int wavenumber = 1;
  double phase = 0.0;
  bool solenoidal = false;
  std::array<double, 2> offset{0.0, 0.0};
};

/// Named initial-condition family and its parameters. On periodic grids the
/// scaled coordinate is x~ = 2 pi x / L; on the bounded grid densities use
/// cosine modes cos(k pi x / L) so that they satisfy the zero-flux condition.
struct InitialCondition {
  IcFamily family = IcFamily::Constant;
  /// Base density (Constant, SineDensity, RandomBandLimited).
  double rho0 = 1.5;
  /// Relative density amplitude.
  double amplitude = 0.1;
  int wavenumber = 1;
  /// Second-axis modulation cos(k_y y~) for SineDensity in 2-D (0 = none).
  int wavenumber_y = 0;
  double phase = 0.0;
  /// TanhInterface: width w and centre (fraction of the domain length).
  double width = 0.3;
  double center = 0.0;
  /// RandomBandLimited: highest mode index and generator seed.
  int max_mode = 5;
  std::uint64_t seed = 42;
  VelocitySpec velocity;
};

/// An initial condition bound to a domain and parameter set, evaluable at
/// arbitrary points with any arithmetic type supporting sin/cos/tanh
/// (double, or Jet for exact derivatives).
class InitialField {
 public:
  InitialField(const InitialCondition& ic, const Grid& domain, const FluidParams& params);

  template <class T>
  T rho(const T& x, const T& y = T(0.0)) const;

  template <class T>
  std::array<T, 2> u(const T& x, const T& y = T(0.0)) const;

  /// Samples rho and m = rho u on `grid` (same domain, any resolution).
  MixtureState sample(const Grid& grid) const;

  const InitialCondition& spec() const noexcept { return ic_; }

 private:
  struct Mode {
    int kx;
    int ky;
    double amp;
    double phase;
  };

  template <class T>
  T random_sum(const T& xs, const T& ys) const;

  InitialCondition ic_;
  int dim_;
  bool periodic_;
  std::array<double, 2> length_;
  double rho_mid_;
  double rho_half_;
  std::vector<Mode> modes_;
  double mode_scale_ = 1.0;
};

template <class T>
T InitialField::random_sum(const T& xs, const T& ys) const {
  using std::cos;
  T acc(0.0);
  for (const auto& m : modes_) {
    if (periodic_) {
      acc += T(m.amp) * cos(T(static_cast<double>(m.kx)) * xs + T(static_cast<double>(m.ky)) * ys + T(m.phase));
    } else {
      acc += T(m.amp) * cos(T(static_cast<double>(m.kx)) * xs);
    }
  }
  return acc * T(1.0 / mode_scale_);
}

template <class T>
T InitialField::rho(const T& x, const T& y) const {
  using std::cos;
  using std::sin;
  using std::tanh;
  const double pi = std::numbers::pi;
  const double sx = periodic_ ? 2.0 * pi / length_[0] : pi / length_[0];
  const double sy = 2.0 * pi / length_[1];
  const T xs = T(sx) * x;
  const T ys = dim_ > 1 ? T(sy) * y : T(0.0);
  switch (ic_.family) {
    case IcFamily::Constant:
      return T(ic_.rho0);
    case IcFamily::SineDensity: {
      const T k(static_cast<double>(ic_.wavenumber));
      T shape = periodic_ ? sin(k * xs + T(ic_.phase)) : cos(k * xs);
      if (dim_ > 1 && ic_.wavenumber_y != 0) shape = shape * cos(T(static_cast<double>(ic_.wavenumber_y)) * ys);
      return T(ic_.rho0) * (T(1.0) + T(ic_.amplitude) * shape);
    }
    case IcFamily::TanhInterface: {
      const T s = periodic_ ? T(length_[0] / (2.0 * pi)) * sin(xs - T(2.0 * pi * ic_.center))
                            : T(length_[0] / pi) * cos(xs);
      return T(rho_mid_) + T(rho_half_) * tanh(s / T(ic_.width));
    }
    case IcFamily::RandomBandLimited:
      return T(ic_.rho0) * (T(1.0) + T(ic_.amplitude) * random_sum(xs, ys));
  }
  return T(ic_.rho0);
}

template <class T>
std::array<T, 2> InitialField::u(const T& x, const T& y) const {
  using std::cos;
  using std::sin;
  const double pi = std::numbers::pi;
  const VelocitySpec& v = ic_.velocity;
  const T amp(v.amplitude);
  const T q(static_cast<double>(v.wavenumber));
  if (!periodic_) return {amp * sin(q * T(pi / length_[0]) * x), T(0.0)};
  const T xs = T(2.0 * pi / length_[0]) * x;
  if (dim_ == 1) return {amp * sin(q * xs + T(v.phase)) + T(v.offset[0]), T(0.0)};
  const T ys = T(2.0 * pi / length_[1]) * y;
  const T sign(v.solenoidal ? -1.0 : 1.0);
  return {amp * sin(q * xs) * cos(q * ys) + T(v.offset[0]),
          sign * amp * cos(q * xs) * sin(q * ys) + T(v.offset[1])};
}

}  // namespace nsk::harness
