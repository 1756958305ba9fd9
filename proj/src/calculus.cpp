#include "nsk/calculus.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "fourier.hpp"
#include "nsk/errors.hpp"

namespace nsk {
namespace {

using detail::Spectrum;

void apply_dealias_filter(Spectrum& s) {
  const Grid& g = s.grid();
  for (int i = 0; i < g.n(0); ++i) {
    for (int j = 0; j < g.n(1); ++j) {
      const bool cut_x = 3 * std::abs(Spectrum::mode(g.n(0), i)) > g.n(0);
      const bool cut_y = g.dim() > 1 && 3 * std::abs(Spectrum::mode(g.n(1), j)) > g.n(1);
      if (cut_x || cut_y) s[g.index(i, j)] = 0.0;
    }
  }
}

ScalarField spectral_partial(const Spectrum& spec, int axis) {
  const Grid& g = spec.grid();
  const double k0 = 2.0 * std::numbers::pi / g.length(axis);
  Spectrum d(g);
  for (int i = 0; i < g.n(0); ++i) {
    for (int j = 0; j < g.n(1); ++j) {
      const int bin = axis == 0 ? i : j;
      const int n = g.n(axis);
      const std::size_t idx = g.index(i, j);
      if (Spectrum::is_nyquist(n, bin)) {
        d[idx] = 0.0;
      } else {
        d[idx] = std::complex<double>(0.0, k0 * Spectrum::mode(n, bin)) * spec[idx];
      }
    }
  }
  return ScalarField(g, d.inverse_real());
}

Spectrum forward(const ScalarField& f, const Discretization& d) {
  Spectrum s = Spectrum::forward(f.grid(), f.values());
  if (d.dealias) apply_dealias_filter(s);
  return s;
}

ScalarField fd2_partial(const ScalarField& f, int axis, Parity parity) {
  const Grid& g = f.grid();
  ScalarField out(g);
  const double inv2h = 1.0 / (2.0 * g.h(axis));
  const int n = g.n(axis);
  const int other = g.n(1 - axis);
  const double sign = parity == Parity::Even ? 1.0 : -1.0;
  for (int line = 0; line < (g.dim() > 1 ? other : 1); ++line) {
    auto at = [&](int k) {
      return axis == 0 ? g.index(k, line) : g.index(line, k);
    };
    for (int k = 0; k < n; ++k) {
      double left, right;
      if (k > 0) {
        left = f[at(k - 1)];
      } else {
        left = g.periodic() ? f[at(n - 1)] : sign * f[at(0)];
      }
      if (k < n - 1) {
        right = f[at(k + 1)];
      } else {
        right = g.periodic() ? f[at(0)] : sign * f[at(n - 1)];
      }
      out[at(k)] = (right - left) * inv2h;
    }
  }
  return out;
}

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::Spectral ? "Spectral" : "FD2"; }

Scheme scheme_from_string(const std::string& s) {
  if (s == "Spectral" || s == "spectral") return Scheme::Spectral;
  if (s == "FD2" || s == "fd2") return Scheme::FD2;
  throw ConfigError("unknown scheme '" + s + "'");
}

void require_compatible(const Grid& grid, const Discretization& d) {
  if (d.scheme == Scheme::Spectral && !grid.periodic())
    throw ConfigError("Spectral differentiation requires a periodic grid");
}

ScalarField partial(const ScalarField& f, int axis, const Discretization& d, Parity parity) {
  require_compatible(f.grid(), d);
  if (axis < 0 || axis >= f.grid().dim()) throw ConfigError("derivative axis out of range");
  if (d.scheme == Scheme::Spectral) return spectral_partial(forward(f, d), axis);
  return fd2_partial(f, axis, parity);
}

VectorField grad(const ScalarField& f, const Discretization& d) {
  require_compatible(f.grid(), d);
  std::vector<ScalarField> comps;
  comps.reserve(f.grid().dim());
  if (d.scheme == Scheme::Spectral) {
    const Spectrum s = forward(f, d);
    for (int a = 0; a < f.grid().dim(); ++a) comps.push_back(spectral_partial(s, a));
  } else {
    for (int a = 0; a < f.grid().dim(); ++a) comps.push_back(fd2_partial(f, a, Parity::Even));
  }
  return VectorField(std::move(comps));
}

ScalarField div(const VectorField& v, const Discretization& d) {
  ScalarField out = partial(v[0], 0, d, Parity::Odd);
  for (int a = 1; a < v.dim(); ++a) out += partial(v[a], a, d, Parity::Odd);
  return out;
}

VectorField div_tensor(const SymTensorField& t, const Discretization& d) {
  VectorField out(t.grid());
  for (int i = 0; i < t.dim(); ++i) {
    ScalarField row = partial(t(i, 0), 0, d, Parity::Even);
    for (int j = 1; j < t.dim(); ++j) row += partial(t(i, j), j, d, Parity::Even);
    out[i] = std::move(row);
  }
  return out;
}

ScalarField laplacian(const ScalarField& f, const Discretization& d) { return div(grad(f, d), d); }

}  // namespace nsk
