#include "nsk/elliptic.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>

#include "fourier.hpp"
#include "nsk/errors.hpp"
#include "nsk/log.hpp"

namespace nsk {
namespace {

using detail::Spectrum;

double norm2(std::span<const double> v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

double inner(const ScalarField& a, const ScalarField& b) {
  const auto x = a.values();
  const auto y = b.values();
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

void remove_mean(ScalarField& f) { f += -mean(f); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// -div(gamma grad phi), compact three-point form per axis.
ScalarField apply_lambda_fd2(const ScalarField& gamma, const ScalarField& phi) {
  const Grid& g = phi.grid();
  ScalarField out(g);
  for (int axis = 0; axis < g.dim(); ++axis) {
    const int n = g.n(axis);
    const double inv_h2 = 1.0 / (g.h(axis) * g.h(axis));
    const int lines = g.dim() > 1 ? g.n(1 - axis) : 1;
    for (int line = 0; line < lines; ++line) {
      auto at = [&](int k) { return axis == 0 ? g.index(k, line) : g.index(line, k); };
      // Flux through the face between node k and k+1 (k = -1 .. n-1).
      auto flux = [&](int k) {
        if (!g.periodic() && (k < 0 || k >= n - 1)) return 0.0;
        const std::size_t a = at((k + n) % n);
        const std::size_t b = at((k + 1) % n);
        return 0.5 * (gamma[a] + gamma[b]) * (phi[b] - phi[a]);
      };
      for (int k = 0; k < n; ++k) out[at(k)] -= (flux(k) - flux(k - 1)) * inv_h2;
    }
  }
  return out;
}

ScalarField jacobi_diagonal_fd2(const ScalarField& gamma) {
  const Grid& g = gamma.grid();
  ScalarField diag(g);
  for (int axis = 0; axis < g.dim(); ++axis) {
    const int n = g.n(axis);
    const double inv_h2 = 1.0 / (g.h(axis) * g.h(axis));
    const int lines = g.dim() > 1 ? g.n(1 - axis) : 1;
    for (int line = 0; line < lines; ++line) {
      auto at = [&](int k) { return axis == 0 ? g.index(k, line) : g.index(line, k); };
      auto face = [&](int k) {
        if (!g.periodic() && (k < 0 || k >= n - 1)) return 0.0;
        return 0.5 * (gamma[at((k + n) % n)] + gamma[at((k + 1) % n)]);
      };
      for (int k = 0; k < n; ++k) diag[at(k)] += (face(k) + face(k - 1)) * inv_h2;
    }
  }
  return diag;
}

// Preconditioned conjugate gradients restricted to mean-zero fields.
ScalarField pcg_mean_zero(const std::function<ScalarField(const ScalarField&)>& apply,
                          const std::optional<ScalarField>& diag, const ScalarField& f,
                          const EllipticOptions& opts, SolveStats* stats) {
  const Grid& g = f.grid();
  ScalarField b = f;
  remove_mean(b);
  ScalarField x(g);
  const double fnorm = norm2(f.values());
  if (fnorm == 0.0) {
    if (stats) *stats = {};
    return x;
  }

  auto precondition = [&](const ScalarField& r) {
    ScalarField z = diag ? r / *diag : r;
    remove_mean(z);
    return z;
  };

  const int max_iter = opts.max_iter_factor * static_cast<int>(g.size());
  const double target = opts.rel_tol * opts.target_fraction;
  int it = 0;
  ScalarField r = b;
  double rel = norm2(r.values()) / fnorm;
  // The recursive residual drifts from the true one near round-off, so each
  // cycle restarts from b - A x.
  for (int cycle = 0; cycle < 8 && rel > target && it < max_iter; ++cycle) {
    const double rel_start = rel;
    ScalarField z = precondition(r);
    ScalarField p = z;
    double rz = inner(r, z);
    double rec = rel;
    while (rec > target && it < max_iter) {
      const ScalarField ap = apply(p);
      const double pap = inner(p, ap);
      if (!(pap > 0.0)) break;
      const double alpha = rz / pap;
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
      }
      ++it;
      rec = norm2(r.values()) / fnorm;
      if (rec <= target) break;
      z = precondition(r);
      const double rz_new = inner(r, z);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
    }
    r = b - apply(x);
    remove_mean(r);
    rel = norm2(r.values()) / fnorm;
    if (rel > 0.5 * rel_start) break;
  }

  log_event(LogLevel::Debug, "lambda_solve",
            {{"nodes", static_cast<double>(g.size())}, {"iterations", static_cast<double>(it)},
             {"relative_residual", rel}});
  if (stats) *stats = {it, rel};
  if (rel > opts.rel_tol) {
    log_event(LogLevel::Error, "lambda_solve_failed",
              {{"iterations", static_cast<double>(it)}, {"relative_residual", rel}});
    throw SolverError("elliptic solve did not converge (relative residual " + sci(rel) +
                          " after " + std::to_string(it) + " iterations)",
                      it, rel);
  }
  remove_mean(x);
  return x;
}

}  // namespace

Mobility Mobility::constant(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("mobility must be positive");
  Mobility m;
  m.constant_ = gamma;
  return m;
}

Mobility Mobility::field(ScalarField gamma) {
  if (!gamma.all_finite() || !(gamma.min() > 0.0))
    throw ConfigError("mobility field must be strictly positive and finite");
  Mobility m;
  m.field_ = std::move(gamma);
  return m;
}

ScalarField Mobility::on(const Grid& grid) const {
  if (is_constant()) return ScalarField(grid, constant_);
  if (!(field_->grid() == grid)) throw ConfigError("mobility field lives on a different grid");
  return *field_;
}

double Mobility::min_value() const noexcept { return is_constant() ? constant_ : field_->min(); }

Mobility Mobility::scaled(double c) const {
  if (!(c > 0.0)) throw ConfigError("mobility scale must be positive");
  if (is_constant()) return constant(c * constant_);
  return field(c * *field_);
}

ScalarField apply_lambda(const Mobility& gamma, const ScalarField& phi, const Discretization& d) {
  require_compatible(phi.grid(), d);
  if (d.scheme == Scheme::Spectral) {
    if (gamma.is_constant()) return (-gamma.constant_value()) * div(grad(phi, d), d);
    return -div(gamma.on(phi.grid()) * grad(phi, d), d);
  }
  return apply_lambda_fd2(gamma.on(phi.grid()), phi);
}

void require_zero_mean(const ScalarField& f, double tol) {
  const double m = mean(f);
  const double scale = f.max_abs();
  if (std::abs(m) > tol * scale) {
    log_event(LogLevel::Error, "incompatible_rhs", {{"mean", m}, {"max_abs", scale}});
    throw CompatibilityError("right-hand side has nonzero mean " + sci(m) +
                             "; the zero-mean solvability condition fails");
  }
}

ScalarField invert_lambda_periodic(double gamma, const ScalarField& f, const Discretization& d,
                                   const EllipticOptions& opts) {
  const Grid& g = f.grid();
  if (!g.periodic()) throw ConfigError("periodic inverse requires a periodic grid");
  if (!(gamma > 0.0)) throw ConfigError("mobility must be positive");
  require_zero_mean(f, opts.compat_tol);
  if (f.max_abs() == 0.0) return ScalarField(g);

  Spectrum s = Spectrum::forward(g, f.values());
  for (int i = 0; i < g.n(0); ++i) {
    for (int j = 0; j < g.n(1); ++j) {
      double symbol = 0.0;
      for (int axis = 0; axis < g.dim(); ++axis) {
        const int n = g.n(axis);
        const int bin = axis == 0 ? i : j;
        const double k = 2.0 * std::numbers::pi / g.length(axis) * Spectrum::mode(n, bin);
        if (d.scheme == Scheme::Spectral) {
          if (!Spectrum::is_nyquist(n, bin)) symbol += k * k;
        } else {
          const double h = g.h(axis);
          const double sn = std::sin(0.5 * k * h);
          symbol += 4.0 * sn * sn / (h * h);
        }
      }
      const std::size_t idx = g.index(i, j);
      s[idx] = symbol > 0.0 ? s[idx] / (gamma * symbol) : 0.0;
    }
  }
  ScalarField phi(g, s.inverse_real());
  remove_mean(phi);
  return phi;
}

ScalarField invert_lambda_neumann_1d(const Mobility& gamma, const ScalarField& f,
                                     const EllipticOptions& opts, SolveStats* stats) {
  const Grid& g = f.grid();
  if (g.boundary() != Boundary::BoundedNeumann1D)
    throw ConfigError("Neumann inverse requires a BoundedNeumann1D grid");
  require_zero_mean(f, opts.compat_tol);
  const ScalarField gam = gamma.on(g);
  return pcg_mean_zero([&](const ScalarField& x) { return apply_lambda_fd2(gam, x); },
                       jacobi_diagonal_fd2(gam), f, opts, stats);
}

ScalarField invert_lambda_freespace_1d(double gamma, const ScalarField& f, const EllipticOptions& opts) {
  const Grid& g = f.grid();
  if (g.dim() != 1) throw ConfigError("free-space inverse is one-dimensional");
  if (!(gamma > 0.0)) throw ConfigError("mobility must be positive");
  const double scale = f.max_abs();
  const int n = g.n(0);
  if (scale > 0.0 && (std::abs(f[0]) > 1e-13 * scale || std::abs(f[n - 1]) > 1e-13 * scale))
    throw DomainError("free-space inverse needs f to vanish at the window edges");
  require_zero_mean(f, opts.compat_tol);

  const double h = g.h(0);
  ScalarField phi(g);
  for (int i = 0; i < n; ++i) {
    const double xi = g.coord(0, i);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += std::abs(xi - g.coord(0, j)) * f[j];
    phi[i] = -0.5 * h * acc / gamma;
  }
  remove_mean(phi);
  return phi;
}

ScalarField invert_lambda(const Mobility& gamma, const ScalarField& f, const Discretization& d,
                          const EllipticOptions& opts, SolveStats* stats) {
  const Grid& g = f.grid();
  require_compatible(g, d);
  if (!g.periodic()) return invert_lambda_neumann_1d(gamma, f, opts, stats);
  if (gamma.is_constant()) {
    if (stats) *stats = {};
    return invert_lambda_periodic(gamma.constant_value(), f, d, opts);
  }
  require_zero_mean(f, opts.compat_tol);
  const ScalarField gam = gamma.on(g);
  std::optional<ScalarField> diag;
  if (d.scheme == Scheme::FD2) diag = jacobi_diagonal_fd2(gam);
  return pcg_mean_zero([&](const ScalarField& x) { return apply_lambda(gamma, x, d); }, diag, f, opts,
                       stats);
}

}  // namespace nsk
