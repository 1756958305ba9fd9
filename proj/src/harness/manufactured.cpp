#include "nsk/harness/manufactured.hpp"

#include <cmath>
#include <numbers>

#include "nsk/errors.hpp"

namespace nsk::harness {
namespace {

constexpr double kDensityPulse = 0.1;

Jet c_hat_jet(const Jet& rho, const FluidParams& p) {
  const double ref = p.c_hat_convention == CHatConvention::Consistent ? p.tau2 : p.tau1;
  return (Jet(1.0) / rho - Jet(ref)) / Jet(p.delta_tau());
}

// W'(c) for the quartic well w0 c^2 (1 - c)^2, recovered from the configured potential.
Jet well_slope_jet(const Jet& c, double w0) { return Jet(2.0 * w0) * c * (Jet(1.0) - c) * (Jet(1.0) - Jet(2.0) * c); }

}  // namespace

ManufacturedSolution::ManufacturedSolution(InitialField initial, const Grid& domain, const FluidParams& params,
                                           ModelKind kind, std::optional<MobilitySpec> mobility)
    : initial_(std::move(initial)), domain_(domain), params_(params), kind_(kind), mobility_(mobility) {
  if (domain.dim() != 1) throw ConfigError("manufactured solutions are one-dimensional");
  if (kind == ModelKind::NSK2 && !mobility_) throw ConfigError("NSK2 needs a mobility");
  if (kind == ModelKind::NSK2 && domain.periodic()) {
    // Periodicity of the non-local potential fixes the constant in gamma phi' = C - u.
    const int samples = 8192;
    const double len = domain.length(0);
    double su = 0.0, s1 = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double x = len * i / samples;
      const double g = gamma_at(x);
      su += initial_.u(x)[0] / g;
      s1 += 1.0 / g;
    }
    flux_shift_ = su / s1;
  }
}

double ManufacturedSolution::gamma_at(double x) const {
  const MobilitySpec& m = *mobility_;
  if (!m.variable) return m.mean;
  return m.mean + m.amplitude * std::sin(2.0 * std::numbers::pi * m.wavenumber * x / domain_.length(0));
}

double ManufacturedSolution::rho(double x, double t) const {
  return initial_.rho(x) * (1.0 + kDensityPulse * std::sin(t));
}

double ManufacturedSolution::u(double x, double t) const { return initial_.u(x)[0] * std::cos(t); }

std::pair<double, double> ManufacturedSolution::exact_rhs(double x, double t) const {
  const FluidParams& p = params_;
  const Jet X = Jet::variable(x);
  const Jet rho = initial_.rho(X) * Jet(1.0 + kDensityPulse * std::sin(t));
  const Jet u = initial_.u(X)[0] * Jet(std::cos(t));
  const Jet m = rho * u;
  const Jet drho = rho.d();
  const Jet du = u.d();

  const double ds = p.delta_star();
  const Jet kappa = Jet(ds) / (rho * rho * rho);
  // R'(rho) = theta W'(c_hat) c_hat'(rho), with c_hat' = -1 / (dtau rho^2).
  const double w0 = p.well.second(0.0) / 2.0;
  const Jet r_prime = Jet(p.theta) * well_slope_jet(c_hat_jet(rho, p), w0) * (Jet(-1.0 / p.delta_tau()) / (rho * rho));
  const Jet rho5 = rho * rho * rho * rho * rho;
  const Jet psi_rho = r_prime - Jet(2.0 * ds) * drho * drho / rho5;
  const Jet korteweg = -(rho * rho * psi_rho) + rho * (kappa * drho).d() - kappa * drho * drho;

  Jet flux;
  double extra = 0.0;
  if (kind_ == ModelKind::NSK1) {
    const Jet lambda_star = Jet(p.lambda) + Jet(ds / std::sqrt(p.delta)) / rho;
    flux = (Jet(2.0 * p.mu_shear) + lambda_star) * du + korteweg - m * u;
  } else {
    flux = Jet(2.0 * p.mu_shear + p.lambda) * du + korteweg - m * u;
    // gamma phi' = C - u for phi = Lambda^{-1}(u').
    const double phi_prime = (flux_shift_ - u.value()) / gamma_at(x);
    extra = p.theta / (p.delta_tau() * p.delta_tau()) * phi_prime;
  }
  return {-m.d().value(), flux.d().value() + extra};
}

MixtureState ManufacturedSolution::exact_state(const Grid& grid, double t) const {
  ScalarField r = ScalarField::sample(grid, [&](double x, double) { return rho(x, t); });
  VectorField v(grid);
  v[0] = ScalarField::sample(grid, [&](double x, double) { return u(x, t); });
  return make_state(std::move(r), v, t);
}

Rates ManufacturedSolution::exact_rates(const Grid& grid, double t) const {
  Rates out{ScalarField(grid), VectorField(grid)};
  for (int i = 0; i < grid.n(0); ++i) {
    const auto [dr, dm] = exact_rhs(grid.coord(0, i), t);
    out.drho_dt[i] = dr;
    out.dm_dt[0][i] = dm;
  }
  return out;
}

Rates ManufacturedSolution::forcing(const Grid& grid, double t) const {
  Rates out = exact_rates(grid, t);
  for (int i = 0; i < grid.n(0); ++i) {
    const double x = grid.coord(0, i);
    const double r0 = initial_.rho(x);
    const double u0 = initial_.u(x)[0];
    const double rho_t = r0 * kDensityPulse * std::cos(t);
    const double u_t = -u0 * std::sin(t);
    const double m_t = rho_t * u(x, t) + rho(x, t) * u_t;
    out.drho_dt[i] = rho_t - out.drho_dt[i];
    out.dm_dt[0][i] = m_t - out.dm_dt[0][i];
  }
  return out;
}

}  // namespace nsk::harness
