#include "nsk/constitutive.hpp"

#include <algorithm>
#include <cmath>

#include "nsk/errors.hpp"
#include "nsk/log.hpp"

namespace nsk {
namespace {

void require_positive(double rho) {
  if (!(rho > 0.0)) throw DomainError("density must be positive, got " + std::to_string(rho));
}

ScalarField lift(const ScalarField& rho, double (*f)(double, const FluidParams&),
                 const FluidParams& params) {
  require_positive_density(rho);
  ScalarField out(rho.grid());
  for (std::size_t i = 0; i < rho.size(); ++i) out[i] = f(rho[i], params);
  return out;
}

}  // namespace

std::string to_string(CHatConvention c) {
  return c == CHatConvention::Consistent ? "consistent" : "literal";
}

CHatConvention c_hat_convention_from_string(const std::string& s) {
  if (s == "consistent" || s == "Consistent") return CHatConvention::Consistent;
  if (s == "literal" || s == "Literal") return CHatConvention::Literal;
  throw ConfigError("unknown c_hat convention '" + s + "'");
}

BulkPotential BulkPotential::quartic(double w0) {
  if (!(w0 >= 0.0)) throw ConfigError("double-well scale must be non-negative");
  return {
      [w0](double c) { return w0 * c * c * (1.0 - c) * (1.0 - c); },
      [w0](double c) { return 2.0 * w0 * c * (1.0 - c) * (1.0 - 2.0 * c); },
      [w0](double c) { return w0 * (2.0 - 12.0 * c + 12.0 * c * c); },
  };
}

void FluidParams::validate(int dim) const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(tau1) || !positive(tau2)) throw ConfigError("specific volumes must be positive");
  if (tau1 == tau2) throw ConfigError("specific volumes tau1 and tau2 must differ");
  if (!positive(theta)) throw ConfigError("temperature must be positive");
  if (!positive(delta)) throw ConfigError("capillarity scale delta must be positive");
  if (!(mu_shear >= 0.0)) throw ConfigError("shear viscosity must be non-negative");
  if (!std::isfinite(lambda) || lambda + 2.0 * mu_shear / dim < 0.0)
    throw ConfigError("bulk viscosity violates lambda + 2 mu / dim >= 0");
  if (!positive(gamma)) throw ConfigError("mobility must be positive");
  if (!well.value || !well.first || !well.second) throw ConfigError("bulk potential is incomplete");
  if (!(density_margin >= 0.0)) throw ConfigError("density margin must be non-negative");
}

std::pair<double, double> FluidParams::density_window() const noexcept {
  const double r1 = 1.0 / tau1;
  const double r2 = 1.0 / tau2;
  return {std::min(r1, r2) * (1.0 - density_margin), std::max(r1, r2) * (1.0 + density_margin)};
}

double gibbs(double p, double c, double grad_c_sq, const FluidParams& params) {
  return gibbs_p(c, params) * p +
         params.theta * (params.well.value(c) + 0.5 * params.delta * grad_c_sq);
}

double gibbs_p(double c, const FluidParams& params) {
  return c * params.tau1 + (1.0 - c) * params.tau2;
}

double gibbs_c(double p, double c, const FluidParams& params) {
  return params.delta_tau() * p + params.theta * params.well.first(c);
}

double c_hat(double rho, const FluidParams& params) {
  require_positive(rho);
  const double ref = params.c_hat_convention == CHatConvention::Consistent ? params.tau2 : params.tau1;
  return (1.0 / rho - ref) / params.delta_tau();
}

double c_hat_prime(double rho, const FluidParams& params) {
  require_positive(rho);
  return -1.0 / (params.delta_tau() * rho * rho);
}

double c_tilde(double rho, const FluidParams& params) {
  require_positive(rho);
  const double ref = params.c_hat_convention == CHatConvention::Consistent ? params.tau2 : params.tau1;
  return (1.0 - ref * rho) / params.delta_tau();
}

double c_tilde_prime(double rho, const FluidParams& params) {
  require_positive(rho);
  const double ref = params.c_hat_convention == CHatConvention::Consistent ? params.tau2 : params.tau1;
  return -ref / params.delta_tau();
}

double R(double rho, const FluidParams& params) {
  return params.theta * params.well.value(c_hat(rho, params));
}

double R_prime(double rho, const FluidParams& params) {
  return params.theta * params.well.first(c_hat(rho, params)) * c_hat_prime(rho, params);
}

double R_second(double rho, const FluidParams& params) {
  const double c = c_hat(rho, params);
  const double cp = c_hat_prime(rho, params);
  // c_hat'' = 2 / (dtau rho^3)
  const double cpp = 2.0 / (params.delta_tau() * rho * rho * rho);
  return params.theta * (params.well.second(c) * cp * cp + params.well.first(c) * cpp);
}

double kappa(double rho, const FluidParams& params) {
  require_positive(rho);
  return params.delta_star() / (rho * rho * rho);
}

double psi(double rho, double grad_rho_sq, const FluidParams& params) {
  return R(rho, params) + kappa(rho, params) / (2.0 * rho) * grad_rho_sq;
}

double psi_rho(double rho, double grad_rho_sq, const FluidParams& params) {
  const double r5 = rho * rho * rho * rho * rho;
  return R_prime(rho, params) - 2.0 * params.delta_star() / r5 * grad_rho_sq;
}

double lambda_star(double rho, const FluidParams& params) {
  require_positive(rho);
  return params.lambda + params.delta_star() / (std::sqrt(params.delta) * rho);
}

double thermo_pressure(double rho, const FluidParams& params) {
  return rho * rho * R_prime(rho, params);
}

double thermo_pressure_prime(double rho, const FluidParams& params) {
  return 2.0 * rho * R_prime(rho, params) + rho * rho * R_second(rho, params);
}

ScalarField c_hat(const ScalarField& rho, const FluidParams& params) {
  return lift(rho, static_cast<double (*)(double, const FluidParams&)>(&c_hat), params);
}

ScalarField c_tilde(const ScalarField& rho, const FluidParams& params) {
  return lift(rho, static_cast<double (*)(double, const FluidParams&)>(&c_tilde), params);
}

ScalarField R_prime(const ScalarField& rho, const FluidParams& params) {
  return lift(rho, static_cast<double (*)(double, const FluidParams&)>(&R_prime), params);
}

ScalarField kappa(const ScalarField& rho, const FluidParams& params) {
  return lift(rho, static_cast<double (*)(double, const FluidParams&)>(&kappa), params);
}

ScalarField lambda_star(const ScalarField& rho, const FluidParams& params) {
  return lift(rho, static_cast<double (*)(double, const FluidParams&)>(&lambda_star), params);
}

ScalarField thermo_pressure(const ScalarField& rho, const FluidParams& params) {
  return lift(rho, static_cast<double (*)(double, const FluidParams&)>(&thermo_pressure), params);
}

ScalarField psi_rho(const ScalarField& rho, const ScalarField& grad_rho_sq, const FluidParams& params) {
  require_positive_density(rho);
  ScalarField out(rho.grid());
  for (std::size_t i = 0; i < rho.size(); ++i) out[i] = psi_rho(rho[i], grad_rho_sq[i], params);
  return out;
}

void require_positive_density(const ScalarField& rho) {
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0))
      throw DomainError("density must be positive; node " + std::to_string(i) + " has " +
                        std::to_string(rho[i]));
  }
}

bool check_density_window(const ScalarField& rho, const FluidParams& params) {
  const auto [lo, hi] = params.density_window();
  const double rmin = rho.min();
  const double rmax = rho.max();
  if (rmin > lo && rmax < hi) return true;
  log_event(LogLevel::Warning, "density_outside_window",
            {{"rho_min", rmin}, {"rho_max", rmax}, {"window_lo", lo}, {"window_hi", hi}});
  return false;
}

}  // namespace nsk
