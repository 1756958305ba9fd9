#pragma once

#include <functional>
#include <string>
#include <utility>

#include "nsk/field.hpp"

namespace nsk {

/// Which closure turns density into concentration.
///
/// `Consistent` inverts 1/rho = c*tau1 + (1 - c)*tau2, giving
/// c = (1/rho - tau2)/dtau. `Literal` is the variant (1/rho - tau1)/dtau,
/// which differs by the constant -1. Both share c' and c~ - rho*c~'.
enum class CHatConvention { Consistent, Literal };

std::string to_string(CHatConvention c);
CHatConvention c_hat_convention_from_string(const std::string& s);

/// Bulk free-energy density W(c) with its first two derivatives.
struct BulkPotential {
  std::function<double(double)> value;
  std::function<double(double)> first;
  std::function<double(double)> second;

  /// W(c) = w0 c^2 (1 - c)^2.
  static BulkPotential quartic(double w0);
};

struct FluidParams {
  double tau1 = 1.0;
  double tau2 = 0.5;
  double theta = 1.0;
  double delta = 1e-2;
  double mu_shear = 1e-2;
  double lambda = 0.0;
  double gamma = 1.0;
  CHatConvention c_hat_convention = CHatConvention::Consistent;
  BulkPotential well = BulkPotential::quartic(1.0);
  /// Relative widening of the pure-phase density interval that is accepted without a warning.
  double density_margin = 0.5;

  /// Throws ConfigError unless the parameters are admissible in `dim` space dimensions.
  void validate(int dim) const;

  double delta_tau() const noexcept { return tau1 - tau2; }
  /// theta * delta / dtau^2.
  double delta_star() const noexcept { return theta * delta / (delta_tau() * delta_tau()); }

  /// Densities outside (lo, hi) put the concentration well outside [0, 1].
  std::pair<double, double> density_window() const noexcept;
};

// Extended Gibbs energy and its partial derivatives (gradient part held fixed).
double gibbs(double p, double c, double grad_c_sq, const FluidParams& params);
double gibbs_p(double c, const FluidParams& params);
double gibbs_c(double p, double c, const FluidParams& params);

double c_hat(double rho, const FluidParams& params);
/// -1 / (dtau rho^2), the same for both conventions.
double c_hat_prime(double rho, const FluidParams& params);
double c_tilde(double rho, const FluidParams& params);
double c_tilde_prime(double rho, const FluidParams& params);

/// theta * W(c_hat(rho)).
double R(double rho, const FluidParams& params);
double R_prime(double rho, const FluidParams& params);
double R_second(double rho, const FluidParams& params);

/// delta_* / rho^3.
double kappa(double rho, const FluidParams& params);

double psi(double rho, double grad_rho_sq, const FluidParams& params);
/// Partial derivative of psi in rho at fixed |grad rho|^2.
double psi_rho(double rho, double grad_rho_sq, const FluidParams& params);

/// lambda + delta_* / (sqrt(delta) rho).
double lambda_star(double rho, const FluidParams& params);

/// rho^2 R'(rho), the homogeneous part of the reconstructed pressure.
double thermo_pressure(double rho, const FluidParams& params);
/// d(rho^2 R')/d rho; a surrogate squared sound speed (may be negative in the spinodal region).
double thermo_pressure_prime(double rho, const FluidParams& params);

// Pointwise lifts to fields. Each checks rho > 0 at every node.
ScalarField c_hat(const ScalarField& rho, const FluidParams& params);
ScalarField c_tilde(const ScalarField& rho, const FluidParams& params);
ScalarField R_prime(const ScalarField& rho, const FluidParams& params);
ScalarField kappa(const ScalarField& rho, const FluidParams& params);
ScalarField lambda_star(const ScalarField& rho, const FluidParams& params);
ScalarField psi_rho(const ScalarField& rho, const ScalarField& grad_rho_sq, const FluidParams& params);
ScalarField thermo_pressure(const ScalarField& rho, const FluidParams& params);

/// Throws DomainError at the first node with rho <= 0.
void require_positive_density(const ScalarField& rho);

/// Logs a warning record when rho leaves the admissible density window.
/// Returns true if every node is inside the window.
bool check_density_window(const ScalarField& rho, const FluidParams& params);

}  // namespace nsk
