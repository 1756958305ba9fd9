#pragma once

#include <optional>
#include <string>

#include "nsk/calculus.hpp"
#include "nsk/constitutive.hpp"
#include "nsk/elliptic.hpp"
#include "nsk/field.hpp"

namespace nsk {

inline constexpr double kDefaultDensityFloor = 1e-8;

/// Unknowns of the reduced systems: density and momentum density at time t.
struct MixtureState {
  ScalarField rho;
  VectorField m;
  double t = 0.0;

  const Grid& grid() const noexcept { return rho.grid(); }
};

/// Builds a state from density and velocity (m = rho u).
MixtureState make_state(ScalarField rho, const VectorField& u, double t = 0.0);

/// u = m / rho; throws StateError if rho <= floor or any value is non-finite.
VectorField velocity(const MixtureState& s, double rho_floor = kDefaultDensityFloor);

/// Throws StateError on a floored density, a grid mismatch or a non-finite value.
void validate_state(const MixtureState& s, double rho_floor = kDefaultDensityFloor);

enum class ModelKind { NSK1, NSK2 };

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

/// Fields eliminated by the reduction, rebuilt from a reduced state.
struct ReconstructedFields {
  ScalarField c;
  ScalarField p;
  /// Production rate (NSK1) or chemical potential (NSK2).
  ScalarField q_or_mu;
};

struct Rates {
  ScalarField drho_dt;
  VectorField dm_dt;
};

/// Everything a model evaluation needs besides the state.
struct ModelSetup {
  FluidParams params;
  Discretization disc;
  ModelKind kind = ModelKind::NSK1;
  /// Required for NSK2; ignored for NSK1.
  std::optional<Mobility> mobility;
  double rho_floor = kDefaultDensityFloor;
  EllipticOptions elliptic;

  /// Throws ConfigError on an inconsistent setup for `grid`.
  void validate(const Grid& grid) const;
  const Mobility& require_mobility() const;
};

/// rho^2 R'(rho) - (1/rho) div((delta_*/rho) grad rho): the pressure part shared by both models.
ScalarField local_pressure(const ScalarField& rho, const FluidParams& params, const Discretization& d);

/// Pressure recovered from the Allen-Cahn balance:
/// p = -(delta_*/(sqrt(delta) rho)) div u + rho^2 R' - (1/rho) div((delta_*/rho) grad rho).
ScalarField reconstruct_pressure_nsac(const MixtureState& s, const ModelSetup& setup);

/// Pressure recovered from the Cahn-Hilliard balance:
/// p = -(theta/dtau^2) Lambda^{-1}(div u) + rho^2 R' - (1/rho) div((delta_*/rho) grad rho).
ScalarField reconstruct_pressure_nsch(const MixtureState& s, const ModelSetup& setup);

/// The non-local term Lambda_gamma^{-1}(div u). Mean drift of div u is
/// projected off (and logged) before the solve.
ScalarField nonlocal_divergence_term(const VectorField& u, const ModelSetup& setup);

/// c = c_hat(rho); p per model; q = -(dtau/theta) p - W'(c) for NSK1,
/// mu = (dtau/theta) p + W'(c) - (1/rho) div(delta rho grad c) for NSK2.
ReconstructedFields reconstruct_fields(const MixtureState& s, const ModelSetup& setup);

Rates rhs_nsk1(const MixtureState& s, const ModelSetup& setup);
Rates rhs_nsk2(const MixtureState& s, const ModelSetup& setup);
/// Dispatches on setup.kind.
Rates rhs(const MixtureState& s, const ModelSetup& setup);

/// Sup-norm residuals of the unreduced equations evaluated on a reduced state.
struct ResidualReport {
  double mass = 0.0;
  double momentum = 0.0;
  /// Allen-Cahn (NSK1) or Cahn-Hilliard (NSK2) residual.
  double phase = 0.0;
};

/// Evaluates the three NSAC equations with rates taken from rhs_nsk1.
ResidualReport residual_nsac(const MixtureState& s, const ModelSetup& setup);
/// Evaluates the three NSCH equations with rates taken from rhs_nsk2.
ResidualReport residual_nsch(const MixtureState& s, const ModelSetup& setup);

/// Sup-norm of div(S(u) + P(c)) - div(S_delta or S_gamma (u) + K(rho)), with c and p reconstructed.
double momentum_equivalence_gap(const MixtureState& s, const ModelSetup& setup);

}  // namespace nsk
