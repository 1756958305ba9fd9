#pragma once

#include <optional>

#include "nsk/harness/config.hpp"
#include "nsk/harness/initial_conditions.hpp"
#include "nsk/harness/jet.hpp"
#include "nsk/reduced.hpp"

namespace nsk::harness {

/// Exact reduced right-hand sides of one-dimensional analytic states,
/// evaluated with Taylor jets instead of grids, and the forcing that turns a
/// prescribed space-time pair into a solution of the forced reduced system:
///   rho*(x, t) = rho0(x) (1 + 0.1 sin t),   u*(x, t) = u0(x) cos t.
class ManufacturedSolution {
 public:
  ManufacturedSolution(InitialField initial, const Grid& domain, const FluidParams& params, ModelKind kind,
                       std::optional<MobilitySpec> mobility);

  double rho(double x, double t) const;
  double u(double x, double t) const;

  /// (d rho/dt, d m/dt) of the reduced model at (x, t), exact up to round-off.
  std::pair<double, double> exact_rhs(double x, double t) const;

  MixtureState exact_state(const Grid& grid, double t) const;
  Rates exact_rates(const Grid& grid, double t) const;
  /// Time derivative of the manufactured pair minus the exact reduced RHS.
  Rates forcing(const Grid& grid, double t) const;

 private:
  double gamma_at(double x) const;

  InitialField initial_;
  Grid domain_;
  FluidParams params_;
  ModelKind kind_;
  std::optional<MobilitySpec> mobility_;
  double flux_shift_ = 0.0;
};

}  // namespace nsk::harness
