#include "nsk/reduced.hpp"

#include <cmath>

#include "nsk/errors.hpp"
#include "nsk/log.hpp"
#include "nsk/tensors.hpp"

namespace nsk {
namespace {

ScalarField pressure_nsch_from(const ScalarField& rho, const ScalarField& nonlocal,
                               const FluidParams& params, const Discretization& d) {
  const double dt = params.delta_tau();
  return local_pressure(rho, params, d) - (params.theta / (dt * dt)) * nonlocal;
}

ScalarField phase_flux_divergence(const ScalarField& rho, const ScalarField& c, const VectorField& u,
                                  const ScalarField& drho_dt, const FluidParams& params,
                                  const Discretization& d) {
  // d(rho c)/dt + div(rho c u) with d(rho c)/dt = c_tilde'(rho) d(rho)/dt.
  ScalarField dt_rho_c(rho.grid());
  for (std::size_t i = 0; i < rho.size(); ++i) dt_rho_c[i] = c_tilde_prime(rho[i], params) * drho_dt[i];
  return dt_rho_c + div((rho * c) * u, d);
}

}  // namespace

MixtureState make_state(ScalarField rho, const VectorField& u, double t) {
  VectorField m = rho * u;
  return MixtureState{std::move(rho), std::move(m), t};
}

void validate_state(const MixtureState& s, double rho_floor) {
  if (!(s.m.grid() == s.rho.grid())) throw StateError("density and momentum grids differ", 0, 0.0);
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    if (!std::isfinite(s.rho[i]) || !(s.rho[i] > rho_floor)) {
      log_event(LogLevel::Error, "density_floor",
                {{"node", static_cast<double>(i)}, {"rho", s.rho[i]}, {"floor", rho_floor}, {"t", s.t}});
      throw StateError("density " + std::to_string(s.rho[i]) + " at node " + std::to_string(i) +
                           " is not above the floor " + std::to_string(rho_floor),
                       i, s.rho[i]);
    }
  }
  for (int a = 0; a < s.m.dim(); ++a) {
    for (std::size_t i = 0; i < s.m[a].size(); ++i) {
      if (!std::isfinite(s.m[a][i]))
        throw StateError("non-finite momentum at node " + std::to_string(i), i, s.m[a][i]);
    }
  }
}

VectorField velocity(const MixtureState& s, double rho_floor) {
  validate_state(s, rho_floor);
  return s.m / s.rho;
}

std::string to_string(ModelKind k) { return k == ModelKind::NSK1 ? "nsk1" : "nsk2"; }

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "nsk1" || s == "NSK1") return ModelKind::NSK1;
  if (s == "nsk2" || s == "NSK2") return ModelKind::NSK2;
  throw ConfigError("unknown model kind '" + s + "'");
}

void ModelSetup::validate(const Grid& grid) const {
  params.validate(grid.dim());
  require_compatible(grid, disc);
  if (kind == ModelKind::NSK2) {
    if (!mobility) throw ConfigError("NSK2 needs a mobility");
    if (!mobility->is_constant() && !(mobility->field_values().grid() == grid))
      throw ConfigError("mobility field lives on a different grid");
  }
  if (!(rho_floor >= 0.0)) throw ConfigError("density floor must be non-negative");
}

const Mobility& ModelSetup::require_mobility() const {
  if (!mobility) throw ConfigError("NSK2 needs a mobility");
  return *mobility;
}

ScalarField local_pressure(const ScalarField& rho, const FluidParams& params, const Discretization& d) {
  const ScalarField capillary = div((params.delta_star() / rho) * grad(rho, d), d) / rho;
  return thermo_pressure(rho, params) - capillary;
}

ScalarField reconstruct_pressure_nsac(const MixtureState& s, const ModelSetup& setup) {
  const VectorField u = velocity(s, setup.rho_floor);
  const FluidParams& prm = setup.params;
  const ScalarField viscous =
      div(u, setup.disc) * s.rho.map([&](double r) { return prm.delta_star() / (std::sqrt(prm.delta) * r); });
  return local_pressure(s.rho, prm, setup.disc) - viscous;
}

ScalarField nonlocal_divergence_term(const VectorField& u, const ModelSetup& setup) {
  ScalarField f = div(u, setup.disc);
  const double drift = mean(f);
  if (drift != 0.0) {
    log_event(LogLevel::Debug, "divergence_mean_projected", {{"mean", drift}, {"max_abs", f.max_abs()}});
    f += -drift;
  }
  return invert_lambda(setup.require_mobility(), f, setup.disc, setup.elliptic);
}

ScalarField reconstruct_pressure_nsch(const MixtureState& s, const ModelSetup& setup) {
  const VectorField u = velocity(s, setup.rho_floor);
  return pressure_nsch_from(s.rho, nonlocal_divergence_term(u, setup), setup.params, setup.disc);
}

ReconstructedFields reconstruct_fields(const MixtureState& s, const ModelSetup& setup) {
  const FluidParams& prm = setup.params;
  const ScalarField c = c_hat(s.rho, prm);
  const ScalarField wprime = c.map(prm.well.first);
  const double ratio = prm.delta_tau() / prm.theta;
  if (setup.kind == ModelKind::NSK1) {
    ScalarField p = reconstruct_pressure_nsac(s, setup);
    ScalarField q = -(ratio * p) - wprime;
    return {c, std::move(p), std::move(q)};
  }
  ScalarField p = reconstruct_pressure_nsch(s, setup);
  const ScalarField gradient_part = div((prm.delta * s.rho) * grad(c, setup.disc), setup.disc) / s.rho;
  ScalarField mu = ratio * p + wprime - gradient_part;
  return {c, std::move(p), std::move(mu)};
}

Rates rhs_nsk1(const MixtureState& s, const ModelSetup& setup) {
  const VectorField u = velocity(s, setup.rho_floor);
  SymTensorField flux = stress_delta(u, s.rho, setup.params, setup.disc);
  flux += korteweg_tensor(s.rho, setup.params, setup.disc);
  flux -= SymTensorField::outer(s.m, u);
  return {-div(s.m, setup.disc), div_tensor(flux, setup.disc)};
}

Rates rhs_nsk2(const MixtureState& s, const ModelSetup& setup) {
  const VectorField u = velocity(s, setup.rho_floor);
  SymTensorField flux = stress_gamma(u, nonlocal_divergence_term(u, setup), setup.params, setup.disc);
  flux += korteweg_tensor(s.rho, setup.params, setup.disc);
  flux -= SymTensorField::outer(s.m, u);
  return {-div(s.m, setup.disc), div_tensor(flux, setup.disc)};
}

Rates rhs(const MixtureState& s, const ModelSetup& setup) {
  return setup.kind == ModelKind::NSK1 ? rhs_nsk1(s, setup) : rhs_nsk2(s, setup);
}

ResidualReport residual_nsac(const MixtureState& s, const ModelSetup& setup) {
  ModelSetup nsac = setup;
  nsac.kind = ModelKind::NSK1;
  const Discretization& d = nsac.disc;
  const FluidParams& prm = nsac.params;
  const Rates rates = rhs_nsk1(s, nsac);
  const VectorField u = velocity(s, nsac.rho_floor);
  const ReconstructedFields rf = reconstruct_fields(s, nsac);

  ResidualReport out;
  out.mass = (rates.drho_dt + div(s.m, d)).max_abs();

  SymTensorField unreduced = cauchy_stress(u, prm, d) + phase_tensor(rf.c, rf.p, s.rho, prm, d);
  unreduced -= SymTensorField::outer(s.m, u);
  out.momentum = (rates.dm_dt - div_tensor(unreduced, d)).max_abs();

  const ScalarField lhs = phase_flux_divergence(s.rho, rf.c, u, rates.drho_dt, prm, d);
  const ScalarField source =
      (1.0 / std::sqrt(prm.delta)) * (s.rho * rf.q_or_mu + div((prm.delta * s.rho) * grad(rf.c, d), d));
  out.phase = (lhs - source).max_abs();
  return out;
}

ResidualReport residual_nsch(const MixtureState& s, const ModelSetup& setup) {
  ModelSetup nsch = setup;
  nsch.kind = ModelKind::NSK2;
  const Discretization& d = nsch.disc;
  const FluidParams& prm = nsch.params;
  const Rates rates = rhs_nsk2(s, nsch);
  const VectorField u = velocity(s, nsch.rho_floor);
  const ReconstructedFields rf = reconstruct_fields(s, nsch);

  ResidualReport out;
  out.mass = (rates.drho_dt + div(s.m, d)).max_abs();

  SymTensorField unreduced = cauchy_stress(u, prm, d) + phase_tensor(rf.c, rf.p, s.rho, prm, d);
  unreduced -= SymTensorField::outer(s.m, u);
  out.momentum = (rates.dm_dt - div_tensor(unreduced, d)).max_abs();

  // div(gamma grad mu) = -Lambda_gamma mu
  const ScalarField lhs = phase_flux_divergence(s.rho, rf.c, u, rates.drho_dt, prm, d);
  out.phase = (lhs + apply_lambda(nsch.require_mobility(), rf.q_or_mu, d)).max_abs();
  return out;
}

double momentum_equivalence_gap(const MixtureState& s, const ModelSetup& setup) {
  const Discretization& d = setup.disc;
  const FluidParams& prm = setup.params;
  const VectorField u = velocity(s, setup.rho_floor);
  const ScalarField c = c_hat(s.rho, prm);

  SymTensorField reduced = korteweg_tensor(s.rho, prm, d);
  ScalarField p(s.grid());
  if (setup.kind == ModelKind::NSK1) {
    p = reconstruct_pressure_nsac(s, setup);
    reduced += stress_delta(u, s.rho, prm, d);
  } else {
    const ScalarField nonlocal = nonlocal_divergence_term(u, setup);
    p = pressure_nsch_from(s.rho, nonlocal, prm, d);
    reduced += stress_gamma(u, nonlocal, prm, d);
  }
  const SymTensorField unreduced = cauchy_stress(u, prm, d) + phase_tensor(c, p, s.rho, prm, d);
  return max_abs_diff(div_tensor(unreduced, d), div_tensor(reduced, d));
}

}  // namespace nsk
