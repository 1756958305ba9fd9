#include "nsk/tensors.hpp"

namespace nsk {

SymTensorField strain(const VectorField& u, const Discretization& d) {
  const Grid& g = u.grid();
  const int dim = g.dim();
  // du[i][j] = d u_i / d x_j
  std::vector<std::vector<ScalarField>> du(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) du[i].push_back(partial(u[i], j, d, Parity::Odd));

  SymTensorField out(g);
  for (int i = 0; i < dim; ++i) {
    out(i, i) = du[i][i];
    for (int j = i + 1; j < dim; ++j) out(i, j) = 0.5 * (du[i][j] + du[j][i]);
  }
  return out;
}

SymTensorField cauchy_stress(const VectorField& u, const FluidParams& params, const Discretization& d) {
  SymTensorField s = 2.0 * params.mu_shear * strain(u, d);
  s.add_isotropic(params.lambda * div(u, d));
  return s;
}

SymTensorField phase_tensor(const ScalarField& c, const ScalarField& p, const ScalarField& rho,
                            const FluidParams& params, const Discretization& d) {
  require_positive_density(rho);
  const VectorField gc = grad(c, d);
  SymTensorField t = (-params.theta * params.delta) * (rho * SymTensorField::outer(gc, gc));
  t.add_isotropic(-p);
  return t;
}

SymTensorField korteweg_tensor(const ScalarField& rho, const FluidParams& params, const Discretization& d) {
  require_positive_density(rho);
  const VectorField grho = grad(rho, d);
  const ScalarField grho_sq = dot(grho, grho);
  const ScalarField kap = kappa(rho, params);
  const ScalarField capillary = rho * div(kap * grho, d);
  const ScalarField iso = capillary - rho * rho * psi_rho(rho, grho_sq, params);

  SymTensorField k = -1.0 * (kap * SymTensorField::outer(grho, grho));
  k.add_isotropic(iso);
  return k;
}

SymTensorField stress_delta(const VectorField& u, const ScalarField& rho, const FluidParams& params,
                            const Discretization& d) {
  SymTensorField s = 2.0 * params.mu_shear * strain(u, d);
  s.add_isotropic(lambda_star(rho, params) * div(u, d));
  return s;
}

SymTensorField stress_gamma(const VectorField& u, const ScalarField& nonlocal_term,
                            const FluidParams& params, const Discretization& d) {
  SymTensorField s = cauchy_stress(u, params, d);
  const double dt = params.delta_tau();
  s.add_isotropic((params.theta / (dt * dt)) * nonlocal_term);
  return s;
}

double korteweg_identity_residual(const ScalarField& rho, const FluidParams& params, const Discretization& d) {
  require_positive_density(rho);
  const VectorField grho = grad(rho, d);
  const ScalarField kap = kappa(rho, params);

  const ScalarField inner = div(rho * rho * kap * grho, d);
  const ScalarField lhs_scalar = inner / rho;
  const ScalarField rhs_scalar = rho * div(kap * grho, d) + 2.0 * kap * dot(grho, grho);

  const VectorField lhs = div_tensor(SymTensorField::isotropic(lhs_scalar), d);
  const VectorField rhs = grad(rhs_scalar, d);
  return max_abs_diff(lhs, rhs);
}

}  // namespace nsk
