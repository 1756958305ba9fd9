#pragma once

#include "nsk/calculus.hpp"
#include "nsk/constitutive.hpp"
#include "nsk/field.hpp"

namespace nsk {

/// Symmetric velocity gradient D(u) = (grad u + grad u^T) / 2.
SymTensorField strain(const VectorField& u, const Discretization& d);

/// Newtonian stress S(u) = 2 mu D(u) + lambda (div u) I.
SymTensorField cauchy_stress(const VectorField& u, const FluidParams& params, const Discretization& d);

/// Non-hydrodynamic tensor P = -p I - theta delta rho grad c ⊗ grad c.
SymTensorField phase_tensor(const ScalarField& c, const ScalarField& p, const ScalarField& rho,
                            const FluidParams& params, const Discretization& d);

/// Korteweg tensor in Dunn-Serrin form:
/// K = (-rho^2 psi_rho + rho div(kappa grad rho)) I - kappa grad rho ⊗ grad rho,
/// where psi_rho is taken at fixed |grad rho|^2.
SymTensorField korteweg_tensor(const ScalarField& rho, const FluidParams& params, const Discretization& d);

/// Augmented local stress with bulk viscosity lambda_*(rho).
SymTensorField stress_delta(const VectorField& u, const ScalarField& rho, const FluidParams& params,
                            const Discretization& d);

/// Non-local stress S(u) + theta/dtau^2 * nonlocal_term * I, where
/// `nonlocal_term` is a precomputed inverse elliptic solve applied to div u.
SymTensorField stress_gamma(const VectorField& u, const ScalarField& nonlocal_term,
                            const FluidParams& params, const Discretization& d);

/// Sup-norm of div((1/rho) div(rho^2 kappa grad rho) I) - grad(rho div(kappa grad rho) + 2 kappa |grad rho|^2).
/// Vanishes in the continuum; at the discrete level it measures the product-rule truncation error.
double korteweg_identity_residual(const ScalarField& rho, const FluidParams& params, const Discretization& d);

}  // namespace nsk
