#pragma once

#include <optional>

#include "nsk/calculus.hpp"
#include "nsk/field.hpp"

namespace nsk {

/// Strictly positive mobility, either a constant or a node field.
class Mobility {
 public:
  static Mobility constant(double gamma);
  static Mobility field(ScalarField gamma);

  bool is_constant() const noexcept { return !field_.has_value(); }
  double constant_value() const noexcept { return constant_; }
  const ScalarField& field_values() const { return *field_; }
  /// Node values on `grid` (a constant is broadcast; a field must live on `grid`).
  ScalarField on(const Grid& grid) const;
  double min_value() const noexcept;
  /// Mobility multiplied by c > 0.
  Mobility scaled(double c) const;

 private:
  Mobility() = default;
  double constant_ = 1.0;
  std::optional<ScalarField> field_;
};

struct EllipticOptions {
  /// Accepted relative residual ||r||_2 / ||f||_2 of iterative solves.
  double rel_tol = 1e-10;
  /// Iterations continue, with restarts from the true residual, until this
  /// fraction of rel_tol is reached or progress stalls.
  double target_fraction = 1e-2;
  /// Iteration cap as a multiple of the node count.
  int max_iter_factor = 10;
  /// Accepted |mean f| relative to ||f||_inf.
  double compat_tol = 1e-10;
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Lambda_gamma phi = -div(gamma grad phi).
///
/// Spectral: composition of the spectral divergence and gradient.
/// FD2: compact conservative three-point form with arithmetic face mobility;
/// on BoundedNeumann1D grids the wall fluxes vanish.
ScalarField apply_lambda(const Mobility& gamma, const ScalarField& phi, const Discretization& d);

/// Throws CompatibilityError when |mean f| > tol * ||f||_inf.
void require_zero_mean(const ScalarField& f, double tol);

/// Fourier-diagonal inverse on a periodic grid with constant mobility. The
/// symbol matches apply_lambda for the given scheme; mean and unresolvable
/// modes of the result are zero.
ScalarField invert_lambda_periodic(double gamma, const ScalarField& f, const Discretization& d = {},
                                   const EllipticOptions& opts = {});

/// Inverse on the bounded 1-D grid under zero-flux walls and the zero-mean
/// normalisation, by Jacobi-preconditioned conjugate gradients on the
/// mean-zero subspace.
ScalarField invert_lambda_neumann_1d(const Mobility& gamma, const ScalarField& f,
                                     const EllipticOptions& opts = {}, SolveStats* stats = nullptr);

/// Poisson-kernel inverse phi = -(1/gamma) ∫ |x - y|/2 f(y) dy by midpoint
/// quadrature. `f` must vanish at both window ends. The result is shifted to
/// zero mean over the window.
ScalarField invert_lambda_freespace_1d(double gamma, const ScalarField& f, const EllipticOptions& opts = {});

/// Chooses the inverse appropriate for the grid and mobility: Fourier for
/// periodic constant mobility, conjugate gradients otherwise.
ScalarField invert_lambda(const Mobility& gamma, const ScalarField& f, const Discretization& d,
                          const EllipticOptions& opts = {}, SolveStats* stats = nullptr);

}  // namespace nsk
