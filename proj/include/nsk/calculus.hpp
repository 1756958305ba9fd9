#pragma once

#include <string>

#include "nsk/field.hpp"

namespace nsk {

enum class Scheme { Spectral, FD2 };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

/// Choice of discrete derivative. Spectral differentiation drops the Nyquist
/// mode; `dealias` additionally applies the 2/3-rule filter before
/// differentiating.
struct Discretization {
  Scheme scheme = Scheme::Spectral;
  bool dealias = false;
};

/// Reflection parity used for ghost values on BoundedNeumann1D grids.
/// Scalars (and tensor components) reflect evenly, so their normal
/// derivative vanishes; vector components reflect oddly, so the normal
/// component vanishes at the wall.
enum class Parity { Even, Odd };

/// Throws ConfigError when `d` cannot be used on `grid` (Spectral on a bounded grid).
void require_compatible(const Grid& grid, const Discretization& d);

/// First derivative along `axis`. Second-order centred differences for FD2.
ScalarField partial(const ScalarField& f, int axis, const Discretization& d,
                    Parity parity = Parity::Even);

VectorField grad(const ScalarField& f, const Discretization& d);
ScalarField div(const VectorField& v, const Discretization& d);
/// Row-wise divergence (∇·T)_i = Σ_j ∂_j T_ij.
VectorField div_tensor(const SymTensorField& t, const Discretization& d);
/// div(grad f) for both schemes.
ScalarField laplacian(const ScalarField& f, const Discretization& d);

}  // namespace nsk
