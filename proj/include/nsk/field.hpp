#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "nsk/grid.hpp"

namespace nsk {

/// Real values at every node of a grid. Value type; all arithmetic is pointwise.
class ScalarField {
 public:
  explicit ScalarField(const Grid& grid, double fill = 0.0);
  ScalarField(const Grid& grid, std::vector<double> values);

  /// Samples `f(x, y)` at the grid nodes (y = 0 in 1-D).
  static ScalarField sample(const Grid& grid, const std::function<double(double, double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  double max_abs() const noexcept;
  double min() const noexcept;
  double max() const noexcept;
  bool all_finite() const noexcept;

  /// Applies `f` to every value, returning a new field.
  ScalarField map(const std::function<double(double)>& f) const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(const ScalarField& o);
  ScalarField& operator*=(double s) noexcept;
  ScalarField& operator+=(double s) noexcept;

 private:
  Grid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
ScalarField operator*(ScalarField a, double s);
ScalarField operator+(ScalarField a, double s);
ScalarField operator-(ScalarField a, double s);
ScalarField operator/(double s, const ScalarField& a);
ScalarField operator/(ScalarField a, double s);
ScalarField operator-(ScalarField a);

/// Grid average; the exact midpoint/trapezoid quadrature mean on uniform grids.
double mean(const ScalarField& f);
/// Sup-norm of a - b.
double max_abs_diff(const ScalarField& a, const ScalarField& b);

/// `dim` Cartesian components on one grid.
class VectorField {
 public:
  explicit VectorField(const Grid& grid, double fill = 0.0);
  explicit VectorField(std::vector<ScalarField> components);

  const Grid& grid() const noexcept { return components_.front().grid(); }
  int dim() const noexcept { return static_cast<int>(components_.size()); }
  ScalarField& operator[](int axis) noexcept { return components_[axis]; }
  const ScalarField& operator[](int axis) const noexcept { return components_[axis]; }

  double max_abs() const noexcept;
  bool all_finite() const noexcept;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s) noexcept;

 private:
  std::vector<ScalarField> components_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);
/// Pointwise scaling of every component by a scalar field.
VectorField operator*(const ScalarField& s, VectorField v);
/// Pointwise division of every component by a scalar field.
VectorField operator/(VectorField v, const ScalarField& s);

/// Pointwise Euclidean inner product.
ScalarField dot(const VectorField& a, const VectorField& b);
double max_abs_diff(const VectorField& a, const VectorField& b);

/// Symmetric rank-2 tensor field; only the upper triangle is stored.
class SymTensorField {
 public:
  explicit SymTensorField(const Grid& grid, double fill = 0.0);

  /// s * I.
  static SymTensorField isotropic(const ScalarField& s);
  /// Symmetrised outer product (a ⊗ b + b ⊗ a) / 2; exactly a ⊗ a when a == b.
  static SymTensorField outer(const VectorField& a, const VectorField& b);

  const Grid& grid() const noexcept { return components_.front().grid(); }
  int dim() const noexcept { return dim_; }
  static constexpr int component_count(int dim) { return dim * (dim + 1) / 2; }

  ScalarField& operator()(int i, int j) noexcept { return components_[slot(i, j)]; }
  const ScalarField& operator()(int i, int j) const noexcept { return components_[slot(i, j)]; }

  /// Pointwise trace.
  ScalarField trace() const;
  double max_abs() const noexcept;

  SymTensorField& operator+=(const SymTensorField& o);
  SymTensorField& operator-=(const SymTensorField& o);
  SymTensorField& operator*=(double s) noexcept;
  /// Adds s * I.
  SymTensorField& add_isotropic(const ScalarField& s);

 private:
  int slot(int i, int j) const noexcept {
    if (i > j) std::swap(i, j);
    return i * dim_ - i * (i - 1) / 2 + (j - i);
  }

  int dim_;
  std::vector<ScalarField> components_;
};

SymTensorField operator+(SymTensorField a, const SymTensorField& b);
SymTensorField operator-(SymTensorField a, const SymTensorField& b);
SymTensorField operator*(double s, SymTensorField a);
/// Pointwise scaling of every component by a scalar field.
SymTensorField operator*(const ScalarField& s, SymTensorField t);
double max_abs_diff(const SymTensorField& a, const SymTensorField& b);

}  // namespace nsk
