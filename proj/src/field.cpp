#include "nsk/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nsk/errors.hpp"

namespace nsk {
namespace {

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw ConfigError("fields live on different grids");
}

}  // namespace

ScalarField::ScalarField(const Grid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ConfigError("value count does not match grid");
}

ScalarField ScalarField::sample(const Grid& grid, const std::function<double(double, double)>& f) {
  ScalarField out(grid);
  for (int i = 0; i < grid.n(0); ++i) {
    const double x = grid.coord(0, i);
    for (int j = 0; j < grid.n(1); ++j) {
      const double y = grid.dim() > 1 ? grid.coord(1, j) : 0.0;
      out[grid.index(i, j)] = f(x, y);
    }
  }
  return out;
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

bool ScalarField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField ScalarField::map(const std::function<double(double)>& f) const {
  ScalarField out(grid_);
  std::transform(values_.begin(), values_.end(), out.values_.begin(), f);
  return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) noexcept {
  for (double& v : values_) v *= s;
  return *this;
}

ScalarField& ScalarField::operator+=(double s) noexcept {
  for (double& v : values_) v += s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator+(ScalarField a, double s) { return a += s; }
ScalarField operator-(ScalarField a, double s) { return a += -s; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }

ScalarField operator/(double s, const ScalarField& a) {
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s / a[i];
  return out;
}

ScalarField operator/(ScalarField a, double s) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] /= s;
  return a;
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] / b[i];
  return out;
}

double mean(const ScalarField& f) {
  const auto v = f.values();
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---------------------------------------------------------------------------

VectorField::VectorField(const Grid& grid, double fill)
    : components_(static_cast<std::size_t>(grid.dim()), ScalarField(grid, fill)) {}

VectorField::VectorField(std::vector<ScalarField> components) : components_(std::move(components)) {
  if (components_.empty()) throw ConfigError("vector field needs at least one component");
  const Grid& g = components_.front().grid();
  if (static_cast<int>(components_.size()) != g.dim())
    throw ConfigError("vector field component count must equal grid dimension");
  for (const auto& c : components_) require_same_grid(g, c.grid());
}

double VectorField::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& c : components_) m = std::max(m, c.max_abs());
  return m;
}

bool VectorField::all_finite() const noexcept {
  return std::all_of(components_.begin(), components_.end(),
                     [](const ScalarField& c) { return c.all_finite(); });
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (int a = 0; a < dim(); ++a) components_[a] += o[a];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  for (int a = 0; a < dim(); ++a) components_[a] -= o[a];
  return *this;
}

VectorField& VectorField::operator*=(double s) noexcept {
  for (auto& c : components_) c *= s;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

VectorField operator*(const ScalarField& s, VectorField v) {
  for (int a = 0; a < v.dim(); ++a) v[a] *= s;
  return v;
}

VectorField operator/(VectorField v, const ScalarField& s) {
  for (int a = 0; a < v.dim(); ++a) v[a] = v[a] / s;
  return v;
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  ScalarField out = a[0] * b[0];
  for (int k = 1; k < a.dim(); ++k) out += a[k] * b[k];
  return out;
}

double max_abs_diff(const VectorField& a, const VectorField& b) {
  double m = 0.0;
  for (int k = 0; k < a.dim(); ++k) m = std::max(m, max_abs_diff(a[k], b[k]));
  return m;
}

// ---------------------------------------------------------------------------

SymTensorField::SymTensorField(const Grid& grid, double fill)
    : dim_(grid.dim()),
      components_(static_cast<std::size_t>(component_count(grid.dim())), ScalarField(grid, fill)) {}

SymTensorField SymTensorField::isotropic(const ScalarField& s) {
  SymTensorField t(s.grid());
  for (int i = 0; i < t.dim(); ++i) t(i, i) = s;
  return t;
}

SymTensorField SymTensorField::outer(const VectorField& a, const VectorField& b) {
  SymTensorField t(a.grid());
  for (int i = 0; i < t.dim(); ++i) {
    for (int j = i; j < t.dim(); ++j) {
      if (i == j) {
        t(i, j) = a[i] * b[i];
      } else {
        ScalarField s = a[i] * b[j] + a[j] * b[i];
        t(i, j) = 0.5 * std::move(s);
      }
    }
  }
  return t;
}

ScalarField SymTensorField::trace() const {
  ScalarField tr = (*this)(0, 0);
  for (int i = 1; i < dim_; ++i) tr += (*this)(i, i);
  return tr;
}

double SymTensorField::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& c : components_) m = std::max(m, c.max_abs());
  return m;
}

SymTensorField& SymTensorField::operator+=(const SymTensorField& o) {
  for (std::size_t k = 0; k < components_.size(); ++k) components_[k] += o.components_[k];
  return *this;
}

SymTensorField& SymTensorField::operator-=(const SymTensorField& o) {
  for (std::size_t k = 0; k < components_.size(); ++k) components_[k] -= o.components_[k];
  return *this;
}

SymTensorField& SymTensorField::operator*=(double s) noexcept {
  for (auto& c : components_) c *= s;
  return *this;
}

SymTensorField& SymTensorField::add_isotropic(const ScalarField& s) {
  for (int i = 0; i < dim_; ++i) (*this)(i, i) += s;
  return *this;
}

SymTensorField operator+(SymTensorField a, const SymTensorField& b) { return a += b; }
SymTensorField operator-(SymTensorField a, const SymTensorField& b) { return a -= b; }
SymTensorField operator*(double s, SymTensorField a) { return a *= s; }

SymTensorField operator*(const ScalarField& s, SymTensorField t) {
  for (int i = 0; i < t.dim(); ++i)
    for (int j = i; j < t.dim(); ++j) t(i, j) *= s;
  return t;
}

double max_abs_diff(const SymTensorField& a, const SymTensorField& b) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) m = std::max(m, max_abs_diff(a(i, j), b(i, j)));
  return m;
}

}  // namespace nsk
