#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace nsk {

enum class Boundary { Periodic, BoundedNeumann1D };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Uniform structured grid in one or two dimensions.
///
/// Periodic grids place nodes at x_i = i*h; the bounded Neumann grid is
/// cell-centred, x_i = (i + 1/2)*h, so that even reflection about the walls
/// maps nodes onto nodes. In every case h = length / n.
class Grid {
 public:
  static constexpr int kMinCells = 8;

  Grid(int dim, std::array<int, 2> n, std::array<double, 2> length, Boundary boundary);

  static Grid periodic_1d(int n, double length);
  static Grid periodic_2d(int nx, int ny, double lx, double ly);
  static Grid neumann_1d(int n, double length);

  int dim() const noexcept { return dim_; }
  int n(int axis) const noexcept { return n_[axis]; }
  double length(int axis) const noexcept { return length_[axis]; }
  double h(int axis) const noexcept { return length_[axis] / n_[axis]; }
  Boundary boundary() const noexcept { return boundary_; }
  bool periodic() const noexcept { return boundary_ == Boundary::Periodic; }

  /// Total node count.
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_[0]) * n_[1]; }

  /// Axis-major flat index: axis 0 is the slowest-varying.
  std::size_t index(int i, int j = 0) const noexcept {
    return static_cast<std::size_t>(i) * n_[1] + j;
  }

  double coord(int axis, int i) const noexcept {
    return periodic() ? i * h(axis) : (i + 0.5) * h(axis);
  }

  /// Same grid with every axis count multiplied by `factor`.
  Grid refined(int factor) const;
  /// Same grid with axis counts replaced by `n` (along every active axis).
  Grid with_cells(int n) const;

  /// The `# grid ...` header line used by snapshot files (no trailing newline).
  std::string header() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int dim_;
  std::array<int, 2> n_;
  std::array<double, 2> length_;
  Boundary boundary_;
};

}  // namespace nsk
