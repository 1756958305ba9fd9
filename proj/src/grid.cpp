#include "nsk/grid.hpp"

#include <cmath>
#include <sstream>

#include "nsk/errors.hpp"

namespace nsk {

std::string to_string(Boundary b) {
  return b == Boundary::Periodic ? "Periodic" : "BoundedNeumann1D";
}

Boundary boundary_from_string(const std::string& s) {
  if (s == "Periodic" || s == "periodic") return Boundary::Periodic;
  if (s == "BoundedNeumann1D" || s == "neumann" || s == "bounded_neumann_1d")
    return Boundary::BoundedNeumann1D;
  throw ConfigError("unknown boundary kind '" + s + "'");
}

Grid::Grid(int dim, std::array<int, 2> n, std::array<double, 2> length, Boundary boundary)
    : dim_(dim), n_(n), length_(length), boundary_(boundary) {
  if (dim != 1 && dim != 2) throw ConfigError("grid dimension must be 1 or 2");
  if (dim == 1) {
    n_[1] = 1;
    length_[1] = 1.0;
  }
  for (int a = 0; a < dim; ++a) {
    if (n_[a] < kMinCells)
      throw ConfigError("grid needs at least " + std::to_string(kMinCells) + " cells per axis");
    if (!(length_[a] > 0.0) || !std::isfinite(length_[a]))
      throw ConfigError("grid extent must be positive and finite");
  }
  if (boundary == Boundary::BoundedNeumann1D && dim != 1)
    throw ConfigError("BoundedNeumann1D is only available in one dimension");
}

Grid Grid::periodic_1d(int n, double length) {
  return Grid(1, {n, 1}, {length, 1.0}, Boundary::Periodic);
}

Grid Grid::periodic_2d(int nx, int ny, double lx, double ly) {
  return Grid(2, {nx, ny}, {lx, ly}, Boundary::Periodic);
}

Grid Grid::neumann_1d(int n, double length) {
  return Grid(1, {n, 1}, {length, 1.0}, Boundary::BoundedNeumann1D);
}

Grid Grid::refined(int factor) const {
  std::array<int, 2> n = n_;
  for (int a = 0; a < dim_; ++a) n[a] *= factor;
  return Grid(dim_, n, length_, boundary_);
}

Grid Grid::with_cells(int n) const {
  std::array<int, 2> cells = n_;
  for (int a = 0; a < dim_; ++a) cells[a] = n;
  return Grid(dim_, cells, length_, boundary_);
}

std::string Grid::header() const {
  std::ostringstream os;
  os.precision(17);
  os << "# grid dim=" << dim_ << " n=";
  for (int a = 0; a < dim_; ++a) os << (a ? "," : "") << n_[a];
  os << " length=";
  for (int a = 0; a < dim_; ++a) os << (a ? "," : "") << length_[a];
  os << " boundary=" << to_string(boundary_);
  return os.str();
}

}  // namespace nsk
