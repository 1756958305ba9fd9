#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nsk/calculus.hpp"
#include "nsk/errors.hpp"

using namespace nsk;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double fd2_error(int n) {
  const Grid g = Grid::periodic_1d(n, kTwoPi);
  const ScalarField f = ScalarField::sample(g, [](double x, double) { return std::exp(std::sin(x)); });
  const ScalarField exact =
      ScalarField::sample(g, [](double x, double) { return std::cos(x) * std::exp(std::sin(x)); });
  return max_abs_diff(grad(f, {Scheme::FD2})[0], exact);
}
}  // namespace

TEST_CASE("spectral derivative of a trigonometric polynomial is exact") {
  const Grid g = Grid::periodic_1d(32, kTwoPi);
  const ScalarField f = ScalarField::sample(g, [](double x, double) { return std::sin(3.0 * x) + 0.5 * std::cos(x); });
  const ScalarField df = ScalarField::sample(g, [](double x, double) { return 3.0 * std::cos(3.0 * x) - 0.5 * std::sin(x); });
  CHECK(max_abs_diff(partial(f, 0, {Scheme::Spectral}), df) < 1e-12);
}

TEST_CASE("spectral derivative of an analytic function converges to round-off") {
  const Grid g = Grid::periodic_1d(64, kTwoPi);
  const ScalarField f = ScalarField::sample(g, [](double x, double) { return std::exp(std::sin(x)); });
  const ScalarField exact =
      ScalarField::sample(g, [](double x, double) { return std::cos(x) * std::exp(std::sin(x)); });
  CHECK(max_abs_diff(grad(f, {Scheme::Spectral})[0], exact) < 1e-12);
}

TEST_CASE("centred differences are second order") {
  const double order = std::log2(fd2_error(64) / fd2_error(128));
  CHECK(order == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("two-dimensional derivatives act along the right axis") {
  const Grid g = Grid::periodic_2d(64, 64, kTwoPi, kTwoPi);
  const ScalarField f = ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::cos(2.0 * y); });
  for (Scheme s : {Scheme::Spectral, Scheme::FD2}) {
    const VectorField gr = grad(f, {s});
    const ScalarField dx = ScalarField::sample(g, [](double x, double y) { return std::cos(x) * std::cos(2.0 * y); });
    const ScalarField dy = ScalarField::sample(g, [](double x, double y) { return -2.0 * std::sin(x) * std::sin(2.0 * y); });
    const double tol = s == Scheme::Spectral ? 1e-12 : 0.05;
    CHECK(max_abs_diff(gr[0], dx) < tol);
    CHECK(max_abs_diff(gr[1], dy) < tol);
  }
}

TEST_CASE("laplacian equals div of grad") {
  const Grid g = Grid::periodic_2d(16, 16, kTwoPi, kTwoPi);
  const ScalarField f = ScalarField::sample(g, [](double x, double y) { return std::exp(std::sin(x) + 0.3 * std::cos(y)); });
  for (Scheme s : {Scheme::Spectral, Scheme::FD2}) {
    const Discretization d{s};
    CHECK(max_abs_diff(laplacian(f, d), div(grad(f, d), d)) < 1e-13);
  }
}

TEST_CASE("bounded grid uses even reflection for scalars and odd for vector components") {
  const double len = 1.0;
  const Grid g = Grid::neumann_1d(128, len);
  const double pi = std::numbers::pi;
  // cos has zero slope at the walls; sin vanishes there.
  const ScalarField f = ScalarField::sample(g, [&](double x, double) { return std::cos(pi * x); });
  const ScalarField df = ScalarField::sample(g, [&](double x, double) { return -pi * std::sin(pi * x); });
  const Discretization d{Scheme::FD2};
  CHECK(max_abs_diff(grad(f, d)[0], df) < 1e-3);

  VectorField v(g);
  v[0] = ScalarField::sample(g, [&](double x, double) { return std::sin(pi * x); });
  const ScalarField dv = ScalarField::sample(g, [&](double x, double) { return pi * std::cos(pi * x); });
  CHECK(max_abs_diff(div(v, d), dv) < 1e-3);
}

TEST_CASE("spectral differentiation is refused on the bounded grid") {
  const Grid g = Grid::neumann_1d(16, 1.0);
  CHECK_THROWS_AS(grad(ScalarField(g, 1.0), {Scheme::Spectral}), ConfigError);
}

TEST_CASE("dealiasing removes the top third of the spectrum") {
  const Grid g = Grid::periodic_1d(24, kTwoPi);
  const ScalarField f = ScalarField::sample(g, [](double x, double) { return std::sin(x) + std::sin(10.0 * x); });
  const ScalarField df = partial(f, 0, {Scheme::Spectral, true});
  const ScalarField exact = ScalarField::sample(g, [](double x, double) { return std::cos(x); });
  CHECK(max_abs_diff(df, exact) < 1e-12);
}

TEST_CASE("scheme names parse") {
  CHECK(scheme_from_string("fd2") == Scheme::FD2);
  CHECK(scheme_from_string("Spectral") == Scheme::Spectral);
  CHECK_THROWS_AS(scheme_from_string("fd4"), ConfigError);
}
