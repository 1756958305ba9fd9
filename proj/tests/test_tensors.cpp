#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nsk/tensors.hpp"

using namespace nsk;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

ScalarField sine_density(const Grid& g) {
  return ScalarField::sample(g, [](double x, double) { return 1.0 + 0.1 * std::sin(x); });
}
}  // namespace

TEST_CASE("Korteweg tensor matches the symbolic reference value") {
  const Grid g = Grid::periodic_1d(128, kTwoPi);
  const SymTensorField k = korteweg_tensor(sine_density(g), FluidParams{}, {Scheme::Spectral});
  CHECK(k(0, 0)[14] == doctest::Approx(-0.32264932212682892).epsilon(1e-12));
}

TEST_CASE("Korteweg rewriting identity holds spectrally") {
  const Grid g = Grid::periodic_1d(128, kTwoPi);
  CHECK(korteweg_identity_residual(sine_density(g), FluidParams{}, {Scheme::Spectral}) < 1e-8);
}

TEST_CASE("Korteweg rewriting identity converges at second order with centred differences") {
  const FluidParams p;
  const double e1 = korteweg_identity_residual(sine_density(Grid::periodic_1d(128, kTwoPi)), p, {Scheme::FD2});
  const double e2 = korteweg_identity_residual(sine_density(Grid::periodic_1d(256, kTwoPi)), p, {Scheme::FD2});
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("Korteweg tensor is isotropic-free for a constant density") {
  const Grid g = Grid::periodic_2d(16, 16, kTwoPi, kTwoPi);
  const FluidParams p;
  const SymTensorField k = korteweg_tensor(ScalarField(g, 1.5), p, {Scheme::Spectral});
  CHECK(k(0, 1).max_abs() == 0.0);
  CHECK(k(0, 0)[5] == doctest::Approx(-thermo_pressure(1.5, p)).epsilon(1e-14));
}

TEST_CASE("strain and Cauchy stress of a shear flow") {
  const Grid g = Grid::periodic_2d(32, 32, kTwoPi, kTwoPi);
  VectorField u(g);
  u[0] = ScalarField::sample(g, [](double, double y) { return std::sin(y); });
  const Discretization d{Scheme::Spectral};
  const SymTensorField e = strain(u, d);
  const ScalarField half_cos = ScalarField::sample(g, [](double, double y) { return 0.5 * std::cos(y); });
  CHECK(max_abs_diff(e(0, 1), half_cos) < 1e-12);
  CHECK(e(0, 0).max_abs() < 1e-12);
  FluidParams p;
  p.lambda = 0.3;
  const SymTensorField s = cauchy_stress(u, p, d);
  CHECK(max_abs_diff(s(0, 1), 2.0 * p.mu_shear * half_cos) < 1e-12);
  CHECK(s(1, 1).max_abs() < 1e-12);
}

TEST_CASE("phase tensor of a uniform concentration is pure pressure") {
  const Grid g = Grid::periodic_1d(16, kTwoPi);
  const SymTensorField t =
      phase_tensor(ScalarField(g, 0.3), ScalarField(g, 2.0), ScalarField(g, 1.2), FluidParams{}, {Scheme::Spectral});
  CHECK(t(0, 0)[3] == doctest::Approx(-2.0));
}

TEST_CASE("local and non-local viscous stresses") {
  const Grid g = Grid::periodic_1d(64, kTwoPi);
  const Discretization d{Scheme::Spectral};
  const FluidParams p;
  VectorField u(g);
  u[0] = ScalarField::sample(g, [](double x, double) { return std::sin(x); });
  const ScalarField rho(g, 1.3);
  const ScalarField cosx = ScalarField::sample(g, [](double x, double) { return std::cos(x); });
  const SymTensorField sd = stress_delta(u, rho, p, d);
  CHECK(max_abs_diff(sd(0, 0), (2.0 * p.mu_shear + lambda_star(1.3, p)) * cosx) < 1e-12);
  const ScalarField nl(g, 0.25);
  const SymTensorField sg = stress_gamma(u, nl, p, d);
  const double scale = p.theta / (p.delta_tau() * p.delta_tau());
  CHECK(max_abs_diff(sg(0, 0), 2.0 * p.mu_shear * cosx + scale * 0.25) < 1e-12);
}
