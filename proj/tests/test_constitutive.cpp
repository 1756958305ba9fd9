#include <cmath>
#include <random>

#include "doctest.h"
#include "nsk/constitutive.hpp"
#include "nsk/errors.hpp"

using namespace nsk;

namespace {
std::vector<double> sampled_densities(const FluidParams& p, int count) {
  const auto [lo, hi] = p.density_window();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(count);
  for (auto& r : out) r = dist(rng);
  return out;
}

double central(const std::function<double(double)>& f, double x) {
  const double h = 1e-5 * std::max(1.0, std::abs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1e-12, std::abs(b)); }
}  // namespace

TEST_CASE("reference values at rho = 1.3") {
  const FluidParams p;
  CHECK(R_prime(1.3, p) == doctest::Approx(0.045247284489607938).epsilon(1e-13));
  CHECK(R_second(1.3, p) == doctest::Approx(-1.4452612481662316).epsilon(1e-13));
  CHECK(kappa(1.3, p) == doctest::Approx(0.018206645425580337).epsilon(1e-14));
  CHECK(lambda_star(1.3, p) == doctest::Approx(0.30769230769230769).epsilon(1e-14));
  CHECK(p.delta_star() == doctest::Approx(0.04));
}

TEST_CASE("pure phases map to c = 0 and c = 1") {
  const FluidParams p;
  CHECK(c_hat(1.0 / p.tau2, p) == doctest::Approx(0.0));
  CHECK(c_hat(1.0 / p.tau1, p) == doctest::Approx(1.0));
}

TEST_CASE("linear identity of rho c holds on sampled densities") {
  const FluidParams p;
  double worst = 0.0;
  for (double r : sampled_densities(p, 1000))
    worst = std::max(worst, std::abs(c_tilde(r, p) - r * c_tilde_prime(r, p) - 1.0 / p.delta_tau()));
  CHECK(worst < 1e-14);
}

TEST_CASE("closure G_p(c_hat(rho)) = 1/rho under the consistent convention") {
  const FluidParams p;
  double worst = 0.0;
  for (double r : sampled_densities(p, 1000))
    worst = std::max(worst, std::abs(gibbs_p(c_hat(r, p), p) - 1.0 / r));
  CHECK(worst < 1e-14);
}

TEST_CASE("the literal convention breaks the closure") {
  FluidParams p;
  p.c_hat_convention = CHatConvention::Literal;
  CHECK(std::abs(gibbs_p(c_hat(1.5, p), p) - 1.0 / 1.5) > 0.1);
}

TEST_CASE("thermodynamic pressure equals the scaled well slope") {
  const FluidParams p;
  double worst = 0.0;
  for (double r : sampled_densities(p, 1000)) {
    const double lhs = r * r * R_prime(r, p);
    const double rhs = -(p.theta / p.delta_tau()) * p.well.first(c_hat(r, p));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("analytic derivatives agree with finite differences") {
  const FluidParams p;
  for (double r : sampled_densities(p, 50)) {
    CHECK(rel_err(c_hat_prime(r, p), central([&](double x) { return c_hat(x, p); }, r)) < 1e-6);
    CHECK(rel_err(c_tilde_prime(r, p), central([&](double x) { return c_tilde(x, p); }, r)) < 1e-6);
    CHECK(rel_err(R_prime(r, p), central([&](double x) { return R(x, p); }, r)) < 1e-6);
    CHECK(rel_err(R_second(r, p), central([&](double x) { return R_prime(x, p); }, r)) < 1e-6);
    CHECK(rel_err(thermo_pressure_prime(r, p), central([&](double x) { return thermo_pressure(x, p); }, r)) < 1e-6);
    const double g2 = 0.37;
    CHECK(rel_err(psi_rho(r, g2, p), central([&](double x) { return psi(x, g2, p); }, r)) < 1e-6);
    const double c = c_hat(r, p);
    CHECK(rel_err(p.well.first(c), central(p.well.value, c)) < 1e-6);
    CHECK(rel_err(p.well.second(c), central(p.well.first, c)) < 1e-6);
    CHECK(rel_err(gibbs_c(0.8, c, p), central([&](double x) { return gibbs(0.8, x, 0.0, p); }, c)) < 1e-6);
    CHECK(rel_err(gibbs_p(c, p), central([&](double x) { return gibbs(x, c, 0.0, p); }, 0.8)) < 1e-6);
  }
}

TEST_CASE("parameter validation") {
  FluidParams p;
  p.tau2 = p.tau1;
  CHECK_THROWS_AS(p.validate(1), ConfigError);
  FluidParams q;
  q.lambda = -1.0;
  CHECK_THROWS_AS(q.validate(1), ConfigError);
  FluidParams r;
  r.lambda = -0.015;
  CHECK_NOTHROW(r.validate(1));
  CHECK_THROWS_AS(r.validate(2), ConfigError);
  CHECK_THROWS_AS(c_hat(0.0, FluidParams{}), DomainError);
  CHECK_THROWS_AS(c_hat_convention_from_string("bogus"), ConfigError);
}
