#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nsk/errors.hpp"
#include "nsk/reduced.hpp"
#include "nsk/tensors.hpp"

using namespace nsk;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

MixtureState reference_state(int n) {
  const Grid g = Grid::periodic_1d(n, kTwoPi);
  VectorField u(g);
  u[0] = ScalarField::sample(g, [](double x, double) { return 0.05 * std::cos(x); });
  return make_state(ScalarField::sample(g, [](double x, double) { return 1.0 + 0.1 * std::sin(x); }), u);
}

ModelSetup setup_for(ModelKind kind, Scheme scheme) {
  ModelSetup s;
  s.kind = kind;
  s.disc = {scheme};
  if (kind == ModelKind::NSK2) s.mobility = Mobility::constant(1.0);
  return s;
}

MixtureState smooth_2d(int n) {
  const Grid g = Grid::periodic_2d(n, n, kTwoPi, kTwoPi);
  VectorField u(g);
  u[0] = ScalarField::sample(g, [](double x, double y) { return 0.05 * std::sin(x) * std::cos(y); });
  u[1] = ScalarField::sample(g, [](double x, double y) { return 0.03 * std::cos(2.0 * x + y); });
  return make_state(
      ScalarField::sample(g, [](double x, double y) { return 1.5 + 0.2 * std::sin(x) * std::cos(2.0 * y); }), u);
}
}  // namespace

TEST_CASE("reduced right-hand sides match symbolic reference values") {
  const MixtureState s = reference_state(128);
  const Rates r1 = rhs(s, setup_for(ModelKind::NSK1, Scheme::Spectral));
  const Rates r2 = rhs(s, setup_for(ModelKind::NSK2, Scheme::Spectral));
  CHECK(r1.drho_dt[14] == doctest::Approx(0.030744212598101634).epsilon(1e-12));
  CHECK(r1.dm_dt[0][14] == doctest::Approx(-0.21570065295500128).epsilon(1e-11));
  CHECK(r2.dm_dt[0][14] == doctest::Approx(-0.35663206960712180).epsilon(1e-11));
}

TEST_CASE("reconstructed pressures match symbolic reference values") {
  const MixtureState s = reference_state(128);
  CHECK(reconstruct_pressure_nsac(s, setup_for(ModelKind::NSK1, Scheme::Spectral))[14] ==
        doctest::Approx(0.33438155157465872).epsilon(1e-12));
  CHECK(reconstruct_pressure_nsch(s, setup_for(ModelKind::NSK2, Scheme::Spectral))[14] ==
        doctest::Approx(0.44932923562479644).epsilon(1e-12));
  const ReconstructedFields f = reconstruct_fields(s, setup_for(ModelKind::NSK1, Scheme::Spectral));
  CHECK(f.c[14] == doctest::Approx(0.88069027217408612).epsilon(1e-14));
}

TEST_CASE("constant states are equilibria") {
  for (Scheme sc : {Scheme::Spectral, Scheme::FD2}) {
    for (ModelKind k : {ModelKind::NSK1, ModelKind::NSK2}) {
      const Grid g = Grid::periodic_2d(16, 16, 1.0, 1.0);
      const MixtureState s = make_state(ScalarField(g, 1.4), VectorField(g));
      const Rates r = rhs(s, setup_for(k, sc));
      CHECK(r.drho_dt.max_abs() == 0.0);
      CHECK(r.dm_dt.max_abs() < 1e-15);
    }
  }
  const Grid b = Grid::neumann_1d(32, 1.0);
  const Rates r = rhs(make_state(ScalarField(b, 1.4), VectorField(b)), setup_for(ModelKind::NSK2, Scheme::FD2));
  CHECK(r.dm_dt.max_abs() < 1e-15);
}

TEST_CASE("periodic rates have zero mean") {
  const MixtureState s = smooth_2d(32);
  for (Scheme sc : {Scheme::Spectral, Scheme::FD2}) {
    for (ModelKind k : {ModelKind::NSK1, ModelKind::NSK2}) {
      const Rates r = rhs(s, setup_for(k, sc));
      CHECK(std::abs(mean(r.drho_dt)) < 1e-12);
      CHECK(std::abs(mean(r.dm_dt[0])) < 1e-12);
      CHECK(std::abs(mean(r.dm_dt[1])) < 1e-12);
    }
  }
}

TEST_CASE("a uniform velocity shift only changes the advective flux") {
  const MixtureState s = reference_state(64);
  const ModelSetup setup = setup_for(ModelKind::NSK2, Scheme::Spectral);
  const VectorField u = velocity(s);
  VectorField shifted = u;
  shifted[0] += ScalarField(s.grid(), 0.3);
  const MixtureState t = make_state(s.rho, shifted);
  const Rates a = rhs(s, setup);
  const Rates b = rhs(t, setup);
  const Discretization d = setup.disc;
  const VectorField adv_a = div_tensor(SymTensorField::outer(s.m, u), d);
  const VectorField adv_b = div_tensor(SymTensorField::outer(t.m, shifted), d);
  CHECK(max_abs_diff(a.dm_dt + adv_a, b.dm_dt + adv_b) < 1e-12);
}

TEST_CASE("divergence-free flow at constant density gives identical models") {
  const Grid g = Grid::periodic_2d(32, 32, kTwoPi, kTwoPi);
  VectorField u(g);
  u[0] = ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::cos(y); });
  u[1] = ScalarField::sample(g, [](double x, double y) { return -std::cos(x) * std::sin(y); });
  const MixtureState s = make_state(ScalarField(g, 1.2), u);
  const Rates a = rhs(s, setup_for(ModelKind::NSK1, Scheme::Spectral));
  const Rates b = rhs(s, setup_for(ModelKind::NSK2, Scheme::Spectral));
  CHECK(max_abs_diff(a.dm_dt, b.dm_dt) < 1e-13);
}

TEST_CASE("reduction gap and phase residuals vanish spectrally") {
  const MixtureState s = reference_state(128);
  for (ModelKind k : {ModelKind::NSK1, ModelKind::NSK2}) {
    const ModelSetup setup = setup_for(k, Scheme::Spectral);
    CHECK(momentum_equivalence_gap(s, setup) < 1e-10);
    const ResidualReport r = k == ModelKind::NSK1 ? residual_nsac(s, setup) : residual_nsch(s, setup);
    CHECK(r.mass == 0.0);
    CHECK(r.phase < 1e-10);
    CHECK(r.momentum < 1e-10);
  }
}

TEST_CASE("reduction gap converges at second order with centred differences") {
  for (ModelKind k : {ModelKind::NSK1, ModelKind::NSK2}) {
    const ModelSetup setup = setup_for(k, Scheme::FD2);
    const double e1 = momentum_equivalence_gap(smooth_2d(64), setup);
    const double e2 = momentum_equivalence_gap(smooth_2d(128), setup);
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.15));
  }
}

TEST_CASE("floored density is a state error") {
  const Grid g = Grid::periodic_1d(16, 1.0);
  ScalarField rho(g, 1.0);
  rho[5] = 0.0;
  const MixtureState s{rho, VectorField(g), 0.0};
  CHECK_THROWS_AS(validate_state(s), StateError);
  CHECK_THROWS_AS(rhs(s, setup_for(ModelKind::NSK1, Scheme::FD2)), StateError);
}

TEST_CASE("setup validation") {
  ModelSetup s = setup_for(ModelKind::NSK2, Scheme::Spectral);
  s.mobility.reset();
  CHECK_THROWS_AS(s.validate(Grid::periodic_1d(16, 1.0)), ConfigError);
  CHECK_THROWS_AS(setup_for(ModelKind::NSK1, Scheme::Spectral).validate(Grid::neumann_1d(16, 1.0)), ConfigError);
  CHECK(model_kind_from_string("nsk2") == ModelKind::NSK2);
}
