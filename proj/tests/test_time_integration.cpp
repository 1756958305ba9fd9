#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nsk/errors.hpp"
#include "nsk/time_integration.hpp"

using namespace nsk;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

ModelSetup nsk1(Scheme sc = Scheme::Spectral) {
  ModelSetup s;
  s.disc = {sc};
  return s;
}

MixtureState sine_state(int n, double a = 0.1) {
  const Grid g = Grid::periodic_1d(n, kTwoPi);
  VectorField u(g);
  u[0] = ScalarField::sample(g, [](double x, double) { return 0.1 * std::sin(x); });
  return make_state(ScalarField::sample(g, [&](double x, double) { return 1.5 * (1.0 + a * std::sin(x)); }), u);
}

Rates decay(const MixtureState& s) { return {-1.0 * s.rho, -1.0 * s.m}; }
}  // namespace

TEST_CASE("one step of linear decay reproduces the stage arithmetic") {
  const Grid g = Grid::periodic_1d(8, 1.0);
  const MixtureState s = make_state(ScalarField(g, 1.0), VectorField(g));
  const MixtureState next = ssprk3_step(s, 0.1, decay);
  CHECK(next.rho[3] == doctest::Approx(5429.0 / 6000.0).epsilon(1e-15));
  CHECK(next.t == doctest::Approx(0.1));
}

TEST_CASE("stages are convex combinations of forward Euler steps") {
  for (int k = 0; k < 3; ++k) {
    CHECK(Ssprk3Tableau::a[k] >= 0.0);
    CHECK(Ssprk3Tableau::a[k] <= 1.0);
    CHECK(Ssprk3Tableau::b[k] > 0.0);
  }
}

TEST_CASE("zero rates leave the state unchanged") {
  const MixtureState s = sine_state(32);
  const MixtureState next =
      ssprk3_step(s, 0.5, [](const MixtureState& x) { return Rates{ScalarField(x.grid()), VectorField(x.grid())}; });
  CHECK(max_abs_diff(next.rho, s.rho) == 0.0);
  CHECK(max_abs_diff(next.m, s.m) == 0.0);
}

TEST_CASE("t_end = 0 returns the initial state") {
  const MixtureState s = sine_state(32);
  const Trajectory tr = integrate(s, StepControl{}, nsk1());
  CHECK(tr.steps == 0);
  CHECK(max_abs_diff(tr.final_state.rho, s.rho) == 0.0);
}

TEST_CASE("constant states are fixed points over 1000 steps") {
  const Grid g = Grid::periodic_1d(32, kTwoPi);
  const MixtureState s = make_state(ScalarField(g, 1.3), VectorField(g));
  StepControl c;
  c.fixed_dt = 1e-3;
  c.t_end = 1.0;
  for (ModelKind k : {ModelKind::NSK1, ModelKind::NSK2}) {
    ModelSetup setup = nsk1();
    setup.kind = k;
    setup.mobility = Mobility::constant(1.0);
    const Trajectory tr = integrate(s, c, setup);
    CHECK(tr.steps == 1000);
    CHECK(max_abs_diff(tr.final_state.rho, s.rho) < 1e-12);
    CHECK(tr.final_state.m.max_abs() < 1e-12);
  }
}

TEST_CASE("mass and momentum means are conserved over 1000 steps") {
  const MixtureState s = sine_state(64);
  StepControl c;
  c.t_end = 1e9;
  long steps = 0;
  double worst_mass = 0.0, worst_mom = 0.0;
  const double m0 = mean(s.rho), p0 = mean(s.m[0]);
  Observer obs{1, [&](const StepRecord& r, const MixtureState&) {
                 worst_mass = std::max(worst_mass, std::abs(r.mass - m0));
                 worst_mom = std::max(worst_mom, std::abs(r.momentum[0] - p0));
                 if (++steps > 1000) throw std::runtime_error("done");
               }};
  CHECK_THROWS_AS(integrate(s, c, nsk1(), {obs}), std::runtime_error);
  CHECK(worst_mass < 1e-12);
  CHECK(worst_mom < 1e-12);
}

TEST_CASE("temporal self-convergence is third order") {
  const MixtureState s = sine_state(32, 0.2);
  const ModelSetup setup = nsk1();
  const double dt0 = estimate_dt(s, setup, StepControl{});
  std::vector<ScalarField> finals;
  for (int r : {1, 2, 4}) {
    StepControl c;
    c.fixed_dt = dt0 / r;
    c.t_end = 40 * dt0;
    finals.push_back(integrate(s, c, setup).final_state.rho);
  }
  const double order = std::log2(max_abs_diff(finals[0], finals[1]) / max_abs_diff(finals[1], finals[2]));
  CHECK(order == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("time-dependent rates see the stage times") {
  const Grid g = Grid::periodic_1d(8, 1.0);
  const MixtureState s = make_state(ScalarField(g, 0.0), VectorField(g));
  const RhsEvaluator forced = [](const MixtureState& x) {
    return Rates{ScalarField(x.grid(), std::cos(x.t)), VectorField(x.grid())};
  };
  std::vector<double> err;
  for (double dt : {0.1, 0.05}) {
    MixtureState y = s;
    for (int i = 0; i < static_cast<int>(std::lround(1.0 / dt)); ++i) y = ssprk3_step(y, dt, forced);
    err.push_back(std::abs(y.rho[0] - std::sin(1.0)));
  }
  // pure quadrature: the weights reduce to Simpson's rule
  CHECK(std::log2(err[0] / err[1]) > 2.7);
}

TEST_CASE("step size estimate") {
  const MixtureState a = sine_state(64);
  const MixtureState b = sine_state(128);
  const DtEstimate ea = estimate_dt_detail(a, nsk1(), StepControl{});
  const DtEstimate eb = estimate_dt_detail(b, nsk1(), StepControl{});
  CHECK(ea.advective / eb.advective == doctest::Approx(2.0).epsilon(1e-12));

  const Grid g = Grid::periodic_1d(16, 1.0);
  ModelSetup quiet = nsk1();
  quiet.params.mu_shear = 0.0;
  quiet.params.delta = 1e-300;
  quiet.params.well = BulkPotential::quartic(0.0);
  StepControl c;
  c.dt_max = 1e-6;
  CHECK(estimate_dt(make_state(ScalarField(g, 1.5), VectorField(g)), quiet, c) == c.dt_max);
}

TEST_CASE("estimated steps are stable while four times larger steps are not") {
  const MixtureState s = sine_state(128);
  const ModelSetup setup = nsk1(Scheme::FD2);
  const double dt = estimate_dt(s, setup, StepControl{});
  auto run = [&](double step) {
    StepControl c;
    c.fixed_dt = step;
    c.t_end = 100 * step;
    try {
      const Trajectory tr = integrate(s, c, setup);
      return tr.final_state.rho.all_finite() && tr.final_state.rho.max() < 10.0;
    } catch (const NumericAbort&) {
      return false;
    }
  };
  CHECK(run(dt));
  CHECK_FALSE(run(4.0 * dt));
}

TEST_CASE("undershooting dt_min aborts with a stiffness diagnostic") {
  const MixtureState s = sine_state(256);
  StepControl c;
  c.dt_min = 1e-2;
  c.dt_max = 1e-2;
  c.t_end = 1.0;
  try {
    integrate(s, c, nsk1());
    FAIL("expected abort");
  } catch (const NumericAbort& e) {
    CHECK(std::string(e.what()).find("stiffness") != std::string::npos);
    CHECK(e.last_good().t == 0.0);
  }
}

TEST_CASE("step control validation") {
  StepControl c;
  c.cfl_advective = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  StepControl d;
  d.dt_min = 1.0;
  CHECK_THROWS_AS(d.validate(), ConfigError);
}
