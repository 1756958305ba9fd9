#include "nsk/time_integration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nsk/log.hpp"

namespace nsk {
namespace {

// Parabolic candidates are kStabilityScale * cfl / (stiffest eigenvalue), so that the
// default cfl = 0.2 lands at 40% of the SSP-RK3 real-axis stability radius.
constexpr double kStabilityScale = 5.0;

MixtureState euler_update(const MixtureState& s, double dt, const Rates& r) {
  MixtureState out = s;
  for (std::size_t i = 0; i < out.rho.size(); ++i) out.rho[i] += dt * r.drho_dt[i];
  for (int a = 0; a < out.m.dim(); ++a)
    for (std::size_t i = 0; i < out.rho.size(); ++i) out.m[a][i] += dt * r.dm_dt[a][i];
  out.t += dt;
  return out;
}

// w a + (1 - w) b, in place on b. Written as b + w (a - b) so that a == b is reproduced exactly.
void blend_into(const MixtureState& a, double w, MixtureState& b) {
  for (std::size_t i = 0; i < b.rho.size(); ++i) b.rho[i] += w * (a.rho[i] - b.rho[i]);
  for (int k = 0; k < b.m.dim(); ++k)
    for (std::size_t i = 0; i < b.rho.size(); ++i) b.m[k][i] += w * (a.m[k][i] - b.m[k][i]);
  b.t += w * (a.t - b.t);
}

}  // namespace

void StepControl::validate() const {
  if (!(cfl_advective > 0.0 && cfl_advective <= 1.0) || !(cfl_parabolic > 0.0 && cfl_parabolic <= 1.0))
    throw ConfigError("CFL safety factors must lie in (0, 1]");
  if (!(dt_min > 0.0) || !(dt_min <= dt_max)) throw ConfigError("need 0 < dt_min <= dt_max");
  if (!(t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
  if (fixed_dt && !(*fixed_dt > 0.0)) throw ConfigError("fixed dt must be positive");
}

DtEstimate estimate_dt_detail(const MixtureState& s, const ModelSetup& setup, const StepControl& control) {
  const VectorField u = velocity(s, setup.rho_floor);
  const FluidParams& prm = setup.params;
  const Grid& g = s.grid();
  const int dim = g.dim();
  double h = g.h(0);
  // Largest |k|^2 of the second-derivative symbol. The centred operators compose two
  // wide first differences, whose symbol sin^2(kh)/h^2 peaks at 1/h^2.
  double k2_max = 0.0;
  for (int a = 0; a < dim; ++a) {
    h = std::min(h, g.h(a));
    const double inv_h2 = 1.0 / (g.h(a) * g.h(a));
    k2_max += setup.disc.scheme == Scheme::Spectral ? std::numbers::pi * std::numbers::pi * inv_h2 : inv_h2;
  }
  const double inf = std::numeric_limits<double>::infinity();

  double rho_min = inf;
  double advective = inf;
  double diffusivity = 0.0;
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    const double r = s.rho[i];
    rho_min = std::min(rho_min, r);
    double speed_sq = 0.0;
    for (int a = 0; a < dim; ++a) speed_sq += u[a][i] * u[a][i];
    const double sound = std::sqrt(std::max(thermo_pressure_prime(r, prm), 1e-12));
    advective = std::min(advective, control.cfl_advective * h / (std::sqrt(speed_sq) + sound));
    const double ls = setup.kind == ModelKind::NSK1 ? lambda_star(r, prm) : prm.lambda;
    diffusivity = std::max(diffusivity, (2.0 * prm.mu_shear + std::abs(ls)) / r);
  }

  const double viscous = diffusivity > 0.0 ? kStabilityScale * control.cfl_parabolic / (k2_max * diffusivity) : inf;

  // Linear capillary waves: omega = sqrt(delta_*) |k|^2 / rho.
  const double ds = prm.delta_star();
  const double capillary =
      ds > 0.0 ? kStabilityScale * control.cfl_parabolic * rho_min / (k2_max * std::sqrt(ds)) : inf;

  // The non-local stress damps compressive velocity at rate theta / (dtau^2 gamma rho).
  double relaxation = inf;
  if (setup.kind == ModelKind::NSK2 && setup.mobility) {
    const double dt2 = prm.delta_tau() * prm.delta_tau();
    relaxation = kStabilityScale * control.cfl_parabolic * rho_min * dt2 * setup.mobility->min_value() / prm.theta;
  }

  double dt = std::min({advective, viscous, capillary, relaxation, control.dt_max});
  dt = std::max(dt, control.dt_min);
  return {advective, viscous, capillary, relaxation, dt};
}

double estimate_dt(const MixtureState& s, const ModelSetup& setup, const StepControl& control) {
  return estimate_dt_detail(s, setup, control).dt;
}

MixtureState ssprk3_step(const MixtureState& s, double dt, const RhsEvaluator& rhs) {
  using T = Ssprk3Tableau;
  MixtureState stage = euler_update(s, T::b[0] * dt, rhs(s));
  for (int k = 1; k < 3; ++k) {
    MixtureState next = euler_update(stage, T::b[k] * dt, rhs(stage));
    blend_into(s, T::a[k], next);
    stage = std::move(next);
  }
  stage.t = s.t + dt;
  return stage;
}

StepRecord measure(const MixtureState& s, long step, double dt, double rho_floor) {
  StepRecord rec;
  rec.step = step;
  rec.t = s.t;
  rec.dt = dt;
  rec.mass = mean(s.rho);
  for (int a = 0; a < s.m.dim(); ++a) rec.momentum.push_back(mean(s.m[a]));
  rec.min_rho = s.rho.min();
  const VectorField u = velocity(s, rho_floor);
  double speed = 0.0;
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    double sq = 0.0;
    for (int a = 0; a < u.dim(); ++a) sq += u[a][i] * u[a][i];
    speed = std::max(speed, std::sqrt(sq));
  }
  rec.max_speed = speed;
  return rec;
}

Trajectory integrate(const MixtureState& s0, const StepControl& control, const ModelSetup& setup,
                     const std::vector<Observer>& observers, const RhsEvaluator& rhs_override) {
  control.validate();
  setup.validate(s0.grid());
  validate_state(s0, setup.rho_floor);
  const RhsEvaluator evaluator =
      rhs_override ? rhs_override : RhsEvaluator([&setup](const MixtureState& s) { return rhs(s, setup); });

  Trajectory traj{s0, 0, {}};
  traj.metrics.push_back(measure(s0, 0, 0.0, setup.rho_floor));
  auto notify = [&](bool final_step) {
    for (const auto& obs : observers) {
      const bool due = obs.every > 0 ? traj.steps % obs.every == 0 : false;
      if ((due || final_step) && obs.callback) obs.callback(traj.metrics.back(), traj.final_state);
    }
  };
  notify(control.t_end <= s0.t);

  const double t_end = control.t_end;
  // Relative slack so that round-off in t does not trigger a vanishing extra step.
  const double t_slack = 1e-12 * std::max(1.0, std::abs(t_end));
  while (traj.final_state.t < t_end - t_slack) {
    MixtureState& s = traj.final_state;
    double dt;
    try {
      dt = control.fixed_dt ? *control.fixed_dt : estimate_dt(s, setup, control);
    } catch (const StateError& e) {
      throw NumericAbort(std::string("invalid state: ") + e.what(), s);
    }
    const double remaining = t_end - s.t;
    if (!control.fixed_dt && dt <= control.dt_min && remaining > control.dt_min) {
      const auto detail = estimate_dt_detail(s, setup, control);
      log_event(LogLevel::Error, "stiffness_abort",
                {{"t", s.t},
                 {"advective", detail.advective},
                 {"viscous", detail.viscous},
                 {"capillary", detail.capillary},
                 {"dt_min", control.dt_min}});
      throw NumericAbort("stiffness: step size fell to dt_min at t = " + std::to_string(s.t), s);
    }
    dt = std::min(dt, remaining);
    MixtureState next = [&] {
      try {
        MixtureState n = ssprk3_step(s, dt, evaluator);
        validate_state(n, setup.rho_floor);
        return n;
      } catch (const StateError& e) {
        throw NumericAbort(std::string("invalid state: ") + e.what(), s);
      }
    }();
    if (std::abs(next.t - t_end) <= t_slack) next.t = t_end;
    traj.final_state = std::move(next);
    ++traj.steps;
    traj.metrics.push_back(measure(traj.final_state, traj.steps, dt, setup.rho_floor));
    notify(traj.final_state.t >= t_end - t_slack);
  }
  return traj;
}

}  // namespace nsk
