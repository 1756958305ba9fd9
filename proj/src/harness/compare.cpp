#include "nsk/harness/compare.hpp"

#include <algorithm>
#include <cmath>

#include "nsk/errors.hpp"
#include "nsk/tensors.hpp"

namespace nsk::harness {

using nlohmann::json;

json CompareReport::to_json() const {
  json pts = json::array();
  for (const auto& p : curve)
    pts.push_back({{"step", p.step}, {"t", p.t}, {"rho_distance", p.rho_distance}, {"momentum_distance", p.momentum_distance}});
  return {{"korteweg_difference", korteweg_difference},
          {"korteweg_identical", korteweg_identical},
          {"first_rhs_difference", first_rhs_difference},
          {"initial_divergence", initial_divergence},
          {"divergence_curve", pts}};
}

CompareReport run_compare(const RunConfig& a, const RunConfig& b) {
  if (a.model != ModelKind::NSK1 || b.model != ModelKind::NSK2)
    throw ConfigError("compare expects an nsk1 configuration followed by an nsk2 configuration");
  json ja = to_json(a), jb = to_json(b);
  for (const char* key : {"grid", "scheme", "dealias", "params", "initial_condition", "rho_floor"})
    if (ja[key] != jb[key]) throw ConfigError(std::string("compared configurations differ in '") + key + "'");

  const Grid g = make_grid(a);
  const ModelSetup sa = make_setup(a, g);
  const ModelSetup sb = make_setup(b, g);
  const MixtureState s0 = make_initial_field(a, g).sample(g);

  CompareReport rep;
  const SymTensorField ka = korteweg_tensor(s0.rho, sa.params, sa.disc);
  const SymTensorField kb = korteweg_tensor(s0.rho, sb.params, sb.disc);
  const SymTensorField diff = ka - kb;
  rep.korteweg_difference = diff.max_abs();
  rep.korteweg_identical = rep.korteweg_difference == 0.0;

  const Rates ra = rhs(s0, sa);
  const Rates rb = rhs(s0, sb);
  rep.first_rhs_difference = std::max(max_abs_diff(ra.drho_dt, rb.drho_dt), max_abs_diff(ra.dm_dt, rb.dm_dt));
  rep.initial_divergence = div(velocity(s0, sa.rho_floor), sa.disc).max_abs();

  StepControl control = a.steps;
  control.validate();
  const long every = std::max(1L, a.output.metrics_every);
  MixtureState xa = s0, xb = s0;
  long step = 0;
  rep.curve.push_back({0, 0.0, 0.0, 0.0});
  const double t_slack = 1e-12 * std::max(1.0, control.t_end);
  try {
    while (xa.t < control.t_end - t_slack) {
      double dt = control.fixed_dt ? *control.fixed_dt
                                   : std::min(estimate_dt(xa, sa, control), estimate_dt(xb, sb, control));
      dt = std::min(dt, control.t_end - xa.t);
      xa = ssprk3_step(xa, dt, [&](const MixtureState& s) { return rhs(s, sa); });
      xb = ssprk3_step(xb, dt, [&](const MixtureState& s) { return rhs(s, sb); });
      validate_state(xa, sa.rho_floor);
      validate_state(xb, sb.rho_floor);
      ++step;
      const bool last = xa.t >= control.t_end - t_slack;
      if (step % every == 0 || last)
        rep.curve.push_back({step, xa.t, max_abs_diff(xa.rho, xb.rho), max_abs_diff(xa.m, xb.m)});
    }
  } catch (const StateError& e) {
    throw NumericAbort(std::string("invalid state during comparison: ") + e.what(), xa);
  }
  return rep;
}

}  // namespace nsk::harness
