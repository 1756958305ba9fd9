#include "nsk/harness/run.hpp"

#include <cstdio>
#include <fstream>

#include "nsk/errors.hpp"
#include "nsk/log.hpp"
#include "nsk/snapshot.hpp"

namespace nsk::harness {
namespace {

using nlohmann::json;

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json metrics_record(const StepRecord& r) {
  json mom = json::array();
  for (double v : r.momentum) mom.push_back(finite_or_null(v));
  return {{"step", r.step},         {"t", r.t}, {"dt", r.dt}, {"mass", finite_or_null(r.mass)}, {"momentum", mom},
          {"min_rho", finite_or_null(r.min_rho)}, {"max_speed", finite_or_null(r.max_speed)}};
}

std::string step_tag(long step) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%06ld", step);
  return buf;
}

void write_state(const std::filesystem::path& dir, const MixtureState& s, const std::string& tag,
                 const std::string& hash) {
  write_snapshot_csv(dir / ("rho_" + tag + ".csv"), s.rho, "rho", hash);
  for (int a = 0; a < s.m.dim(); ++a) {
    const std::string name = "m" + std::to_string(a);
    write_snapshot_csv(dir / (name + "_" + tag + ".csv"), s.m[a], name, hash);
  }
}

}  // namespace

RunOutcome run_simulation(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  cfg.validate();
  const Grid g = make_grid(cfg);
  const ModelSetup setup = make_setup(cfg, g);
  const MixtureState s0 = make_initial_field(cfg, g).sample(g);
  check_density_window(s0.rho, cfg.params);

  std::filesystem::create_directories(out_dir);
  const std::string hash = config_hash(cfg);
  {
    json doc = to_json(cfg);
    doc["config_hash"] = hash;
    std::ofstream(out_dir / "config.json") << doc.dump(2) << "\n";
  }
  std::ofstream metrics(out_dir / "metrics.jsonl");
  std::ofstream residuals(out_dir / "residuals.jsonl");
  if (!metrics || !residuals) throw ConfigError("cannot write into output directory '" + out_dir.string() + "'");
  metrics << json{{"config_hash", hash}, {"grid", g.header().substr(2)}}.dump() << "\n";
  residuals << json{{"config_hash", hash}, {"grid", g.header().substr(2)}}.dump() << "\n";

  std::vector<Observer> observers;
  if (cfg.output.metrics_every > 0)
    observers.push_back({cfg.output.metrics_every, [&](const StepRecord& r, const MixtureState&) {
                           metrics << metrics_record(r).dump() << "\n";
                         }});
  const auto monitor = [&](const StepRecord& r, const MixtureState& s) {
    const ResidualReport rr = cfg.model == ModelKind::NSK1 ? residual_nsac(s, setup) : residual_nsch(s, setup);
    residuals << json{{"step", r.step},
                      {"t", r.t},
                      {"mass_res", rr.mass},
                      {"momentum_res", rr.momentum},
                      {"phase_res", rr.phase},
                      {"equivalence_gap", momentum_equivalence_gap(s, setup)}}
                     .dump()
              << "\n";
  };
  long last_snapshot = -1;
  if (cfg.output.snapshot_every > 0)
    observers.push_back({cfg.output.snapshot_every, [&](const StepRecord& r, const MixtureState& s) {
                           write_state(out_dir, s, step_tag(r.step), hash);
                           monitor(r, s);
                           last_snapshot = r.step;
                         }});

  RunOutcome out;
  try {
    Trajectory tr = integrate(s0, cfg.steps, setup, observers);
    out.steps = tr.steps;
    out.t_final = tr.final_state.t;
    if (last_snapshot != tr.steps) {
      write_state(out_dir, tr.final_state, step_tag(tr.steps), hash);
      monitor(tr.metrics.back(), tr.final_state);
    }
    out.final_state = std::move(tr.final_state);
    out.exit_code = kExitOk;
    log_event(LogLevel::Info, "run_complete", {{"steps", static_cast<double>(out.steps)}, {"t", out.t_final}});
  } catch (const NumericAbort& e) {
    out.exit_code = kExitNumeric;
    out.message = e.what();
    out.final_state = e.last_good();
    out.t_final = e.last_good().t;
    write_state(out_dir, e.last_good(), "abort", hash);
    std::ofstream(out_dir / "failure.json")
        << json{{"status", "numeric_abort"}, {"message", e.what()}, {"t", e.last_good().t}, {"config_hash", hash}}.dump(2)
        << "\n";
    log_event(LogLevel::Error, "numeric_abort", {{"t", e.last_good().t}});
  }
  return out;
}

}  // namespace nsk::harness
