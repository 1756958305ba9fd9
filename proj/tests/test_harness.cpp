#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "nsk/errors.hpp"
#include "nsk/harness/check.hpp"
#include "nsk/harness/compare.hpp"
#include "nsk/harness/config.hpp"
#include "nsk/harness/convergence.hpp"
#include "nsk/harness/corpus.hpp"
#include "nsk/harness/jet.hpp"
#include "nsk/harness/manufactured.hpp"
#include "nsk/harness/run.hpp"

using namespace nsk;
using namespace nsk::harness;
using nlohmann::json;

namespace fs = std::filesystem;

namespace {

json sine_doc(const std::string& model = "nsk1", const std::string& scheme = "spectral", int n = 128) {
  json doc = {{"grid", {{"dim", 1}, {"n", n}, {"length", "2pi"}, {"boundary", "periodic"}}},
              {"scheme", scheme},
              {"model", model},
              {"initial_condition",
               {{"family", "sine_density"},
                {"rho0", 1.5},
                {"amplitude", 0.1},
                {"wavenumber", 1},
                {"velocity", {{"amplitude", 0.1}, {"wavenumber", 1}}}}},
              {"step_control", {{"t_end", 0.1}}},
              {"output", {{"metrics_every", 10}}}};
  if (model == "nsk2") doc["mobility"] = {{"kind", "constant"}, {"value", 1.0}};
  return doc;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nsk_harness_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("config parsing and validation") {
  const RunConfig cfg = parse_config(sine_doc());
  CHECK(cfg.grid.n[0] == 128);
  CHECK(cfg.grid.length[0] == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(cfg.initial.family == IcFamily::SineDensity);

  SUBCASE("spectral scheme on the bounded grid is rejected") {
    json doc = sine_doc();
    doc["grid"]["boundary"] = "neumann";
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
  }
  SUBCASE("unknown keys are rejected") {
    json doc = sine_doc();
    doc["params"] = {{"tau_one", 1.0}};
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
  }
  SUBCASE("nsk2 needs a mobility") {
    json doc = sine_doc("nsk2");
    doc.erase("mobility");
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
  }
  SUBCASE("hash ignores the output directory and tracks everything else") {
    json a = sine_doc();
    json b = a;
    b["output"]["directory"] = "elsewhere";
    CHECK(config_hash(parse_config(a)) == config_hash(parse_config(b)));
    CHECK(config_hash(parse_config(a)).size() == 16);
    b["initial_condition"]["amplitude"] = 0.2;
    CHECK(config_hash(parse_config(a)) != config_hash(parse_config(b)));
  }
  SUBCASE("round trip through json") {
    CHECK(config_hash(parse_config(to_json(cfg))) == config_hash(cfg));
  }
}

TEST_CASE("initial conditions") {
  const FluidParams params;
  SUBCASE("tanh interface spans the pure-phase densities") {
    InitialCondition ic;
    ic.family = IcFamily::TanhInterface;
    ic.width = 0.05;
    const Grid g = Grid::periodic_1d(256, 2.0 * std::numbers::pi);
    const MixtureState s = InitialField(ic, g, params).sample(g);
    CHECK(s.rho.max() == doctest::Approx(1.0 / params.tau2).epsilon(1e-10));
    CHECK(s.rho.min() == doctest::Approx(1.0 / params.tau1).epsilon(1e-10));
  }
  SUBCASE("every corpus state stays above the floor") {
    for (const CorpusState& st : default_corpus()) {
      const MixtureState s = InitialField(st.initial, st.domain, params).sample(st.domain);
      CHECK_MESSAGE(s.rho.min() > 0.5, st.id);
    }
  }
  SUBCASE("random band-limited fields are seeded") {
    InitialCondition ic;
    ic.family = IcFamily::RandomBandLimited;
    const Grid g = Grid::periodic_1d(64, 1.0);
    const ScalarField a = InitialField(ic, g, params).sample(g).rho;
    const ScalarField b = InitialField(ic, g, params).sample(g).rho;
    ic.seed = 7;
    const ScalarField c = InitialField(ic, g, params).sample(g).rho;
    CHECK(max_abs_diff(a, b) == 0.0);
    CHECK(max_abs_diff(a, c) > 1e-3);
    CHECK(std::abs(a.max() / ic.rho0 - 1.0) <= ic.amplitude + 1e-12);
  }
}

TEST_CASE("jets carry exact derivatives") {
  const Jet x = Jet::variable(0.7);
  const Jet f = sin(x) * exp(x) / (Jet(1.0) + x * x);
  const double h = 1e-4;
  const auto g = [](double t) { return std::sin(t) * std::exp(t) / (1.0 + t * t); };
  CHECK(f.value() == doctest::Approx(g(0.7)).epsilon(1e-15));
  CHECK(f.derivative(1) == doctest::Approx((g(0.7 + h) - g(0.7 - h)) / (2 * h)).epsilon(1e-8));
  CHECK(f.derivative(2) == doctest::Approx((g(0.7 + h) - 2 * g(0.7) + g(0.7 - h)) / (h * h)).epsilon(1e-6));
  CHECK(tanh(x).derivative(1) == doctest::Approx(1.0 - std::tanh(0.7) * std::tanh(0.7)).epsilon(1e-15));
}

TEST_CASE("manufactured forcing makes the exact pair a solution") {
  const RunConfig cfg = parse_config(sine_doc("nsk1", "spectral", 128));
  const Grid g = make_grid(cfg);
  const ManufacturedSolution ms(make_initial_field(cfg, g), g, cfg.params, cfg.model, std::nullopt);
  SUBCASE("spectral rhs matches the jet rhs") {
    const Rates discrete = rhs(ms.exact_state(g, 0.3), make_setup(cfg, g));
    const Rates exact = ms.exact_rates(g, 0.3);
    CHECK(max_abs_diff(discrete.drho_dt, exact.drho_dt) < 1e-10);
    CHECK(max_abs_diff(discrete.dm_dt, exact.dm_dt) < 1e-10);
  }
  SUBCASE("forcing is the time derivative minus the rhs") {
    const double t = 0.3;
    const double eps = 1e-5;
    const Rates f = ms.forcing(g, t);
    const Rates r = ms.exact_rates(g, t);
    const MixtureState up = ms.exact_state(g, t + eps);
    const MixtureState dn = ms.exact_state(g, t - eps);
    const ScalarField drho = (up.rho - dn.rho) / (2 * eps);
    CHECK(max_abs_diff(f.drho_dt + r.drho_dt, drho) < 1e-8);
  }
}

TEST_CASE("run: constant state over 100 steps is unchanged") {
  json doc = {{"grid", {{"dim", 1}, {"n", 64}}},
              {"scheme", "fd2"},
              {"initial_condition", {{"family", "constant"}, {"rho0", 1.5}}},
              {"step_control", {{"fixed_dt", 1e-3}, {"t_end", 0.1}}}};
  const RunConfig cfg = parse_config(doc);
  const RunOutcome out = run_simulation(cfg, scratch("constant"));
  REQUIRE(out.exit_code == kExitOk);
  CHECK(out.steps == 100);
  const Grid g = make_grid(cfg);
  const MixtureState s0 = make_initial_field(cfg, g).sample(g);
  CHECK(max_abs_diff(out.final_state->rho, s0.rho) < 1e-12);
  CHECK(out.final_state->m.max_abs() < 1e-12);
}

TEST_CASE("run: nsk1 sine density conserves mass") {
  json doc = sine_doc("nsk1", "spectral", 128);
  const RunConfig cfg = parse_config(doc);
  const fs::path dir = scratch("sine");
  const RunOutcome out = run_simulation(cfg, dir);
  REQUIRE(out.exit_code == kExitOk);
  CHECK(out.t_final == doctest::Approx(0.1).epsilon(1e-14));
  const MixtureState s0 = make_initial_field(cfg, make_grid(cfg)).sample(make_grid(cfg));
  CHECK(std::abs(mean(out.final_state->rho) - mean(s0.rho)) < 1e-12);

  CHECK(fs::exists(dir / "config.json"));
  CHECK(fs::exists(dir / "metrics.jsonl"));
  CHECK(fs::exists(dir / "residuals.jsonl"));
  const std::string header = slurp(dir / "config.json");
  CHECK(header.find(config_hash(cfg)) != std::string::npos);

  std::istringstream metrics(slurp(dir / "metrics.jsonl"));
  std::string line;
  int records = 0;
  REQUIRE(std::getline(metrics, line));
  CHECK(json::parse(line)["config_hash"] == config_hash(cfg));
  while (std::getline(metrics, line)) {
    const json rec = json::parse(line);
    CHECK(rec.contains("step"));
    CHECK(rec.contains("min_rho"));
    CHECK(std::abs(rec["mass"].get<double>() - 1.5) < 1e-12);
    ++records;
  }
  CHECK(records >= 2);
}

TEST_CASE("run: identical configs give bit-identical snapshots") {
  json doc = sine_doc("nsk2", "fd2", 64);
  doc["output"]["snapshot_every"] = 20;
  const RunConfig cfg = parse_config(doc);
  const fs::path a = scratch("repro_a");
  const fs::path b = scratch("repro_b");
  REQUIRE(run_simulation(cfg, a).exit_code == kExitOk);
  REQUIRE(run_simulation(cfg, b).exit_code == kExitOk);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    if (entry.path().extension() != ".csv") continue;
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
    CHECK(slurp(entry.path()).rfind("# grid", 0) == 0);
    ++files;
  }
  CHECK(files >= 4);
}

TEST_CASE("run: a numeric blow-up is reported, not thrown") {
  json doc = sine_doc("nsk1", "spectral", 64);
  doc["step_control"] = {{"fixed_dt", 0.05}, {"t_end", 5.0}};
  const fs::path dir = scratch("abort");
  const RunOutcome out = run_simulation(parse_config(doc), dir);
  CHECK(out.exit_code == kExitNumeric);
  CHECK(fs::exists(dir / "failure.json"));
}

TEST_CASE("convergence studies") {
  SUBCASE("fd2 is second order") {
    const ConvergenceTable t = run_convergence(parse_config(sine_doc("nsk1", "fd2")), {64, 128, 256});
    CHECK(t.fitted_order_rho == doctest::Approx(2.0).epsilon(0.15));
    CHECK(t.fitted_order_m == doctest::Approx(2.0).epsilon(0.15));
  }
  SUBCASE("nsk2 with variable mobility in a closed box is second order") {
    json doc = sine_doc("nsk2", "fd2");
    doc["grid"] = {{"dim", 1}, {"n", 64}, {"length", 1.0}, {"boundary", "neumann"}};
    doc["mobility"] = {{"kind", "field"}, {"mean", 2.0}, {"amplitude", 1.0}, {"wavenumber", 1}};
    doc["step_control"] = {{"t_end", 0.01}};
    const ConvergenceTable t = run_convergence(parse_config(doc), {64, 128, 256});
    CHECK(t.fitted_order_rho == doctest::Approx(2.0).epsilon(0.15));
    CHECK(t.fitted_order_m == doctest::Approx(2.0).epsilon(0.15));
  }
  SUBCASE("spectral reaches the floor by 128") {
    for (const char* model : {"nsk1", "nsk2"}) {
      const ConvergenceTable t = run_convergence(parse_config(sine_doc(model)), {32, 64, 128});
      CHECK(t.rows.back().error_rho < 1e-9);
      CHECK(t.rows.back().error_m < 1e-9);
    }
  }
  SUBCASE("too few resolutions") {
    CHECK_THROWS_AS(run_convergence(parse_config(sine_doc()), {64}), ConfigError);
    CHECK_THROWS_AS(run_convergence(parse_config(sine_doc()), {64, 64, 128}), ConfigError);
    CHECK(parse_resolutions("32, 64,128") == std::vector<int>{32, 64, 128});
    CHECK_THROWS_AS(parse_resolutions("32,x"), ConfigError);
  }
}

TEST_CASE("compare") {
  SUBCASE("sine density: identical Korteweg tensors, diverging trajectories") {
    const CompareReport r = run_compare(parse_config(sine_doc("nsk1")), parse_config(sine_doc("nsk2")));
    CHECK(r.korteweg_identical);
    CHECK(r.korteweg_difference == 0.0);
    REQUIRE(r.curve.size() >= 2);
    CHECK(r.curve.back().momentum_distance > 0.0);
    CHECK(r.curve.back().rho_distance > 0.0);
  }
  SUBCASE("divergence-free velocity over constant density") {
    json a = sine_doc("nsk1");
    a["grid"] = {{"dim", 2}, {"n", 32}};
    a["initial_condition"] = {{"family", "constant"},
                              {"rho0", 1.5},
                              {"velocity", {{"amplitude", 0.1}, {"wavenumber", 1}, {"solenoidal", true}}}};
    json b = a;
    b["model"] = "nsk2";
    b["mobility"] = {{"kind", "constant"}, {"value", 1.0}};
    const CompareReport r = run_compare(parse_config(a), parse_config(b));
    CHECK(r.initial_divergence < 1e-12);
    // exact in exact arithmetic; the discrete divergence is round-off
    CHECK(r.first_rhs_difference < 1e-13);
    CHECK(r.korteweg_identical);
  }
  SUBCASE("mismatched setups are rejected") {
    json b = sine_doc("nsk2");
    b["initial_condition"]["amplitude"] = 0.2;
    CHECK_THROWS_AS(run_compare(parse_config(sine_doc("nsk1")), parse_config(b)), ConfigError);
  }
}

TEST_CASE("check: one corpus state and the convergence rule") {
  const std::vector<CorpusState> corpus = default_corpus();
  const FluidParams params;
  const std::vector<CheckRecord> recs = state_checks(corpus.front(), params, ConvergenceRule{});
  CHECK(!recs.empty());
  for (const CheckRecord& r : recs) CHECK_MESSAGE(r.pass, (r.name + " " + r.scheme + " " + r.model));

  CheckRecord fd;
  fd.resolutions = {128, 256};
  fd.values = {4e-4, 1e-4};
  judge_convergence(fd, Scheme::FD2, ConvergenceRule{});
  CHECK(fd.pass);
  CHECK(*fd.order == doctest::Approx(2.0));
  fd.values = {4e-4, 2e-4};
  judge_convergence(fd, Scheme::FD2, ConvergenceRule{});
  CHECK_FALSE(fd.pass);

  CheckRecord sp;
  sp.resolutions = {64, 128};
  sp.values = {1e-5, 1e-12};
  judge_convergence(sp, Scheme::Spectral, ConvergenceRule{});
  CHECK(sp.pass);
  sp.values = {1e-5, 1e-6};
  judge_convergence(sp, Scheme::Spectral, ConvergenceRule{});
  CHECK_FALSE(sp.pass);
}
