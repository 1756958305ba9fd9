#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nsk/errors.hpp"
#include "nsk/harness/check.hpp"
#include "nsk/harness/compare.hpp"
#include "nsk/harness/config.hpp"
#include "nsk/harness/convergence.hpp"
#include "nsk/harness/run.hpp"
#include "nsk/log.hpp"
#include "nsk/time_integration.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nsk;
using namespace nsk::harness;

namespace {

struct Common {
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

void fail_record(const std::string& status, const std::string& message) {
  std::cerr << json{{"status", status}, {"message", message}}.dump() << "\n";
}

RunConfig load_with_seed(const std::string& path, const Common& c) {
  RunConfig cfg = load_config(path);
  if (c.seed) {
    cfg.seed = *c.seed;
    cfg.initial.seed = *c.seed;
  }
  return cfg;
}

int cmd_run(const std::string& path, const Common& c) {
  const RunConfig cfg = load_with_seed(path, c);
  const fs::path out = c.out.empty() ? fs::path(cfg.output.directory) : fs::path(c.out);
  const RunOutcome r = run_simulation(cfg, out);
  if (r.exit_code != kExitOk) {
    fail_record("numeric_abort", r.message);
    return r.exit_code;
  }
  if (!c.quiet)
    std::cout << json{{"status", "ok"}, {"steps", r.steps}, {"t", r.t_final}, {"out", out.string()}}.dump() << "\n";
  return kExitOk;
}

int cmd_check(const std::string& path, const Common& c, const std::string& scheme, int dim, bool serial) {
  CheckOptions opts;
  if (!path.empty()) opts.params = load_with_seed(path, c).params;
  std::optional<Scheme> sc;
  if (!scheme.empty()) sc = scheme_from_string(scheme);
  std::optional<int> d;
  if (dim > 0) d = dim;
  opts.corpus = select_corpus(default_corpus(), d, sc);
  opts.parallel = !serial;
  const CheckReport rep = run_check(opts);

  fs::create_directories(c.out);
  std::ofstream(fs::path(c.out) / "check_report.json") << rep.to_json().dump(2) << "\n";
  if (!c.quiet) {
    for (const auto& chk : rep.checks) {
      std::cout << (chk.pass ? "PASS " : (chk.expected_failure ? "FAIL(expected) " : "FAIL ")) << chk.name << " state="
                << chk.state;
      if (!chk.scheme.empty()) std::cout << " scheme=" << chk.scheme;
      if (!chk.model.empty()) std::cout << " model=" << chk.model;
      std::cout << " values=" << json(chk.values).dump();
      if (chk.order && chk.scheme == "FD2") std::cout << " order=" << *chk.order;
      if (chk.ratio && chk.scheme == "Spectral") std::cout << " ratio=" << *chk.ratio;
      std::cout << "\n";
    }
    std::cout << json{{"checks", rep.checks.size()},
                      {"failures", rep.failures()},
                      {"unexpected_failures", rep.unexpected_failures()},
                      {"seconds", rep.seconds}}
                     .dump()
              << "\n";
  }
  return rep.failures() == 0 ? kExitOk : kExitCheck;
}

int cmd_convergence(const std::string& path, const Common& c, const std::string& list) {
  const RunConfig cfg = load_with_seed(path, c);
  const ConvergenceTable table = run_convergence(cfg, parse_resolutions(list));
  fs::create_directories(c.out);
  std::ofstream(fs::path(c.out) / "convergence.csv") << "# config_hash=" << config_hash(cfg) << "\n" << table.to_csv();
  if (!c.quiet) std::cout << table.to_csv();
  return kExitOk;
}

int cmd_compare(const std::string& a, const std::string& b, const Common& c) {
  const CompareReport rep = run_compare(load_with_seed(a, c), load_with_seed(b, c));
  fs::create_directories(c.out);
  std::ofstream(fs::path(c.out) / "compare_report.json") << rep.to_json().dump(2) << "\n";
  if (!c.quiet) {
    json brief = rep.to_json();
    brief.erase("divergence_curve");
    if (!rep.curve.empty()) brief["final_rho_distance"] = rep.curve.back().rho_distance;
    std::cout << brief.dump() << "\n";
  }
  return rep.korteweg_identical ? kExitOk : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced two-phase flow models: simulation and certification"};
  app.require_subcommand(1);
  Common common;
  std::string log_level = "warning";
  app.add_option("--log-level", log_level, "debug, info, warning or error")
      ->check(CLI::IsMember({"debug", "info", "warning", "error"}));

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "output directory");
    sub->add_option("--seed", common.seed, "random seed override");
    sub->add_flag("--quiet", common.quiet, "suppress the stdout summary");
  };

  std::string run_cfg;
  CLI::App* run = app.add_subcommand("run", "integrate a configuration");
  run->add_option("config", run_cfg, "configuration file")->required();
  add_common(run);

  std::string check_cfg, check_scheme;
  int check_dim = 0;
  bool check_serial = false;
  CLI::App* check = app.add_subcommand("check", "certify the reduction over the default corpus");
  check->add_option("config", check_cfg, "configuration supplying physical parameters");
  check->add_option("--scheme", check_scheme, "restrict to one scheme");
  check->add_option("--dim", check_dim, "restrict to one dimension");
  check->add_flag("--serial", check_serial, "evaluate states one at a time");
  add_common(check);

  std::string conv_cfg, conv_list = "32,64,128,256";
  CLI::App* conv = app.add_subcommand("convergence", "manufactured-solution refinement study");
  conv->add_option("config", conv_cfg, "configuration file")->required();
  conv->add_option("--n", conv_list, "comma-separated resolutions");
  add_common(conv);

  std::string cmp_a, cmp_b;
  CLI::App* cmp = app.add_subcommand("compare", "run an nsk1 and an nsk2 configuration side by side");
  cmp->add_option("config_a", cmp_a, "nsk1 configuration")->required();
  cmp->add_option("config_b", cmp_b, "nsk2 configuration")->required();
  add_common(cmp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  set_log_level(log_level == "debug"  ? LogLevel::Debug
                : log_level == "info" ? LogLevel::Info
                : log_level == "error" ? LogLevel::Error
                                       : LogLevel::Warning);
  if (common.quiet && log_level == "warning") set_log_level(LogLevel::Error);

  try {
    if (*run) {
      if (common.out == "out") common.out.clear();
      return cmd_run(run_cfg, common);
    }
    if (*check) return cmd_check(check_cfg, common, check_scheme, check_dim, check_serial);
    if (*conv) return cmd_convergence(conv_cfg, common, conv_list);
    if (*cmp) return cmd_compare(cmp_a, cmp_b, common);
  } catch (const ConfigError& e) {
    fail_record("config_error", e.what());
    return kExitConfig;
  } catch (const NumericAbort& e) {
    fail_record("numeric_abort", e.what());
    return kExitNumeric;
  } catch (const Error& e) {
    fail_record("numeric_error", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    fail_record("error", e.what());
    return kExitNumeric;
  }
  return kExitOk;
}
