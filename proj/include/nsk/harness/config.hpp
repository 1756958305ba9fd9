#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "nsk/calculus.hpp"
#include "nsk/constitutive.hpp"
#include "nsk/elliptic.hpp"
#include "nsk/grid.hpp"
#include "nsk/harness/initial_conditions.hpp"
#include "nsk/reduced.hpp"
#include "nsk/time_integration.hpp"

namespace nsk::harness {

struct GridSpec {
  int dim = 1;
  std::array<int, 2> n{128, 1};
  std::array<double, 2> length{0.0, 0.0};
  Boundary boundary = Boundary::Periodic;
};

/// gamma(x) = mean + amplitude * sin(2 pi k x / L) along axis 0, or a constant.
struct MobilitySpec {
  bool variable = false;
  double mean = 1.0;
  double amplitude = 0.0;
  int wavenumber = 1;
};

struct OutputSpec {
  std::string directory = "out";
  long snapshot_every = 0;
  long metrics_every = 1;
};

struct RunConfig {
  GridSpec grid;
  Discretization disc;
  FluidParams params;
  double well_scale = 1.0;
  std::optional<MobilitySpec> mobility;
  ModelKind model = ModelKind::NSK1;
  InitialCondition initial;
  StepControl steps;
  OutputSpec output;
  std::uint64_t seed = 42;
  double rho_floor = kDefaultDensityFloor;

  /// Cross-field consistency; throws ConfigError. Allocates nothing.
  void validate() const;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& cfg);

/// 16 hex digits of FNV-1a over the canonical JSON dump.
std::string config_hash(const RunConfig& cfg);

Grid make_grid(const RunConfig& cfg);
/// Resolution override on every active axis.
Grid make_grid(const RunConfig& cfg, int n);
Mobility make_mobility(const MobilitySpec& spec, const Grid& grid);
ModelSetup make_setup(const RunConfig& cfg, const Grid& grid);
InitialField make_initial_field(const RunConfig& cfg, const Grid& grid);

}  // namespace nsk::harness
