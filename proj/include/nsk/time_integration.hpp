#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nsk/errors.hpp"
#include "nsk/reduced.hpp"

namespace nsk {

struct StepControl {
  double cfl_advective = 0.4;
  double cfl_parabolic = 0.2;
  double dt_max = 1e-2;
  double dt_min = 1e-12;
  double t_end = 0.0;
  /// When set, every step uses this dt (the last one is shortened to land on t_end).
  std::optional<double> fixed_dt;

  void validate() const;
};

/// Candidate step sizes; `dt` is the clamped minimum.
struct DtEstimate {
  double advective;
  double viscous;
  double capillary;
  double relaxation;
  double dt;
};

/// CFL-style step from the advective, viscous and capillary time scales
/// (plus the non-local relaxation rate for NSK2), clamped to [dt_min, dt_max].
DtEstimate estimate_dt_detail(const MixtureState& s, const ModelSetup& setup, const StepControl& control);
double estimate_dt(const MixtureState& s, const ModelSetup& setup, const StepControl& control);

using RhsEvaluator = std::function<Rates(const MixtureState&)>;

/// Shu-Osher coefficients (a, b) per stage: u_k = a u^n + (1 - a) (u_{k-1} + b dt L(u_{k-1})).
struct Ssprk3Tableau {
  static constexpr double a[3] = {0.0, 3.0 / 4.0, 1.0 / 3.0};
  static constexpr double b[3] = {1.0, 1.0, 1.0};
};

/// One SSP-RK3 step: each stage is a convex combination of forward-Euler steps.
MixtureState ssprk3_step(const MixtureState& s, double dt, const RhsEvaluator& rhs);

struct StepRecord {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  double mass = 0.0;
  std::vector<double> momentum;
  double min_rho = 0.0;
  double max_speed = 0.0;
};

/// Builds the metrics record for a state.
StepRecord measure(const MixtureState& s, long step, double dt, double rho_floor = kDefaultDensityFloor);

struct Observer {
  /// Called every `every` steps and after the final step; 0 means only at the end.
  long every = 1;
  std::function<void(const StepRecord&, const MixtureState&)> callback;
};

struct Trajectory {
  MixtureState final_state;
  long steps = 0;
  std::vector<StepRecord> metrics;
};

/// Integration stopped: stiffness (dt below dt_min) or an invalid state.
/// Carries the last valid state for diagnostics.
class NumericAbort : public Error {
 public:
  NumericAbort(const std::string& what, MixtureState last_good)
      : Error(what), last_good_(std::make_shared<MixtureState>(std::move(last_good))) {}
  const MixtureState& last_good() const noexcept { return *last_good_; }

 private:
  std::shared_ptr<MixtureState> last_good_;
};

/// Advances `s0` to control.t_end with SSP-RK3, recording one metrics record per step.
Trajectory integrate(const MixtureState& s0, const StepControl& control, const ModelSetup& setup,
                     const std::vector<Observer>& observers = {}, const RhsEvaluator& rhs_override = {});

}  // namespace nsk
