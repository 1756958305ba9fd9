#include "nsk/harness/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "nsk/errors.hpp"
#include "nsk/harness/manufactured.hpp"

namespace nsk::harness {
namespace {

constexpr double kDefaultHorizon = 0.05;

double fitted_slope(const std::vector<ConvergenceRow>& rows, bool density) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double k = static_cast<double>(rows.size());
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.n));
    const double y = -std::log(density ? r.error_rho : r.error_m);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

}  // namespace

std::vector<int> parse_resolutions(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(n);
    } catch (const std::exception&) {
      throw ConfigError("resolution list must be comma-separated integers, got '" + list + "'");
    }
  }
  return out;
}

std::string ConvergenceTable::to_csv() const {
  std::ostringstream os;
  os << "# fitted_order_rho=" << fmt(fitted_order_rho) << " fitted_order_m=" << fmt(fitted_order_m)
     << " t_end=" << fmt(t_end) << " dt=" << fmt(dt) << "\n";
  os << "N,error_rho,error_m,order_rho,order_m\n";
  for (const auto& r : rows) {
    os << r.n << ',' << fmt(r.error_rho) << ',' << fmt(r.error_m) << ',' << (r.order_rho ? fmt(*r.order_rho) : "")
       << ',' << (r.order_m ? fmt(*r.order_m) : "") << "\n";
  }
  return os.str();
}

ConvergenceTable run_convergence(const RunConfig& cfg, std::vector<int> resolutions) {
  std::sort(resolutions.begin(), resolutions.end());
  resolutions.erase(std::unique(resolutions.begin(), resolutions.end()), resolutions.end());
  if (resolutions.size() < 3) throw ConfigError("a convergence study needs at least three distinct resolutions");
  if (cfg.grid.dim != 1) throw ConfigError("manufactured convergence studies are one-dimensional");
  for (int n : resolutions)
    if (n < Grid::kMinCells) throw ConfigError("resolutions must be at least 8");

  auto solution_on = [&](const Grid& g) {
    const std::optional<MobilitySpec> mob = cfg.model == ModelKind::NSK2 ? cfg.mobility : std::nullopt;
    return ManufacturedSolution(make_initial_field(cfg, g), g, cfg.params, cfg.model, mob);
  };

  ConvergenceTable table;
  table.t_end = cfg.steps.t_end > 0.0 ? cfg.steps.t_end : kDefaultHorizon;
  {
    const Grid finest = make_grid(cfg, resolutions.back());
    const ManufacturedSolution ms = solution_on(finest);
    StepControl probe = cfg.steps;
    probe.dt_min = std::min(probe.dt_min, 1e-300);
    const double dt = 0.5 * estimate_dt(ms.exact_state(finest, 0.0), make_setup(cfg, finest), probe);
    const long steps = static_cast<long>(std::ceil(table.t_end / dt));
    table.dt = table.t_end / static_cast<double>(steps);
  }

  for (int n : resolutions) {
    const Grid g = make_grid(cfg, n);
    const ManufacturedSolution ms = solution_on(g);
    const ModelSetup setup = make_setup(cfg, g);
    StepControl control = cfg.steps;
    control.t_end = table.t_end;
    control.fixed_dt = table.dt;
    const RhsEvaluator forced = [&](const MixtureState& s) {
      Rates r = rhs(s, setup);
      const Rates f = ms.forcing(g, s.t);
      r.drho_dt += f.drho_dt;
      r.dm_dt += f.dm_dt;
      return r;
    };
    const Trajectory tr = integrate(ms.exact_state(g, 0.0), control, setup, {}, forced);
    const MixtureState exact = ms.exact_state(g, table.t_end);
    ConvergenceRow row;
    row.n = n;
    row.error_rho = max_abs_diff(tr.final_state.rho, exact.rho);
    row.error_m = max_abs_diff(tr.final_state.m, exact.m);
    if (!table.rows.empty()) {
      const ConvergenceRow& prev = table.rows.back();
      const double lr = std::log(static_cast<double>(n) / prev.n);
      row.order_rho = std::log(prev.error_rho / row.error_rho) / lr;
      row.order_m = std::log(prev.error_m / row.error_m) / lr;
    }
    table.rows.push_back(row);
  }
  table.fitted_order_rho = fitted_slope(table.rows, true);
  table.fitted_order_m = fitted_slope(table.rows, false);
  return table;
}

}  // namespace nsk::harness
