#include "nsk/harness/initial_conditions.hpp"

#include <algorithm>
#include <random>

#include "nsk/errors.hpp"

namespace nsk::harness {
namespace {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::string to_string(IcFamily f) {
  switch (f) {
    case IcFamily::Constant: return "constant";
    case IcFamily::SineDensity: return "sine_density";
    case IcFamily::TanhInterface: return "tanh_interface";
    case IcFamily::RandomBandLimited: return "random_band_limited";
  }
  return "constant";
}

IcFamily ic_family_from_string(const std::string& s) {
  if (s == "constant") return IcFamily::Constant;
  if (s == "sine_density") return IcFamily::SineDensity;
  if (s == "tanh_interface") return IcFamily::TanhInterface;
  if (s == "random_band_limited") return IcFamily::RandomBandLimited;
  throw ConfigError("unknown initial-condition family '" + s + "'");
}

InitialField::InitialField(const InitialCondition& ic, const Grid& domain, const FluidParams& params)
    : ic_(ic),
      dim_(domain.dim()),
      periodic_(domain.periodic()),
      length_{domain.length(0), domain.length(1)},
      rho_mid_(0.5 * (1.0 / params.tau1 + 1.0 / params.tau2)),
      rho_half_(0.5 * (1.0 / params.tau2 - 1.0 / params.tau1)) {
  if (ic_.family == IcFamily::TanhInterface && !(ic_.width > 0.0))
    throw ConfigError("interface width must be positive");
  if (!periodic_ && (ic_.velocity.offset[0] != 0.0 || ic_.velocity.offset[1] != 0.0))
    throw ConfigError("a uniform velocity offset violates the wall condition on bounded grids");
  if (ic_.family == IcFamily::RandomBandLimited) {
    if (ic_.max_mode < 1) throw ConfigError("random band-limited field needs max_mode >= 1");
    std::mt19937_64 rng(ic_.seed);
    const int kmax = ic_.max_mode;
    for (int kx = (dim_ > 1 && periodic_ ? 0 : 1); kx <= kmax; ++kx) {
      const int ky_lo = dim_ > 1 ? (kx == 0 ? 1 : -kmax) : 0;
      const int ky_hi = dim_ > 1 ? kmax : 0;
      for (int ky = ky_lo; ky <= ky_hi; ++ky) {
        const double amp = 2.0 * unit(rng) - 1.0;
        const double phase = 2.0 * std::numbers::pi * unit(rng);
        modes_.push_back({kx, ky, amp, phase});
      }
    }
    // Normalise so that the pattern has unit sup-norm (measured on a fine sample).
    mode_scale_ = 1.0;
    const int samples = dim_ > 1 ? 256 : 4096;
    double peak = 0.0;
    const double span = periodic_ ? 2.0 * std::numbers::pi : std::numbers::pi;
    for (int i = 0; i < samples; ++i) {
      const double xs = span * i / samples;
      for (int j = 0; j < (dim_ > 1 ? samples : 1); ++j) {
        const double ys = 2.0 * std::numbers::pi * j / samples;
        peak = std::max(peak, std::abs(random_sum(xs, ys)));
      }
    }
    mode_scale_ = peak > 0.0 ? peak : 1.0;
  }
}

MixtureState InitialField::sample(const Grid& grid) const {
  ScalarField rho_f = ScalarField::sample(grid, [&](double x, double y) { return rho(x, y); });
  VectorField u_f(grid);
  for (int a = 0; a < grid.dim(); ++a)
    u_f[a] = ScalarField::sample(grid, [&](double x, double y) { return u(x, y)[a]; });
  return make_state(std::move(rho_f), u_f);
}

}  // namespace nsk::harness
