#include "nsk/harness/corpus.hpp"

#include <numbers>

namespace nsk::harness {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Resolution pairs sit in the asymptotic range of each scheme.
const std::pair<Scheme, std::pair<int, int>> kSpectral1D{Scheme::Spectral, {64, 128}};
const std::pair<Scheme, std::pair<int, int>> kFd1D{Scheme::FD2, {256, 512}};
const std::pair<Scheme, std::pair<int, int>> kSpectral2D{Scheme::Spectral, {64, 128}};
const std::pair<Scheme, std::pair<int, int>> kFd2D{Scheme::FD2, {128, 256}};

VelocitySpec wave(double amp, int k, double phase = 0.0) {
  VelocitySpec v;
  v.amplitude = amp;
  v.wavenumber = k;
  v.phase = phase;
  return v;
}

}  // namespace

std::vector<CorpusState> default_corpus() {
  std::vector<CorpusState> out;
  const Grid line = Grid::periodic_1d(64, kTwoPi);

  {
    InitialCondition ic;
    ic.family = IcFamily::SineDensity;
    ic.rho0 = 1.5;
    ic.amplitude = 0.4;
    ic.wavenumber = 3;
    ic.velocity = wave(0.1, 1, 0.3);
    out.push_back({"sine_k3", line, ic, {}, {ModelKind::NSK1, ModelKind::NSK2}, {kSpectral1D, kFd1D}});
  }
  {
    InitialCondition ic;
    ic.family = IcFamily::SineDensity;
    ic.rho0 = 1.5;
    ic.amplitude = 0.3;
    ic.wavenumber = 4;
    ic.phase = 0.7;
    ic.velocity = wave(0.05, 2);
    out.push_back({"sine_k4", line, ic, {}, {ModelKind::NSK1, ModelKind::NSK2}, {kSpectral1D, kFd1D}});
  }
  {
    InitialCondition ic;
    ic.family = IcFamily::TanhInterface;
    ic.width = 0.3;
    ic.velocity = wave(0.1, 1);
    out.push_back({"tanh_w030", line, ic, {}, {ModelKind::NSK1, ModelKind::NSK2}, {kSpectral1D, kFd1D}});
  }
  {
    InitialCondition ic;
    ic.family = IcFamily::TanhInterface;
    ic.width = 0.4;
    ic.center = 0.1;
    ic.velocity = wave(0.05, 3);
    out.push_back({"tanh_w040", line, ic, {}, {ModelKind::NSK1, ModelKind::NSK2}, {kSpectral1D, kFd1D}});
  }
  {
    InitialCondition ic;
    ic.family = IcFamily::RandomBandLimited;
    ic.rho0 = 1.5;
    ic.amplitude = 0.3;
    ic.max_mode = 5;
    ic.seed = 42;
    ic.velocity = wave(0.1, 2, 1.1);
    out.push_back({"random_k5", line, ic, {}, {ModelKind::NSK1, ModelKind::NSK2}, {kSpectral1D, kFd1D}});
  }
  {
    InitialCondition ic;
    ic.family = IcFamily::SineDensity;
    ic.rho0 = 1.5;
    ic.amplitude = 0.4;
    ic.wavenumber = 3;
    ic.wavenumber_y = 2;
    ic.velocity = wave(0.1, 1);
    out.push_back({"sine_2d", Grid::periodic_2d(64, 64, kTwoPi, kTwoPi), ic, {}, {ModelKind::NSK1, ModelKind::NSK2},
                   {kSpectral2D, kFd2D}});
  }
  {
    InitialCondition ic;
    ic.family = IcFamily::SineDensity;
    ic.rho0 = 1.5;
    ic.amplitude = 0.3;
    ic.wavenumber = 2;
    ic.velocity = wave(0.1, 1);
    MobilitySpec gamma;
    gamma.variable = true;
    gamma.mean = 2.0;
    gamma.amplitude = 1.0;
    gamma.wavenumber = 1;
    out.push_back({"bounded_variable_mobility", Grid::neumann_1d(64, 1.0), ic, gamma,
                   {ModelKind::NSK1, ModelKind::NSK2}, {kFd1D}});
  }
  return out;
}

std::vector<CorpusState> select_corpus(const std::vector<CorpusState>& all, std::optional<int> dim,
                                       std::optional<Scheme> scheme) {
  std::vector<CorpusState> out;
  for (CorpusState s : all) {
    if (dim && s.domain.dim() != *dim) continue;
    if (scheme) {
      std::erase_if(s.studies, [&](const auto& st) { return st.first != *scheme; });
      if (s.studies.empty()) continue;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace nsk::harness
