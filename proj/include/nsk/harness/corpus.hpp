#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsk/calculus.hpp"
#include "nsk/constitutive.hpp"
#include "nsk/grid.hpp"
#include "nsk/harness/config.hpp"
#include "nsk/harness/initial_conditions.hpp"

namespace nsk::harness {

/// One named state of the certification corpus. `domain` fixes dimension,
/// extent and boundary; the cell count is set per study.
struct CorpusState {
  std::string id;
  Grid domain;
  InitialCondition initial;
  /// Mobility used for the NSK2 checks.
  MobilitySpec mobility;
  std::vector<ModelKind> models{ModelKind::NSK1, ModelKind::NSK2};
  /// Coarse/fine resolution pair per applicable scheme.
  std::vector<std::pair<Scheme, std::pair<int, int>>> studies;
};

/// Default corpus: five analytic 1-D periodic states, one 2-D periodic state
/// and one bounded 1-D state with variable mobility.
std::vector<CorpusState> default_corpus();

/// Corpus restricted by dimension / boundary / scheme (empty filter keeps all).
std::vector<CorpusState> select_corpus(const std::vector<CorpusState>& all, std::optional<int> dim,
                                       std::optional<Scheme> scheme);

}  // namespace nsk::harness
