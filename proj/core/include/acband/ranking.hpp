#pragma once

#include <span>
#include <utility>
#include <vector>

#include "acband/rng.hpp"
#include "acband/types.hpp"

namespace acband {

using ScoredConfig = std::pair<ConfigId, double>;

/// Orders ids by descending score. Equal scores are permuted uniformly at
/// random from `rng`, so the result is reproducible under a fixed seed.
std::vector<ConfigId> rank_with_ties(std::span<const ScoredConfig> scores, SeededRng& rng);

}  // namespace acband
