#include "acband/ranking.hpp"

#include <algorithm>
#include <cmath>

#include "acband/error.hpp"

namespace acband {

std::vector<ConfigId> rank_with_ties(std::span<const ScoredConfig> scores, SeededRng& rng) {
    std::vector<ScoredConfig> work(scores.begin(), scores.end());
    for (const auto& [id, score] : work) {
        if (std::isnan(score)) raise(Errc::InvalidArgument, "rank_with_ties: NaN score for config " + std::to_string(id.value));
    }
    // A uniform shuffle followed by a stable sort leaves every tie class in
    // uniformly random order.
    rng.shuffle(std::span<ScoredConfig>(work));
    std::stable_sort(work.begin(), work.end(), [](const ScoredConfig& a, const ScoredConfig& b) { return a.second > b.second; });

    std::vector<ConfigId> order;
    order.reserve(work.size());
    for (const auto& entry : work) order.push_back(entry.first);
    return order;
}

}  // namespace acband
