#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "core.hpp"
#include "lottery.hpp"

namespace undom {

/// Exact evidence for a committee: its worst outside candidate and that candidate's
/// dominator count and fraction.
struct certificate {
    candidate_id worst_candidate = 0;
    int count = 0;
    rational fraction;
};

certificate certify(const election& e, const committee& s);

struct search_stats {
    std::uint64_t nodes = 0;      ///< committees examined
    std::uint64_t samples = 0;    ///< committees drawn from a lottery
    std::uint64_t iterations = 0; ///< solver iterations, summed
    std::uint64_t fallbacks = 0;  ///< recursive levels that kept a sample over the voter-cut budget
};

/// A committee is present only if it passed the exact alpha check. `best` always holds the
/// strategy's final candidate committee (for brute force: the one with the least maximum
/// domination), with `cert` describing it.
struct search_result {
    std::optional<committee> found;
    std::optional<committee> best;
    certificate cert;
    std::string strategy;
    search_stats stats;
};

/// Lexicographically smallest alpha-undominated committee of size min(k, m).
search_result brute_force_search(const election& e, int k, const rational_threshold& alpha,
                                 const search_limits& limits = {});

/// Majority-graph halving: repeatedly add the remaining candidate that strictly beats the
/// most remaining others and drop what it beats. If even that candidate beats fewer than
/// floor((r-1)/2) of the r remaining, ties are counted as wins for that round instead.
/// The result is checked against alpha = 1/2.
search_result greedy_halving(const election& e);

/// Solve the confined-attacker lottery, then draw committees from y^k (padded to k with the
/// heaviest unused candidates) until one passes the exact alpha check.
search_result lottery_search(const election& e, int k, const rational_threshold& alpha,
                             const activation_spec& g, int max_samples, std::uint64_t seed,
                             const solver_options& opts = {});

struct recursive_params {
    double gamma = 0.28467;
    double beta = 0.28467 * 0.28467;
    /// Attacker budget for the per-level lottery; the unconfined game (alpha = 1) by default.
    rational_threshold lottery_alpha{1, 1};
    int resample_budget = 50;

    void validate() const;
};

/// Sample a block of ceil((1-gamma)k) candidates from a shifted-ReLU lottery, then recurse
/// with floor(gamma k) seats on the voters who rank that block below beta.
search_result recursive_search(const election& e, int k, const rational_threshold& alpha,
                               const recursive_params& params, std::uint64_t seed,
                               const solver_options& opts = {});

} // namespace undom
