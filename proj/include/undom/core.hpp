#pragma once

#include <cmath>
#include <cstdint>
#include <type_traits>
#include <utility>
#include <vector>

#include "election.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace undom {

/// true iff voter v ranks a strictly above b.
bool prefers(const election& e, voter_id v, candidate_id a, candidate_id b);

/// |a > S|: voters ranking a above every member of S. Zero when a is in S.
int dominator_count(const election& e, candidate_id a, const committee& s);

/// dominator_count for every candidate (index a - 1), members of S at zero.
std::vector<int> dominator_counts(const election& e, const committee& s);

/// Largest dominator count over all candidates, for ascending in-range `members`.
/// Unchecked; used inside enumeration loops.
int max_dominator_count(const election& e, std::span<const candidate_id> members);

struct domination {
    candidate_id candidate = 0; ///< 0 when S = C
    int count = 0;

    friend bool operator==(const domination&, const domination&) = default;
};

/// The outside candidate with the largest dominator count (smallest id on ties).
domination max_domination(const election& e, const committee& s);

/// Every outside candidate is preferred over S by strictly fewer than alpha * n voters.
bool is_alpha_undominated(const election& e, const committee& s, const rational_threshold& alpha);

/// |S| * max_a |a > S| / n. S is c-stable exactly when c exceeds this value.
rational stability_constant(const election& e, const committee& s);

enum class committee_order { first_above, second_above, equal };

/// Voter v's weak preference between two committees: favourites first; with a shared
/// favourite the superset wins, otherwise the favourites of the two set differences decide.
committee_order compare_committees(const election& e, voter_id v, const committee& s1,
                                   const committee& s2);

/// A distribution over committees with explicit support. W is `double` or `rational`.
template <typename W>
class committee_distribution {
public:
    using weight_type = W;
    using entry = std::pair<committee, W>;

    explicit committee_distribution(std::vector<entry> support) : support_(std::move(support)) {
        W total{0};
        for (std::size_t i = 0; i < support_.size(); ++i) {
            if (support_[i].second < W{0}) throw input_error("committee_distribution: negative weight");
            total += support_[i].second;
            for (std::size_t j = 0; j < i; ++j)
                if (support_[j].first == support_[i].first)
                    throw input_error("committee_distribution: duplicate committee " + support_[i].first.str());
        }
        if (support_.empty()) throw input_error("committee_distribution: empty support");
        if constexpr (std::is_same_v<W, rational>) {
            if (total != 1) throw input_error("committee_distribution: weights sum to " + to_string(total));
        } else {
            if (std::abs(total - 1.0) > 1e-12) throw input_error("committee_distribution: weights do not sum to 1");
        }
    }

    const std::vector<entry>& support() const noexcept { return support_; }

    void check_against(const election& e) const {
        for (const auto& [s, w] : support_) s.check_against(e);
    }

private:
    std::vector<entry> support_;
};

/// Pr_{S' ~ d}[a > S' for voter v].
template <typename W>
W rank_candidate(const election& e, const committee_distribution<W>& d, voter_id v, candidate_id a) {
    e.check_voter(v);
    e.check_candidate(a);
    const auto pos = e.positions(v);
    W r{0};
    for (const auto& [s, w] : d.support()) {
        bool above_all = true;
        for (candidate_id b : s.members())
            if (pos[b - 1] <= pos[a - 1]) { above_all = false; break; }
        if (above_all) r += w;
    }
    return r;
}

/// Pr_{S' ~ d}[S weakly preferred to S' by voter v].
template <typename W>
W rank_committee(const election& e, const committee_distribution<W>& d, voter_id v, const committee& s) {
    e.check_voter(v);
    s.check_against(e);
    W r{0};
    for (const auto& [other, w] : d.support())
        if (compare_committees(e, v, s, other) != committee_order::second_above) r += w;
    return r;
}

struct search_limits {
    std::uint64_t node_budget = 200'000'000; ///< committees examined, summed over sizes
    unsigned threads = 1;
};

struct dimension_result {
    int dimension;
    committee witness;
};

/// Size of the smallest 1/2-undominated committee, with the lexicographically smallest
/// witness of that size. Throws budget_error before enumerating past the node budget.
dimension_result condorcet_dimension(const election& e, const search_limits& limits = {});

} // namespace undom
