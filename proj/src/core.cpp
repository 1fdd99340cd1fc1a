#include "undom/core.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <string>

#include "undom/combinatorics.hpp"

namespace undom {

namespace {

__extension__ typedef __int128 wide_int;

void check_committee(const election& e, const committee& s) { s.check_against(e); }

std::vector<int> counts_for(const election& e, std::span<const candidate_id> members) {
    const int m = e.num_candidates();
    std::vector<int> counts(m, 0);
    for (voter_id v = 1; v <= e.num_voters(); ++v) {
        const auto order = e.ranking_unchecked(v);
        const auto pos = e.positions(v);
        int b = m;
        for (candidate_id s : members) b = std::min(b, pos[s - 1]);
        // everything ranked above v's favourite member beats the whole committee for v
        for (int i = 0; i < b; ++i) ++counts[order[i] - 1];
    }
    return counts;
}

candidate_id favourite(std::span<const int> pos, std::span<const candidate_id> members) {
    candidate_id fav = 0;
    for (candidate_id a : members)
        if (fav == 0 || pos[a - 1] < pos[fav - 1]) fav = a;
    return fav;
}

} // namespace

rational_threshold::rational_threshold(std::int64_t numerator, std::int64_t denominator) {
    if (denominator <= 0) throw input_error("threshold: denominator must be positive");
    if (numerator <= 0) throw input_error("threshold: alpha must be in (0, 1]");
    if (numerator > denominator) throw input_error("threshold: alpha must be in (0, 1]");
    const std::int64_t g = std::gcd(numerator, denominator);
    num_ = numerator / g;
    den_ = denominator / g;
}

rational_threshold rational_threshold::parse(std::string_view text) {
    auto parse_int = [&](std::string_view part) {
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
            throw input_error("threshold: expected P/Q, got '" + std::string(text) + "'");
        return value;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return rational_threshold(parse_int(text), 1);
    return rational_threshold(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

bool prefers(const election& e, voter_id v, candidate_id a, candidate_id b) {
    e.check_candidate(b);
    return e.position(v, a) < e.positions(v)[b - 1];
}

int dominator_count(const election& e, candidate_id a, const committee& s) {
    e.check_candidate(a);
    check_committee(e, s);
    if (s.contains(a)) return 0;
    int count = 0;
    for (voter_id v = 1; v <= e.num_voters(); ++v) {
        const auto pos = e.positions(v);
        const bool above_all =
            std::all_of(s.members().begin(), s.members().end(), [&](candidate_id b) { return pos[a - 1] < pos[b - 1]; });
        if (above_all) ++count;
    }
    return count;
}

std::vector<int> dominator_counts(const election& e, const committee& s) {
    check_committee(e, s);
    return counts_for(e, s.members());
}

int max_dominator_count(const election& e, std::span<const candidate_id> members) {
    const auto counts = counts_for(e, members);
    return *std::max_element(counts.begin(), counts.end());
}

domination max_domination(const election& e, const committee& s) {
    const auto counts = dominator_counts(e, s);
    domination best;
    for (candidate_id a = 1; a <= e.num_candidates(); ++a) {
        if (s.contains(a)) continue;
        if (best.candidate == 0 || counts[a - 1] > best.count) best = {a, counts[a - 1]};
    }
    return best;
}

bool is_alpha_undominated(const election& e, const committee& s, const rational_threshold& alpha) {
    const domination worst = max_domination(e, s);
    if (worst.candidate == 0) return true;
    return static_cast<wide_int>(worst.count) * alpha.denominator() <
           static_cast<wide_int>(alpha.numerator()) * e.num_voters();
}

rational stability_constant(const election& e, const committee& s) {
    const domination worst = max_domination(e, s);
    return make_rational(static_cast<std::int64_t>(s.size()) * worst.count, e.num_voters());
}

committee_order compare_committees(const election& e, voter_id v, const committee& s1, const committee& s2) {
    e.check_voter(v);
    check_committee(e, s1);
    check_committee(e, s2);
    if (s1 == s2) return committee_order::equal;
    const auto pos = e.positions(v);
    auto better = [&](candidate_id a, candidate_id b) {
        return pos[a - 1] < pos[b - 1] ? committee_order::first_above : committee_order::second_above;
    };

    const candidate_id f1 = favourite(pos, s1.members());
    const candidate_id f2 = favourite(pos, s2.members());
    if (f1 != f2) return better(f1, f2);

    std::vector<candidate_id> only1, only2;
    std::set_difference(s1.members().begin(), s1.members().end(), s2.members().begin(), s2.members().end(),
                        std::back_inserter(only1));
    std::set_difference(s2.members().begin(), s2.members().end(), s1.members().begin(), s1.members().end(),
                        std::back_inserter(only2));
    if (only1.empty()) return committee_order::second_above; // s1 is a proper subset
    if (only2.empty()) return committee_order::first_above;
    return better(favourite(pos, only1), favourite(pos, only2));
}

dimension_result condorcet_dimension(const election& e, const search_limits& limits) {
    const int m = e.num_candidates();
    const int n = e.num_voters();
    std::uint64_t spent = 0;
    for (int k = 1; k <= m; ++k) {
        const std::uint64_t nodes = binomial(m, k);
        if (nodes > limits.node_budget - std::min(spent, limits.node_budget))
            throw budget_error("condorcet_dimension: enumerating size " + std::to_string(k) +
                               " committees exceeds the node budget of " + std::to_string(limits.node_budget));
        spent += nodes;
        auto hit = find_first_combination(
            m, k,
            [&](const std::vector<candidate_id>& members) {
                return 2 * max_dominator_count(e, members) < n;
            },
            limits.threads);
        if (hit) return {k, committee(std::move(*hit))};
    }
    // S = C always qualifies; unreachable
    return {m, committee::all(m)};
}

} // namespace undom
