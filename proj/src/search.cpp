#include "undom/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "undom/combinatorics.hpp"
#include "undom/errors.hpp"
#include "undom/rng.hpp"

namespace undom {

namespace {

__extension__ typedef __int128 wide_int;

bool passes(std::int64_t count, std::int64_t n, const rational_threshold& alpha) {
    return static_cast<wide_int>(count) * alpha.denominator() < static_cast<wide_int>(alpha.numerator()) * n;
}

// Number of k-subsets of 1..m that precede `c` lexicographically.
std::uint64_t combination_rank(const std::vector<candidate_id>& c, int m) {
    const int k = static_cast<int>(c.size());
    std::uint64_t rank = 0;
    int prev = 0;
    for (int i = 0; i < k; ++i) {
        for (int x = prev + 1; x < c[i]; ++x) rank += binomial(m - x, k - i - 1);
        prev = c[i];
    }
    return rank;
}

search_result whole_set(const election& e, std::string strategy) {
    const committee all = committee::all(e.num_candidates());
    search_result r;
    r.found = all;
    r.best = all;
    r.cert = certify(e, all);
    r.strategy = std::move(strategy);
    r.stats.nodes = 1;
    return r;
}

void finish(search_result& r, const election& e, const committee& s, const rational_threshold& alpha) {
    r.best = s;
    r.cert = certify(e, s);
    if (is_alpha_undominated(e, s, alpha)) r.found = s;
}

// Pads `s` up to `size` members with the heaviest unused candidates of y (smaller id on ties).
committee pad(const committee& s, int size, const std::vector<candidate_id>& by_weight) {
    std::vector<candidate_id> members(s.members().begin(), s.members().end());
    for (candidate_id a : by_weight) {
        if (static_cast<int>(members.size()) >= size) break;
        if (!s.contains(a)) members.push_back(a);
    }
    return committee(std::move(members));
}

std::vector<candidate_id> by_weight(const candidate_lottery& y) {
    std::vector<candidate_id> ids(y.num_candidates());
    std::iota(ids.begin(), ids.end(), 1);
    std::stable_sort(ids.begin(), ids.end(), [&](candidate_id a, candidate_id b) { return y[a] > y[b]; });
    return ids;
}

void check_k(int k) {
    if (k < 1) throw input_error("committee size k must be positive");
}

} // namespace

certificate certify(const election& e, const committee& s) {
    const domination worst = max_domination(e, s);
    return {worst.candidate, worst.count, make_rational(worst.count, e.num_voters())};
}

search_result brute_force_search(const election& e, int k, const rational_threshold& alpha,
                                 const search_limits& limits) {
    check_k(k);
    const int m = e.num_candidates();
    const int n = e.num_voters();
    const int size = std::min(k, m);
    if (size == m) return whole_set(e, "brute");
    const std::uint64_t total = binomial(m, size);
    if (total > limits.node_budget)
        throw budget_error("brute_force_search: C(" + std::to_string(m) + "," + std::to_string(size) +
                           ") exceeds the node budget of " + std::to_string(limits.node_budget));

    search_result r;
    r.strategy = "brute";
    auto hit = find_first_combination(
        m, size, [&](const std::vector<candidate_id>& c) { return passes(max_dominator_count(e, c), n, alpha); },
        limits.threads);
    if (hit) {
        r.stats.nodes = combination_rank(*hit, m) + 1;
        finish(r, e, committee(std::move(*hit)), alpha);
        return r;
    }

    std::vector<candidate_id> best;
    int best_count = std::numeric_limits<int>::max();
    for_each_combination(m, size, [&](const std::vector<candidate_id>& c) {
        const int count = max_dominator_count(e, c);
        if (count < best_count) {
            best_count = count;
            best = c;
        }
        return true;
    });
    r.stats.nodes = total;
    finish(r, e, committee(std::move(best)), alpha);
    return r;
}

search_result greedy_halving(const election& e) {
    const int m = e.num_candidates();
    const int n = e.num_voters();
    // wins[a][b] = voters ranking a above b
    std::vector<int> wins(static_cast<std::size_t>(m) * m, 0);
    for (voter_id v = 1; v <= n; ++v) {
        const auto order = e.ranking_unchecked(v);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) ++wins[static_cast<std::size_t>(order[i] - 1) * m + order[j] - 1];
    }
    auto strictly = [&](candidate_id a, candidate_id b) { return 2 * wins[(a - 1) * m + b - 1] > n; };
    auto weakly = [&](candidate_id a, candidate_id b) { return 2 * wins[(a - 1) * m + b - 1] >= n; };

    std::vector<candidate_id> remaining(m);
    std::iota(remaining.begin(), remaining.end(), 1);
    std::vector<candidate_id> chosen;
    search_result r;
    r.strategy = "greedy";

    auto pick = [&](auto&& beats) {
        candidate_id best = 0;
        int best_deg = -1;
        for (candidate_id a : remaining) {
            int deg = 0;
            for (candidate_id b : remaining)
                if (b != a && beats(a, b)) ++deg;
            if (deg > best_deg) {
                best = a;
                best_deg = deg;
            }
        }
        return std::pair{best, best_deg};
    };

    while (!remaining.empty()) {
        ++r.stats.iterations;
        const int size = static_cast<int>(remaining.size());
        auto [c, deg] = pick(strictly);
        bool use_weak = deg < (size - 1) / 2;
        if (use_weak) {
            ++r.stats.fallbacks;
            c = pick(weakly).first;
        }
        chosen.push_back(c);
        std::erase_if(remaining, [&](candidate_id b) {
            return b == c || (use_weak ? weakly(c, b) : strictly(c, b));
        });
    }
    r.stats.nodes = chosen.size();
    finish(r, e, committee(std::move(chosen)), rational_threshold(1, 2));
    return r;
}

search_result lottery_search(const election& e, int k, const rational_threshold& alpha, const activation_spec& g,
                             int max_samples, std::uint64_t seed, const solver_options& opts) {
    check_k(k);
    if (max_samples < 1) throw input_error("lottery_search: max_samples must be positive");
    const int m = e.num_candidates();
    if (k >= m) return whole_set(e, "lottery");

    const lottery_result lot = solve_undominated_lottery(e, k, alpha, g, opts);
    const auto order = by_weight(lot.y);

    search_result r;
    r.strategy = "lottery";
    r.stats.iterations = static_cast<std::uint64_t>(lot.iterations);
    std::optional<committee> best;
    int best_count = std::numeric_limits<int>::max();
    for (int i = 0; i < max_samples; ++i) {
        const committee s = pad(sample_committee(lot.y, k, mix_seed(seed, static_cast<std::uint64_t>(i))), k, order);
        ++r.stats.samples;
        ++r.stats.nodes;
        const int count = max_dominator_count(e, s.members());
        if (passes(count, e.num_voters(), alpha)) {
            finish(r, e, s, alpha);
            return r;
        }
        if (count < best_count) {
            best_count = count;
            best = s;
        }
    }
    finish(r, e, *best, alpha);
    return r;
}

void recursive_params::validate() const {
    if (!(gamma > 0.0 && gamma < 1.0)) throw input_error("recursive_search: gamma must be in (0, 1)");
    if (!(beta > 0.0 && beta < 1.0)) throw input_error("recursive_search: beta must be in (0, 1)");
    if (!(beta < gamma)) throw input_error("recursive_search: beta must be smaller than gamma");
    if (resample_budget < 1) throw input_error("recursive_search: resample budget must be positive");
}

namespace {

struct recursion {
    const recursive_params& params;
    const solver_options& opts;
    search_stats& stats;

    std::vector<candidate_id> run(const election& sub, int k, std::uint64_t seed) {
        const int m = sub.num_candidates();
        if (k <= 0) return {};
        if (k >= m) {
            std::vector<candidate_id> all(m);
            std::iota(all.begin(), all.end(), 1);
            return all;
        }
        if (k == 1) {
            // best single candidate for these voters
            candidate_id best = 1;
            int best_count = std::numeric_limits<int>::max();
            for (candidate_id a = 1; a <= m; ++a) {
                const int count = max_dominator_count(sub, std::span<const candidate_id>(&a, 1));
                ++stats.nodes;
                if (count < best_count) {
                    best_count = count;
                    best = a;
                }
            }
            return {best};
        }

        const int block = static_cast<int>(std::ceil((1.0 - params.gamma) * k - 1e-12));
        const int rest = k - block;
        const double beta_hat = std::pow(params.beta, 1.0 / block);
        const activation_spec g = activation_spec::relu_comp(block, std::max(0.0, 2.0 * beta_hat - 1.0));

        lottery_result lot = [&] {
            try {
                return solve_undominated_lottery(sub, block, params.lottery_alpha, g, opts);
            } catch (const convergence_error& err) {
                return err.best();
            }
        }();
        stats.iterations += static_cast<std::uint64_t>(lot.iterations);
        const auto order = by_weight(lot.y);

        const int n = sub.num_voters();
        std::optional<committee> chosen;
        std::vector<voter_id> chosen_cut;
        for (int attempt = 0; attempt < params.resample_budget; ++attempt) {
            const committee s = pad(sample_committee(lot.y, block, mix_seed(seed, static_cast<std::uint64_t>(attempt))),
                                    block, order);
            ++stats.samples;
            std::vector<voter_id> cut;
            for (voter_id v = 1; v <= n; ++v)
                if (committee_rank_under_lottery(sub, lot.y, block, v, s) < params.beta) cut.push_back(v);
            if (!chosen || cut.size() < chosen_cut.size()) {
                chosen = s;
                chosen_cut = cut;
            }
            if (static_cast<double>(cut.size()) <= params.beta * n) break;
        }
        if (static_cast<double>(chosen_cut.size()) > params.beta * n) ++stats.fallbacks;

        std::vector<candidate_id> members(chosen->members().begin(), chosen->members().end());
        if (rest > 0 && !chosen_cut.empty()) {
            const election next = sub.restrict_voters(chosen_cut);
            const auto more = run(next, rest, mix_seed(seed, 0xfeedULL));
            members.insert(members.end(), more.begin(), more.end());
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        return members;
    }
};

} // namespace

search_result recursive_search(const election& e, int k, const rational_threshold& alpha,
                               const recursive_params& params, std::uint64_t seed, const solver_options& opts) {
    check_k(k);
    params.validate();
    if (k == 1) {
        search_result r = brute_force_search(e, 1, alpha);
        r.strategy = "recursive";
        return r;
    }
    if (k >= e.num_candidates()) return whole_set(e, "recursive");

    search_result r;
    r.strategy = "recursive";
    recursion rec{params, opts, r.stats};
    finish(r, e, committee(rec.run(e, k, mix_seed(seed, 1))), alpha);
    return r;
}

} // namespace undom
