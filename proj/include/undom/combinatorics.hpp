#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "election.hpp"

namespace undom {

/// C(n, k), saturating at uint64 max.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t num = n - k + i;
        // r * num / i is exact at every step; guard the multiplication.
        if (r > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
        r = r * num / i;
    }
    return r;
}

/// Advances `c` (strictly increasing ids in 1..m) to the next combination in lexicographic
/// order. Returns false after the last one.
inline bool next_combination(std::vector<candidate_id>& c, int m) {
    const int k = static_cast<int>(c.size());
    int i = k - 1;
    while (i >= 0 && c[i] == m - k + i + 1) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

/// Calls f(members) for every k-subset of 1..m in lexicographic order; stops early if f
/// returns false.
template <typename F>
void for_each_combination(int m, int k, F&& f) {
    if (k < 1 || k > m) return;
    std::vector<candidate_id> c(k);
    for (int i = 0; i < k; ++i) c[i] = i + 1;
    do {
        if (!f(static_cast<const std::vector<candidate_id>&>(c))) return;
    } while (next_combination(c, m));
}

/// Lexicographically smallest k-subset of 1..m satisfying pred, or nullopt.
///
/// Work is split by the smallest member across `threads` workers. A shared "best leading
/// member" lets later blocks bail out early; the answer is the same for every thread count.
template <typename Pred>
std::optional<std::vector<candidate_id>> find_first_combination(int m, int k, Pred pred,
                                                                unsigned threads = 1) {
    if (k < 1 || k > m) return std::nullopt;
    const int blocks = m - k + 1;
    std::vector<std::optional<std::vector<candidate_id>>> found(blocks);
    std::atomic<int> best_lead{std::numeric_limits<int>::max()};
    std::atomic<int> next_block{0};

    auto worker = [&] {
        for (;;) {
            const int b = next_block.fetch_add(1);
            if (b >= blocks) return;
            const int lead = b + 1;
            if (lead > best_lead.load()) continue;
            std::vector<candidate_id> c(k);
            for (int i = 0; i < k; ++i) c[i] = lead + i;
            do {
                if (c[0] != lead || lead > best_lead.load()) break;
                if (pred(static_cast<const std::vector<candidate_id>&>(c))) {
                    found[b] = c;
                    int cur = best_lead.load();
                    while (lead < cur && !best_lead.compare_exchange_weak(cur, lead)) {}
                    break;
                }
            } while (next_combination(c, m));
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    }
    for (auto& f : found)
        if (f) return f;
    return std::nullopt;
}

} // namespace undom
