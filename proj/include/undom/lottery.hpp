#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "election.hpp"
#include "rational.hpp"

namespace undom {

enum class activation_kind { identity, kth_root, relu_comp };

/// An activation g from the fixed catalogue, always used through h(x) = g(x^k):
///
///   identity   g(x) = x                       h(x) = x^k
///   kth_root   g(x) = x^(1/k)                 h(x) = x
///   relu_comp  g(x) = max(0, x^(1/k) - t)     h(x) = max(0, x - t)
///
/// Every entry has h non-constant, non-decreasing and convex on [0, 1].
struct activation_spec {
    activation_kind kind = activation_kind::identity;
    int k = 1;
    double t = 0.0; ///< relu_comp only, in [0, 1)

    static activation_spec identity(int k = 1) { return make(activation_kind::identity, k, 0.0); }
    static activation_spec kth_root(int k) { return make(activation_kind::kth_root, k, 0.0); }
    static activation_spec relu_comp(int k, double t) { return make(activation_kind::relu_comp, k, t); }
    static activation_spec make(activation_kind kind, int k, double t);

    /// "identity", "kth-root", "relu:T"
    static activation_spec parse(std::string_view text, int k);
    std::string str() const;

    /// h(z) = g(z^k), evaluated without the round trip through z^k.
    double composed(double z) const;
    /// Right derivative of h at z (a fixed subgradient at kinks).
    double composed_slope(double z) const;

    /// Closed-form integral of g over [0, alpha].
    double integral_low(double alpha) const;
    /// Closed-form integral of g(x^k) over [1 - alpha, 1].
    double integral_high(double alpha) const;
};

/// g(x) for x in [0, 1]; throws input_error outside.
double activation_value(const activation_spec& g, double x);

/// A probability vector over candidates 1..m.
class candidate_lottery {
public:
    explicit candidate_lottery(std::vector<double> weights);
    static candidate_lottery uniform(int m);
    static candidate_lottery point_mass(int m, candidate_id a);

    int num_candidates() const noexcept { return static_cast<int>(w_.size()); }
    double operator[](candidate_id a) const noexcept { return w_[a - 1]; }
    const std::vector<double>& weights() const noexcept { return w_; }

private:
    std::vector<double> w_;
};

/// (sum of y over candidates v ranks below a)^k: Pr[a beats k i.i.d. draws from y].
double candidate_rank_under_lottery(const election& e, const candidate_lottery& y, int k, voter_id v,
                                    candidate_id a);

/// Pr_{S' ~ y^k}[S weakly preferred to S' by v], in closed form from y (k <= 170).
double committee_rank_under_lottery(const election& e, const candidate_lottery& y, int k, voter_id v,
                                    const committee& s);

struct best_response {
    candidate_id candidate = 0;
    std::vector<voter_id> voters; ///< by decreasing g(rank), then voter id
    double value = 0.0;           ///< (1/n) * sum over voters of g(rank_v(candidate))
};

/// The confined attacker's pure best reply to y: a candidate and at most floor(alpha n)
/// voters maximising the activated rank mass. Ties go to smaller ids.
best_response attacker_best_response(const election& e, const candidate_lottery& y, int k,
                                     const rational_threshold& alpha, const activation_spec& g);

struct solver_options {
    int max_iterations = 20000;
    double tolerance = 1e-4;
    double step_scale = 1.0;
    std::uint64_t seed = 0;     ///< 0 starts from the uniform lottery, otherwise from a seeded interior point
    bool stop_at_target = true; ///< return as soon as an iterate reaches the target
};

struct lottery_result {
    candidate_lottery y;
    double achieved_value = 0.0; ///< attacker's best-response value against y
    double target_value = 0.0;   ///< integral of g(x^k) over [1 - alpha, 1]
    int iterations = 0;
    bool converged = false;
};

/// Thrown when the target is not met within the iteration budget; carries the best iterate.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(lottery_result best);
    const lottery_result& best() const noexcept { return best_; }

private:
    lottery_result best_;
};

/// Entropic mirror descent on the candidate simplex against the confined attacker.
/// Succeeds once the best iterate's value is within `tolerance` of the target.
lottery_result solve_undominated_lottery(const election& e, int k, const rational_threshold& alpha,
                                         const activation_spec& g, const solver_options& opts = {});

/// E_{S ~ y^k}[|a > S| / n], evaluated exactly from y.
double expected_domination(const election& e, const candidate_lottery& y, int k, candidate_id a);

/// k i.i.d. draws from y, deduplicated. Each draw is one uniform_unit() against the
/// cumulative weights, on an mt19937_64 seeded with `seed`.
committee sample_committee(const candidate_lottery& y, int k, std::uint64_t seed);

/// The explicit distribution of the deduplicated set of k i.i.d. draws from y. Small
/// instances only (support^k <= 2^20 ordered draws).
committee_distribution<double> expand_product(const candidate_lottery& y, int k);

} // namespace undom
