#include "undom/lottery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "undom/errors.hpp"
#include "undom/rng.hpp"

namespace undom {

namespace {

// mass[(v-1)*m + a-1] = sum of y over the candidates v ranks below a.
void fill_masses(const election& e, const std::vector<double>& y, std::vector<double>& mass) {
    const int m = e.num_candidates();
    mass.resize(static_cast<std::size_t>(e.num_voters()) * m);
    for (voter_id v = 1; v <= e.num_voters(); ++v) {
        const auto order = e.ranking_unchecked(v);
        double* row = mass.data() + static_cast<std::size_t>(v - 1) * m;
        double acc = 0.0;
        for (int i = m - 1; i >= 0; --i) {
            row[order[i] - 1] = acc;
            acc += y[order[i] - 1];
        }
    }
}

best_response respond(const election& e, const std::vector<double>& mass, std::int64_t budget,
                      const activation_spec& g, bool want_voters) {
    const int m = e.num_candidates();
    const int n = e.num_voters();
    const auto take = static_cast<std::size_t>(std::clamp<std::int64_t>(budget, 0, n));
    best_response best;
    best.value = -1.0;
    std::vector<double> value(n);
    std::vector<voter_id> idx(n);
    for (candidate_id a = 1; a <= m; ++a) {
        for (int v = 0; v < n; ++v) value[v] = g.composed(mass[static_cast<std::size_t>(v) * m + a - 1]);
        std::iota(idx.begin(), idx.end(), 0);
        std::partial_sort(idx.begin(), idx.begin() + take, idx.end(),
                          [&](int x, int y) { return value[x] > value[y] || (value[x] == value[y] && x < y); });
        double sum = 0.0;
        for (std::size_t i = 0; i < take; ++i) sum += value[idx[i]];
        const double payoff = sum / n;
        if (payoff > best.value) {
            best.candidate = a;
            best.value = payoff;
            if (want_voters) {
                best.voters.assign(idx.begin(), idx.begin() + take);
                for (auto& v : best.voters) ++v;
            }
        }
    }
    return best;
}

void check_k(int k) {
    if (k < 1) throw input_error("committee size k must be positive");
}

void check_activation_matches(const activation_spec& g, int k) {
    if (g.kind != activation_kind::identity && g.k != k)
        throw input_error("activation " + g.str() + " was built for k=" + std::to_string(g.k) +
                          ", used with k=" + std::to_string(k));
}

} // namespace

activation_spec activation_spec::make(activation_kind kind, int k, double t) {
    if (k < 1) throw input_error("activation: k must be positive");
    if (kind == activation_kind::relu_comp) {
        if (!(t >= 0.0 && t < 1.0)) throw input_error("activation: relu shift t must be in [0, 1)");
    } else {
        t = 0.0;
    }
    return activation_spec{kind, k, t};
}

activation_spec activation_spec::parse(std::string_view text, int k) {
    if (text == "identity") return identity(k);
    if (text == "kth-root") return kth_root(k);
    if (text.starts_with("relu:")) {
        const std::string num(text.substr(5));
        std::size_t used = 0;
        double t = 0.0;
        try {
            t = std::stod(num, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != num.size()) throw input_error("activation: bad relu shift '" + num + "'");
        return relu_comp(k, t);
    }
    throw input_error("activation: expected identity, kth-root or relu:T, got '" + std::string(text) + "'");
}

std::string activation_spec::str() const {
    switch (kind) {
    case activation_kind::identity: return "identity";
    case activation_kind::kth_root: return "kth-root";
    case activation_kind::relu_comp: break;
    }
    return "relu:" + std::to_string(t);
}

double activation_spec::composed(double z) const {
    switch (kind) {
    case activation_kind::identity: return std::pow(z, k);
    case activation_kind::kth_root: return z;
    case activation_kind::relu_comp: break;
    }
    return std::max(0.0, z - t);
}

double activation_spec::composed_slope(double z) const {
    switch (kind) {
    case activation_kind::identity: return k == 1 ? 1.0 : k * std::pow(z, k - 1);
    case activation_kind::kth_root: return 1.0;
    case activation_kind::relu_comp: break;
    }
    return z >= t ? 1.0 : 0.0;
}

double activation_spec::integral_low(double alpha) const {
    const double kk = k;
    switch (kind) {
    case activation_kind::identity: return alpha * alpha / 2.0;
    case activation_kind::kth_root: return kk / (kk + 1.0) * std::pow(alpha, (kk + 1.0) / kk);
    case activation_kind::relu_comp: break;
    }
    const double tk = std::pow(t, kk);
    if (alpha <= tk) return 0.0;
    return kk / (kk + 1.0) * (std::pow(alpha, (kk + 1.0) / kk) - t * tk) - t * (alpha - tk);
}

double activation_spec::integral_high(double alpha) const {
    const double kk = k;
    switch (kind) {
    case activation_kind::identity: return (1.0 - std::pow(1.0 - alpha, kk + 1.0)) / (kk + 1.0);
    case activation_kind::kth_root: return (1.0 - (1.0 - alpha) * (1.0 - alpha)) / 2.0;
    case activation_kind::relu_comp: break;
    }
    const double lo = std::max(1.0 - alpha, t);
    return ((1.0 - t) * (1.0 - t) - (lo - t) * (lo - t)) / 2.0;
}

double activation_value(const activation_spec& g, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw input_error("activation_value: x must be in [0, 1]");
    switch (g.kind) {
    case activation_kind::identity: return x;
    case activation_kind::kth_root: return std::pow(x, 1.0 / g.k);
    case activation_kind::relu_comp: break;
    }
    return std::max(0.0, std::pow(x, 1.0 / g.k) - g.t);
}

candidate_lottery::candidate_lottery(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw input_error("candidate_lottery: empty");
    double total = 0.0;
    for (double x : w_) {
        if (!(x >= 0.0)) throw input_error("candidate_lottery: negative or NaN weight");
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-12) throw input_error("candidate_lottery: weights do not sum to 1");
}

candidate_lottery candidate_lottery::uniform(int m) {
    if (m < 1) throw input_error("candidate_lottery: m must be positive");
    return candidate_lottery(std::vector<double>(m, 1.0 / m));
}

candidate_lottery candidate_lottery::point_mass(int m, candidate_id a) {
    if (a < 1 || a > m) throw input_error("candidate_lottery: point mass outside 1..m");
    std::vector<double> w(m, 0.0);
    w[a - 1] = 1.0;
    return candidate_lottery(std::move(w));
}

double candidate_rank_under_lottery(const election& e, const candidate_lottery& y, int k, voter_id v,
                                    candidate_id a) {
    check_k(k);
    e.check_voter(v);
    e.check_candidate(a);
    if (y.num_candidates() != e.num_candidates()) throw input_error("lottery size does not match election");
    const auto order = e.ranking_unchecked(v);
    double below = 0.0;
    for (int i = e.num_candidates() - 1; order[i] != a; --i) below += y[order[i]];
    return std::pow(below, k);
}

double committee_rank_under_lottery(const election& e, const candidate_lottery& y, int k, voter_id v,
                                    const committee& s) {
    check_k(k);
    e.check_voter(v);
    s.check_against(e);
    if (y.num_candidates() != e.num_candidates()) throw input_error("lottery size does not match election");
    if (k > 170) throw input_error("committee_rank_under_lottery: k too large");

    const auto pos = e.positions(v);
    const auto order = e.ranking_unchecked(v);
    std::vector<int> spos;
    for (candidate_id a : s.members()) spos.push_back(pos[a - 1]);
    std::sort(spos.begin(), spos.end());
    const int r = static_cast<int>(spos.size());

    // suffix[i] = mass at positions >= i
    const int m = e.num_candidates();
    std::vector<double> suffix(m + 1, 0.0);
    for (int i = m - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + y[order[i]];

    // Pr[k draws land in A or in mass `rest`, hitting every member of A]
    //   = k! [x^k] exp(rest x) prod_{a in A} (exp(y_a x) - 1).
    // `poly` holds the product for A = S's j best members, truncated at degree k.
    std::vector<double> poly(k + 1, 0.0), next(k + 1);
    poly[0] = 1.0;
    std::vector<double> fact(k + 1, 1.0);
    for (int i = 1; i <= k; ++i) fact[i] = fact[i - 1] * i;
    auto draw_probability = [&](double rest) {
        double total = 0.0;
        for (int i = 0; i <= k; ++i)
            if (poly[i] != 0.0) total += poly[i] * std::pow(rest, k - i) / fact[k - i];
        return total * fact[k];
    };

    // The draw agrees with S on its j best members and then either stops or continues
    // strictly below S's (j+1)-th member; or it is exactly S.
    double rank = 0.0;
    for (int j = 0; j <= r; ++j) {
        rank += draw_probability(j < r ? suffix[spos[j] + 1] : 0.0);
        if (j == r) break;
        const double ya = y[order[spos[j]]];
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i <= k; ++i) {
            if (poly[i] == 0.0) continue;
            double term = 1.0;
            for (int d = 1; i + d <= k; ++d) {
                term *= ya / d;
                next[i + d] += poly[i] * term;
            }
        }
        poly.swap(next);
    }
    return std::clamp(rank, 0.0, 1.0);
}

best_response attacker_best_response(const election& e, const candidate_lottery& y, int k,
                                     const rational_threshold& alpha, const activation_spec& g) {
    check_k(k);
    check_activation_matches(g, k);
    if (y.num_candidates() != e.num_candidates()) throw input_error("lottery size does not match election");
    std::vector<double> mass;
    fill_masses(e, y.weights(), mass);
    const activation_spec h = g.kind == activation_kind::identity ? activation_spec::identity(k) : g;
    return respond(e, mass, alpha.floor_times(e.num_voters()), h, true);
}

convergence_error::convergence_error(lottery_result best)
    : std::runtime_error("lottery solver did not reach the target value " + std::to_string(best.target_value) +
                         " (best " + std::to_string(best.achieved_value) + " after " +
                         std::to_string(best.iterations) + " iterations)"),
      best_(std::move(best)) {}

lottery_result solve_undominated_lottery(const election& e, int k, const rational_threshold& alpha,
                                         const activation_spec& g, const solver_options& opts) {
    check_k(k);
    check_activation_matches(g, k);
    if (opts.max_iterations < 1) throw input_error("solver: max_iterations must be positive");
    if (!(opts.tolerance > 0.0)) throw input_error("solver: tolerance must be positive");
    if (!(opts.step_scale > 0.0)) throw input_error("solver: step_scale must be positive");

    const int m = e.num_candidates();
    const int n = e.num_voters();
    const activation_spec h = g.kind == activation_kind::identity ? activation_spec::identity(k) : g;
    const std::int64_t budget = alpha.floor_times(n);
    const double target = h.integral_high(alpha.to_double());

    std::vector<double> logw(m, 0.0);
    if (opts.seed != 0) {
        engine rng(opts.seed);
        for (double& x : logw) x = std::log(0.5 + uniform_unit(rng));
    }
    std::vector<double> y(m), best_y(m), mass, grad(m);
    auto normalise = [&] {
        const double top = *std::max_element(logw.begin(), logw.end());
        double total = 0.0;
        for (int b = 0; b < m; ++b) total += (y[b] = std::exp(logw[b] - top));
        for (int b = 0; b < m; ++b) y[b] /= total;
        for (int b = 0; b < m; ++b) logw[b] -= top;
    };
    normalise();

    double best_value = std::numeric_limits<double>::infinity();
    int it = 0;
    while (it < opts.max_iterations) {
        ++it;
        fill_masses(e, y, mass);
        const best_response br = respond(e, mass, budget, h, true);
        if (br.value < best_value) {
            best_value = br.value;
            best_y = y;
            if (opts.stop_at_target && best_value <= target) break;
        }

        std::fill(grad.begin(), grad.end(), 0.0);
        const candidate_id a = br.candidate;
        for (voter_id v : br.voters) {
            const double slope = h.composed_slope(mass[static_cast<std::size_t>(v - 1) * m + a - 1]) / n;
            if (slope == 0.0) continue;
            const auto order = e.ranking_unchecked(v);
            for (int i = m - 1; order[i] != a; --i) grad[order[i] - 1] += slope;
        }
        const double eta = opts.step_scale / std::sqrt(static_cast<double>(it));
        for (int b = 0; b < m; ++b) logw[b] -= eta * grad[b];
        normalise();
    }

    // renormalise away rounding so the lottery invariant holds exactly enough
    const double total = std::accumulate(best_y.begin(), best_y.end(), 0.0);
    for (double& x : best_y) x /= total;

    lottery_result result{candidate_lottery(best_y), best_value, target, it, best_value <= target + opts.tolerance};
    if (!result.converged) throw convergence_error(std::move(result));
    return result;
}

double expected_domination(const election& e, const candidate_lottery& y, int k, candidate_id a) {
    double total = 0.0;
    for (voter_id v = 1; v <= e.num_voters(); ++v) total += candidate_rank_under_lottery(e, y, k, v, a);
    return total / e.num_voters();
}

committee sample_committee(const candidate_lottery& y, int k, std::uint64_t seed) {
    check_k(k);
    engine rng(seed);
    const auto& w = y.weights();
    int last_positive = 0;
    for (int b = 0; b < static_cast<int>(w.size()); ++b)
        if (w[b] > 0.0) last_positive = b;
    std::vector<candidate_id> picks;
    picks.reserve(k);
    for (int i = 0; i < k; ++i) {
        const double u = uniform_unit(rng);
        double cum = 0.0;
        int chosen = last_positive;
        for (int b = 0; b < static_cast<int>(w.size()); ++b) {
            cum += w[b];
            if (u < cum && w[b] > 0.0) { chosen = b; break; }
        }
        picks.push_back(chosen + 1);
    }
    std::sort(picks.begin(), picks.end());
    picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
    return committee(std::move(picks));
}

committee_distribution<double> expand_product(const candidate_lottery& y, int k) {
    check_k(k);
    std::vector<candidate_id> support;
    for (candidate_id a = 1; a <= y.num_candidates(); ++a)
        if (y[a] > 0.0) support.push_back(a);
    const double ordered = std::pow(static_cast<double>(support.size()), k);
    if (ordered > static_cast<double>(1u << 20)) throw budget_error("expand_product: support^k too large");

    std::map<committee, double> acc;
    std::vector<std::size_t> digits(k, 0);
    for (;;) {
        double p = 1.0;
        std::vector<candidate_id> members;
        for (std::size_t d : digits) {
            p *= y[support[d]];
            members.push_back(support[d]);
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        acc[committee(std::move(members))] += p;

        int i = k - 1;
        while (i >= 0 && ++digits[i] == support.size()) digits[i--] = 0;
        if (i < 0) break;
    }
    std::vector<committee_distribution<double>::entry> entries(acc.begin(), acc.end());
    double total = 0.0;
    for (const auto& [s, w] : entries) total += w;
    for (auto& [s, w] : entries) w /= total;
    return committee_distribution<double>(std::move(entries));
}

} // namespace undom
