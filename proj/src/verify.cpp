#include "undom/verify.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "undom/combinatorics.hpp"
#include "undom/errors.hpp"
#include "undom/profiles.hpp"

namespace undom {

namespace {

void finish(verification_report& r) {
    r.passed = std::all_of(r.cases.begin(), r.cases.end(), [](const verification_case& c) { return c.ok; });
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// "P/Q", "P" or a plain decimal such as "0.45", read exactly.
rational parse_weight(const std::string& text) {
    auto digits = [](const std::string& s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
    };
    if (const auto slash = text.find('/'); slash != std::string::npos) {
        const std::string p = text.substr(0, slash), q = text.substr(slash + 1);
        if (!digits(p) || !digits(q)) throw input_error("bad weight '" + text + "'");
        const big_int den(q);
        if (den == 0) throw input_error("bad weight '" + text + "': zero denominator");
        return rational(big_int(p), den);
    }
    if (const auto dot = text.find('.'); dot != std::string::npos) {
        std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!digits(whole) || !digits(frac)) throw input_error("bad weight '" + text + "'");
        big_int scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        return rational(big_int(whole) * scale + big_int(frac), scale);
    }
    if (!digits(text)) throw input_error("bad weight '" + text + "'");
    return rational(big_int(text));
}

rational exact(double x) { return rational(x); }

} // namespace

verification_report verify_theorem6(int k, int t, const search_limits& limits) {
    if (k < 1) throw input_error("verify_theorem6: k must be positive");
    if (t < 2) throw input_error("verify_theorem6: t must be at least 2");
    const int m = (k + 1) * t;
    if (binomial(m, k) > limits.node_budget)
        throw budget_error("verify_theorem6: C(" + std::to_string(m) + "," + std::to_string(k) +
                           ") exceeds the node budget");
    const election e = gen_cycle_product(k + 1, t);
    const std::int64_t n = e.num_voters();
    const std::int64_t need = 2LL * (t - 1) * n; // count * (k+1) * t must reach this

    verification_report r;
    r.suite = "thm6";
    for_each_combination(m, k, [&](const std::vector<candidate_id>& c) {
        const std::int64_t count = max_dominator_count(e, c);
        verification_case vc;
        vc.instance = "cycle_product(" + std::to_string(k + 1) + "," + std::to_string(t) + ") S={" +
                      committee(c).str() + "}";
        vc.quantity = make_rational(count, n);
        vc.bound = make_rational(need, n * (k + 1) * t);
        vc.margin = vc.quantity - vc.bound;
        vc.ok = count * (k + 1) * t >= need;
        r.cases.push_back(std::move(vc));
        return true;
    });
    finish(r);
    return r;
}

verification_report verify_cor1_tightness(int m, int k) {
    if (m < 2 || m > 6) throw input_error("verify_cor1_tightness: m must be in [2, 6]");
    if (k < 1 || k >= m) throw input_error("verify_cor1_tightness: k must be in [1, m)");
    const election e = gen_full_factorial(m);
    const std::int64_t n = e.num_voters();
    const std::int64_t committees = static_cast<std::int64_t>(binomial(m, k));

    std::vector<std::int64_t> totals(m, 0);
    for_each_combination(m, k, [&](const std::vector<candidate_id>& c) {
        const auto counts = dominator_counts(e, committee(c));
        for (int a = 0; a < m; ++a) totals[a] += counts[a];
        return true;
    });

    verification_report r;
    r.suite = "cor1";
    const rational expected = make_rational(m - k, static_cast<std::int64_t>(m) * (k + 1));
    for (candidate_id a = 1; a <= m; ++a) {
        verification_case vc;
        vc.instance = "factorial(" + std::to_string(m) + ") k=" + std::to_string(k) + " a=" + std::to_string(a);
        vc.quantity = make_rational(totals[a - 1], n * committees);
        vc.bound = expected;
        vc.margin = vc.quantity - vc.bound;
        vc.ok = vc.margin == 0;
        r.cases.push_back(std::move(vc));
    }
    finish(r);
    return r;
}

template <typename W>
verification_report verify_claim_high(const election& e, const committee_distribution<W>& d,
                                      const rational_threshold& alpha, const activation_spec& g) {
    d.check_against(e);
    const std::int64_t n = e.num_voters();
    if ((static_cast<std::int64_t>(alpha.numerator()) * n) % alpha.denominator() != 0)
        throw input_error("verify_claim_high: alpha * n must be an integer");
    const std::size_t take = static_cast<std::size_t>(alpha.floor_times(n));
    constexpr bool exact_mode_possible = std::is_same_v<W, rational>;
    const bool exact_mode = exact_mode_possible && g.kind == activation_kind::identity;

    W total{0};
    double total_float = 0.0;
    for (const auto& [s, w] : d.support()) {
        std::vector<std::pair<W, voter_id>> ranks;
        ranks.reserve(n);
        for (voter_id v = 1; v <= n; ++v) ranks.emplace_back(rank_committee(e, d, v, s), v);
        std::sort(ranks.begin(), ranks.end());
        if (exact_mode) {
            W sum{0};
            for (std::size_t i = 0; i < take; ++i) sum += ranks[i].first;
            total += w * sum;
        } else {
            double sum = 0.0;
            // binary64 ranks can overshoot 1 by rounding
            for (std::size_t i = 0; i < take; ++i)
                sum += activation_value(g, std::clamp(to_double(ranks[i].first), 0.0, 1.0));
            total_float += to_double(w) * sum;
        }
    }

    verification_case vc;
    std::ostringstream name;
    name << "n=" << n << " m=" << e.num_candidates() << " support=" << d.support().size()
         << " alpha=" << alpha.str() << " g=" << g.str();
    vc.instance = name.str();
    if (exact_mode) {
        if constexpr (exact_mode_possible) {
            vc.quantity = total / n;
            vc.bound = alpha.value() * alpha.value() / 2;
        }
    } else {
        vc.exact = false;
        vc.quantity = exact(total_float / static_cast<double>(n));
        vc.bound = exact(g.integral_low(alpha.to_double()));
    }
    vc.margin = vc.quantity - vc.bound;
    vc.ok = vc.margin > 0;

    verification_report r;
    r.suite = "claim-high";
    r.cases.push_back(std::move(vc));
    finish(r);
    return r;
}

template verification_report verify_claim_high<rational>(const election&, const committee_distribution<rational>&,
                                                         const rational_threshold&, const activation_spec&);
template verification_report verify_claim_high<double>(const election&, const committee_distribution<double>&,
                                                       const rational_threshold&, const activation_spec&);

committee_distribution<rational> parse_distribution(std::string_view text) {
    std::string normalized(text);
    std::replace(normalized.begin(), normalized.end(), ';', ' ');
    std::istringstream in(normalized);
    std::vector<std::pair<committee, rational>> support;
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw input_error("distribution entry '" + token + "' lacks '='");
        support.emplace_back(committee::parse(trim(std::string_view(token).substr(0, eq))),
                             parse_weight(trim(std::string_view(token).substr(eq + 1))));
    }
    return committee_distribution<rational>(std::move(support));
}

} // namespace undom
