#include "undom/bounds.hpp"

#include <charconv>
#include <cmath>

#include "undom/errors.hpp"

namespace undom {

namespace {

void check_k(int k) {
    if (k < 1) throw input_error("k must be at least 1");
}

// Bisection to machine precision on a bracket where f(lo) and f(hi) differ in sign.
template <typename F>
double bisect(F f, double lo, double hi) {
    const bool lo_positive = f(lo) > 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if ((f(mid) > 0.0) == lo_positive)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double relu_condition(double t, int k) {
    const double kk = k;
    const double alpha = std::pow(t, kk) - t + 1.0;
    return kk / (kk + 1.0) * (std::pow(alpha, (kk + 1.0) / kk) - std::pow(t, kk + 1.0)) - (1.0 - t * t) / 2.0;
}

} // namespace

double theorem1_alpha(int k) {
    check_k(k);
    if (k == 1) return 1.0;
    const double target = 2.0 / (k + 1.0);
    return bisect([&](double a) { return a / (1.0 - std::log(a)) - target; }, 1e-300, 1.0);
}

relu_alpha theorem4_alpha(int k) {
    check_k(k);
    if (k == 1) return {1.0, 0.0};
    // alpha(t) = t^k - t + 1 decreases up to t* = k^(-1/(k-1)); the condition holds at
    // t = 0 and fails at t*, and its root there is the smallest admissible alpha.
    const double t_star = std::pow(static_cast<double>(k), -1.0 / (k - 1.0));
    const double t = bisect([&](double x) { return relu_condition(x, k); }, 0.0, t_star);
    return {std::pow(t, k) - t + 1.0, t};
}

double theorem5_objective(double gamma) { return 4.0 * std::log(1.0 / gamma) / ((1.0 - gamma) * (1.0 - gamma)); }

stable_constant theorem5_constant() {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.01, b = 0.99;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = theorem5_objective(c), fd = theorem5_objective(d);
    while (b - a > 1e-10) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = theorem5_objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = theorem5_objective(d);
        }
    }
    const double gamma = 0.5 * (a + b);
    return {theorem5_objective(gamma), gamma};
}

double lower_bound_alpha(int k) {
    check_k(k);
    return 2.0 / (k + 1.0);
}

std::vector<bound_row> theorem7_table(int k_max, dp_base base) {
    check_k(k_max);
    std::vector<bound_row> rows;
    rows.reserve(k_max);
    for (int k = 1; k <= k_max; ++k) {
        bound_row row;
        row.k = k;
        row.lower = lower_bound_alpha(k);
        row.thm1 = theorem1_alpha(k);
        const relu_alpha r = theorem4_alpha(k);
        row.thm4 = r.alpha;
        row.thm4_t = r.t;
        double dp = base == dp_base::thm1 ? row.thm1 : row.thm4;
        for (int kp = 1; kp < k; ++kp) {
            const double ratio = static_cast<double>(kp) / k;
            const double candidate =
                ratio * ratio * rows[kp - 1].dp + 4.0 * std::log(static_cast<double>(k) / kp) / (k - kp);
            if (candidate < dp) dp = candidate;
        }
        row.dp = dp;
        rows.push_back(row);
    }
    return rows;
}

int first_dp_improvement(const std::vector<bound_row>& rows, dp_base base) {
    for (const auto& row : rows)
        if (row.dp < (base == dp_base::thm1 ? row.thm1 : row.thm4)) return row.k;
    return 0;
}

bool meat_condition_holds(double alpha, int k, const activation_spec& g) {
    check_k(k);
    if (!(alpha > 0.0 && alpha <= 1.0)) throw input_error("alpha must be in (0, 1]");
    if (g.kind != activation_kind::identity && g.k != k)
        throw input_error("activation " + g.str() + " does not match k=" + std::to_string(k));
    const activation_spec h = g.kind == activation_kind::identity ? activation_spec::identity(k) : g;
    return h.integral_low(alpha) >= h.integral_high(alpha);
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string bounds_csv(const std::vector<bound_row>& rows) {
    std::string out = "k,lower,thm1,thm4,thm4_t,dp\n";
    for (const auto& r : rows)
        out += std::to_string(r.k) + "," + format_double(r.lower) + "," + format_double(r.thm1) + "," +
               format_double(r.thm4) + "," + format_double(r.thm4_t) + "," + format_double(r.dp) + "\n";
    return out;
}

std::string figure_csv(const std::vector<bound_row>& rows) {
    std::string out = "k,thm4,lower,stable16\n";
    for (const auto& r : rows)
        out += std::to_string(r.k) + "," + format_double(r.thm4) + "," + format_double(r.lower) + "," +
               format_double(16.0 / r.k) + "\n";
    return out;
}

} // namespace undom
