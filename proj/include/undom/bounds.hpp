#pragma once

#include <string>
#include <vector>

#include "lottery.hpp"

namespace undom {

/// One row of the alpha-versus-k comparison.
struct bound_row {
    int k = 0;
    double lower = 0.0;  ///< 2/(k+1): below this, some election has no alpha-undominated k-committee
    double thm1 = 0.0;   ///< root of alpha / (1 - ln alpha) = 2/(k+1)
    double thm4 = 0.0;   ///< best alpha = t^k - t + 1 over shifted-ReLU activations
    double thm4_t = 0.0; ///< the shift t achieving thm4
    double dp = 0.0;     ///< recursive-composition bound
};

/// Smallest alpha in (0, 1] with alpha / (1 - ln alpha) >= 2/(k+1), by bisection.
double theorem1_alpha(int k);

struct relu_alpha {
    double alpha;
    double t;
};

/// Root in t of (k/(k+1)) ((t^k - t + 1)^((k+1)/k) - t^(k+1)) = (1 - t^2)/2 on
/// [0, k^(-1/(k-1))], returning alpha = t^k - t + 1. k = 1 gives alpha = 1, t = 0.
relu_alpha theorem4_alpha(int k);

struct stable_constant {
    double c;
    double gamma;
};

/// Minimum of 4 ln(1/gamma) / (1 - gamma)^2 over (0, 1), by golden-section search.
stable_constant theorem5_constant();
double theorem5_objective(double gamma);

/// 2/(k+1) as a double.
double lower_bound_alpha(int k);

enum class dp_base { thm1, thm4 };

/// Rows k = 1..k_max. dp(k) = min(base(k), min_{k' < k} (k'/k)^2 dp(k') + 4 ln(k/k') / (k - k')).
std::vector<bound_row> theorem7_table(int k_max, dp_base base = dp_base::thm1);

/// Smallest k in the table whose dp value is strictly below the base it was built on; 0 if none.
int first_dp_improvement(const std::vector<bound_row>& rows, dp_base base = dp_base::thm1);

/// Whether the integral of g over [0, alpha] is at least the integral of g(x^k) over
/// [1 - alpha, 1], both from closed forms.
bool meat_condition_holds(double alpha, int k, const activation_spec& g);

/// "k,lower,thm1,thm4,thm4_t,dp" plus one line per row, shortest round-trip decimals.
std::string bounds_csv(const std::vector<bound_row>& rows);

/// "k,thm4,lower,stable16": the three curves of the alpha-versus-k comparison plot.
std::string figure_csv(const std::vector<bound_row>& rows);

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

} // namespace undom
