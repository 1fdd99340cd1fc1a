#pragma once

#include <string>
#include <vector>

#include "core.hpp"
#include "lottery.hpp"
#include "rational.hpp"

namespace undom {

/// One checked inequality or equality. `margin` is signed so that a passing case has
/// margin >= 0 (equality suites) or > 0 (strict suites).
struct verification_case {
    std::string instance;
    rational quantity;
    rational bound;
    rational margin;
    bool exact = true; ///< false when the numbers are binary64 values converted to rationals
    bool ok = false;
};

struct verification_report {
    std::string suite;
    bool passed = false;
    std::vector<verification_case> cases;
};

/// Every size-k committee of the (k+1) x t cycle product must have an outside candidate
/// preferred to it by at least count with count*(k+1)*t >= 2*(t-1)*n.
verification_report verify_theorem6(int k, int t, const search_limits& limits = {});

/// On the full-factorial election over m candidates with the uniform distribution over
/// size-k committees, each candidate's expected domination fraction equals (1 - k/m)/(k+1).
verification_report verify_cor1_tightness(int m, int k);

/// For each committee S of d, sum g(rank_v(S)) over the floor(alpha n) voters with the
/// smallest ranks (ties by voter id), divide by n and average over d. Passes when the result
/// strictly exceeds the integral of g over [0, alpha]. Exact when g is the identity and W is
/// rational; otherwise evaluated in binary64. Throws input_error unless alpha*n is integral.
template <typename W>
verification_report verify_claim_high(const election& e, const committee_distribution<W>& d,
                                      const rational_threshold& alpha, const activation_spec& g);

extern template verification_report verify_claim_high<rational>(const election&, const committee_distribution<rational>&,
                                                                const rational_threshold&, const activation_spec&);
extern template verification_report verify_claim_high<double>(const election&, const committee_distribution<double>&,
                                                              const rational_threshold&, const activation_spec&);

/// Parses "1,4=9/20 2,5=7/20 3,6=1/5" (whitespace- or ';'-separated entries).
committee_distribution<rational> parse_distribution(std::string_view text);

} // namespace undom
