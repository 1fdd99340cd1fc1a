#include <doctest.h>

#include "undom/profiles.hpp"
#include "undom/rng.hpp"
#include "undom/verify.hpp"

using namespace undom;

namespace {

const election cyclic6 = gen_cyclic(6);

} // namespace

TEST_CASE("cycle-product lower bound examples") {
    const auto r = verify_theorem6(2, 5);
    CHECK(r.passed);
    CHECK(r.suite == "thm6");
    CHECK(r.cases.size() == 105);
    for (const auto& c : r.cases) CHECK(c.quantity >= make_rational(8, 15));

    const auto singles = verify_theorem6(1, 3);
    CHECK(singles.passed);
    CHECK(singles.cases.size() == 6);
    for (const auto& c : singles.cases) CHECK(c.quantity * 6 >= 4);

    const auto small = verify_theorem6(2, 2);
    CHECK(small.passed);
    CHECK(small.cases.front().bound == make_rational(1, 3));

    CHECK_THROWS_AS(verify_theorem6(2, 1), input_error);
    CHECK_THROWS_AS(verify_theorem6(3, 4, {10, 1}), budget_error);
}

TEST_CASE("property: cycle-product lower bound over the small grid") {
    for (int k = 1; k <= 3; ++k)
        for (int t = 2; t <= 5; ++t) {
            if ((k + 1) * t > 16) continue;
            const auto r = verify_theorem6(k, t);
            REQUIRE(r.passed);
            for (const auto& c : r.cases) REQUIRE(c.margin >= 0);
        }
}

TEST_CASE("uniform-committee tightness") {
    auto all_equal = [](const verification_report& r, const rational& value) {
        for (const auto& c : r.cases)
            if (c.quantity != value || c.margin != 0) return false;
        return r.passed;
    };
    CHECK(all_equal(verify_cor1_tightness(3, 1), make_rational(1, 3)));
    CHECK(all_equal(verify_cor1_tightness(2, 1), make_rational(1, 4)));
    CHECK(all_equal(verify_cor1_tightness(4, 2), make_rational(1, 6)));
    for (int m = 2; m <= 6; ++m)
        for (int k = 1; k < m; ++k) {
            const auto r = verify_cor1_tightness(m, k);
            REQUIRE(r.passed);
            REQUIRE(r.cases.size() == static_cast<std::size_t>(m));
        }
    CHECK_THROWS_AS(verify_cor1_tightness(7, 2), input_error);
    CHECK_THROWS_AS(verify_cor1_tightness(4, 4), input_error);
}

TEST_CASE("distribution parsing") {
    const auto d = parse_distribution("1,4=9/20 2,5=7/20; 3,6=1/5");
    REQUIRE(d.support().size() == 3);
    CHECK(d.support()[2].first == committee{3, 6});
    CHECK(d.support()[2].second == make_rational(1, 5));
    const auto decimal = parse_distribution("1,4=0.45 2,5=0.35 3,6=0.2");
    CHECK(decimal.support()[0].second == make_rational(9, 20));
    CHECK_THROWS_AS(parse_distribution("1,4=1/2"), input_error);
    CHECK_THROWS_AS(parse_distribution("1,4"), input_error);
    CHECK_THROWS_AS(parse_distribution("1,4=x 2=1/2"), input_error);
}

TEST_CASE("low-rank mass: reference configuration") {
    const auto d = parse_distribution("1,4=9/20 2,5=7/20 3,6=1/5");
    const auto r = verify_claim_high(cyclic6, d, {1, 2}, activation_spec::identity());
    CHECK(r.passed);
    REQUIRE(r.cases.size() == 1);
    CHECK(r.cases[0].exact);
    CHECK(r.cases[0].bound == make_rational(1, 8));
    CHECK(r.cases[0].margin > 0);
}

TEST_CASE("low-rank mass: hand-computed cases") {
    const committee_distribution<rational> point({{committee{2, 5}, rational(1)}});
    const auto r = verify_claim_high(cyclic6, point, {1, 1}, activation_spec::identity());
    CHECK(r.cases[0].quantity == 1);
    CHECK(r.cases[0].margin == make_rational(1, 2));

    // {1,4} and {3,6} at 1/2 each: per-voter ranks sum to 4 and 5 over the six voters
    const auto halves = parse_distribution("1,4=1/2 3,6=1/2");
    const auto h = verify_claim_high(cyclic6, halves, {1, 1}, activation_spec::identity());
    CHECK(h.cases[0].quantity == make_rational(3, 4));
    CHECK(h.passed);

    CHECK_THROWS_AS(verify_claim_high(cyclic6, halves, {1, 4}, activation_spec::identity()), input_error);
}

TEST_CASE("property: low-rank mass exceeds the integral for solver lotteries") {
    int checked = 0;
    for (int trial = 0; trial < 24; ++trial) {
        const int m = 2 + trial % 4;
        const int k = 1 + trial % 2;
        const int n = 2 * (1 + trial % 4);
        const election e = gen_impartial_culture(n, m, 3100 + trial);
        for (const auto& g : {activation_spec::identity(k), activation_spec::kth_root(k),
                              activation_spec::relu_comp(k, 0.1)}) {
            for (const rational_threshold alpha : {rational_threshold(1, 2), rational_threshold(1, 1)}) {
                const auto y = solve_undominated_lottery(e, k, alpha, g).y;
                const auto r = verify_claim_high(e, expand_product(y, k), alpha, g);
                REQUIRE(r.passed);
                REQUIRE_FALSE(r.cases[0].exact);
                ++checked;
            }
        }
    }
    CHECK(checked == 144);
}
