#include <doctest.h>

#include <filesystem>
#include <set>

#include "undom/combinatorics.hpp"
#include "undom/core.hpp"
#include "undom/errors.hpp"
#include "undom/profiles.hpp"

using namespace undom;

namespace {

template <typename F>
profile_error catch_profile_error(F&& f) {
    try {
        f();
    } catch (const profile_error& e) {
        return e;
    }
    FAIL("expected profile_error");
    return profile_error(profile_error::kind::empty_profile, 0, "");
}

// Reference 15 x 15 cycle-product election, one voter per line.
const std::vector<std::vector<candidate_id>> appendix_15 = {
    {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15},  {2, 3, 4, 5, 1, 7, 8, 9, 10, 6, 12, 13, 14, 15, 11},
    {3, 4, 5, 1, 2, 8, 9, 10, 6, 7, 13, 14, 15, 11, 12},  {4, 5, 1, 2, 3, 9, 10, 6, 7, 8, 14, 15, 11, 12, 13},
    {5, 1, 2, 3, 4, 10, 6, 7, 8, 9, 15, 11, 12, 13, 14},  {6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 1, 2, 3, 4, 5},
    {7, 8, 9, 10, 6, 12, 13, 14, 15, 11, 2, 3, 4, 5, 1},  {8, 9, 10, 6, 7, 13, 14, 15, 11, 12, 3, 4, 5, 1, 2},
    {9, 10, 6, 7, 8, 14, 15, 11, 12, 13, 4, 5, 1, 2, 3},  {10, 6, 7, 8, 9, 15, 11, 12, 13, 14, 5, 1, 2, 3, 4},
    {11, 12, 13, 14, 15, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10},  {12, 13, 14, 15, 11, 2, 3, 4, 5, 1, 7, 8, 9, 10, 6},
    {13, 14, 15, 11, 12, 3, 4, 5, 1, 2, 8, 9, 10, 6, 7},  {14, 15, 11, 12, 13, 4, 5, 1, 2, 3, 9, 10, 6, 7, 8},
    {15, 11, 12, 13, 14, 5, 1, 2, 3, 4, 10, 6, 7, 8, 9},
};

} // namespace

TEST_CASE("parse accepts comments, blank lines, CRLF and replication") {
    const election e = parse_election("# header comment\r\n3 4\r\n\r\n1 2 3\r\nw 2 3 2 1\n# trailing\n2 1 3\n");
    CHECK(e.num_candidates() == 3);
    CHECK(e.num_voters() == 4);
    CHECK(e.rankings() == std::vector<std::vector<candidate_id>>{{1, 2, 3}, {3, 2, 1}, {3, 2, 1}, {2, 1, 3}});
}

TEST_CASE("parse errors carry kind and line") {
    auto bad_ranking = catch_profile_error([] { parse_election("3 2\n1 2 3\n1 1 3\n"); });
    CHECK(bad_ranking.error_kind() == profile_error::kind::malformed_ranking);
    CHECK(bad_ranking.line() == 3);

    auto short_body = catch_profile_error([] { parse_election("3 2\n1 2 3\n"); });
    CHECK(short_body.error_kind() == profile_error::kind::count_mismatch);

    auto long_body = catch_profile_error([] { parse_election("3 1\n1 2 3\n3 2 1\n"); });
    CHECK(long_body.error_kind() == profile_error::kind::count_mismatch);
    CHECK(long_body.line() == 3);

    CHECK(catch_profile_error([] { parse_election("# only a comment\n\n"); }).error_kind() ==
          profile_error::kind::empty_profile);
    CHECK(catch_profile_error([] { parse_election("three 2\n"); }).error_kind() ==
          profile_error::kind::malformed_header);
    CHECK(catch_profile_error([] { parse_election("3\n"); }).error_kind() == profile_error::kind::malformed_header);
    CHECK(catch_profile_error([] { parse_election("2 1\n1 2 x\n"); }).error_kind() ==
          profile_error::kind::malformed_ranking);
    CHECK(catch_profile_error([] { parse_election("2 1\n1\n"); }).error_kind() ==
          profile_error::kind::malformed_ranking);
    CHECK_THROWS_AS(parse_election("2 2\nw 0 1 2\n2 1\n"), input_error);
}

TEST_CASE("serialization") {
    CHECK(serialize_election(election(1, {{1}})) == "1 1\n1\n");
    CHECK(serialize_election(gen_cyclic(6)) ==
          "6 6\n1 2 3 4 5 6\n2 3 4 5 6 1\n3 4 5 6 1 2\n4 5 6 1 2 3\n5 6 1 2 3 4\n6 1 2 3 4 5\n");
    for (const election& e : {gen_cyclic(6), gen_cycle_product(3, 5), gen_minimal_dim3(),
                              gen_impartial_culture(9, 7, 3), gen_full_factorial(4)}) {
        const std::string text = serialize_election(e);
        CHECK(parse_election(text) == e);
        CHECK(serialize_election(parse_election(text)) == text);
    }
}

TEST_CASE("file round trip") {
    const auto path = (std::filesystem::temp_directory_path() / "undom_profiles_test.txt").string();
    const election e = gen_impartial_culture(5, 4, 99);
    write_election_file(path, e);
    CHECK(read_election_file(path) == e);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_election_file(path), input_error);
}

TEST_CASE("cyclic family") {
    const election e = gen_cyclic(6);
    CHECK(e.ranking(1)[0] == 1);
    CHECK(dominator_count(e, 6, committee{1}) == 5);
    CHECK(gen_cyclic(1).rankings() == std::vector<std::vector<candidate_id>>{{1}});
    for (int m = 3; m <= 12; ++m) {
        const election c = gen_cyclic(m);
        for (candidate_id a = 1; a <= m; ++a) {
            bool found = false;
            for (candidate_id b = 1; b <= m; ++b) found = found || dominator_count(c, b, committee{a}) == m - 1;
            CHECK(found);
        }
    }
    CHECK_THROWS_AS(gen_cyclic(0), input_error);
}

TEST_CASE("cycle product matches the published 15 x 15 election") {
    CHECK(gen_cycle_product(3, 5).rankings() == appendix_15);
    const election small = gen_cycle_product(3, 2);
    const auto v00 = small.ranking(1);
    CHECK(std::vector<candidate_id>(v00.begin(), v00.end()) == std::vector<candidate_id>{1, 2, 3, 4, 5, 6});
    CHECK_THROWS_AS(gen_cycle_product(1, 5), input_error);
    CHECK_THROWS_AS(gen_cycle_product(3, 1), input_error);
}

TEST_CASE("cycle product: no size-(s-1) committee escapes the lower bound") {
    for (int s = 2; s <= 4; ++s)
        for (int t = 2; s * t <= 16; ++t) {
            const election e = gen_cycle_product(s, t);
            const std::int64_t n = e.num_voters();
            for_each_combination(s * t, s - 1, [&](const std::vector<candidate_id>& c) {
                const std::int64_t count = max_domination(e, committee(c)).count;
                REQUIRE(count * s * t >= 2 * (t - 1) * n);
                return true;
            });
        }
    // the k = 2, t = 5 instance has no committee of size 2 below 8/15
    const election e = gen_cycle_product(3, 5);
    for_each_combination(15, 2, [&](const std::vector<candidate_id>& c) {
        REQUIRE_FALSE(is_alpha_undominated(e, committee(c), {8, 15}));
        return true;
    });
}

TEST_CASE("minimal dimension-3 election") {
    const election e = gen_minimal_dim3();
    CHECK(e.num_voters() == 6);
    CHECK(e.num_candidates() == 6);
    const auto v1 = e.ranking(1);
    CHECK(std::vector<candidate_id>(v1.begin(), v1.end()) == std::vector<candidate_id>{1, 4, 2, 3, 6, 5});
    CHECK(condorcet_dimension(e).dimension == 3);
}

TEST_CASE("impartial culture is seed-deterministic and uniform-looking") {
    CHECK(gen_impartial_culture(20, 7, 5) == gen_impartial_culture(20, 7, 5));
    CHECK_FALSE(gen_impartial_culture(20, 7, 5) == gen_impartial_culture(20, 7, 6));
    CHECK(condorcet_dimension(gen_impartial_culture(1, 9, 3)).dimension == 1);
    // pinned first voter so the stream stays stable across platforms
    const election pinned = gen_impartial_culture(1, 5, 42);
    const election again = parse_election(serialize_election(pinned));
    CHECK(pinned == again);

    // first-place frequencies over many voters are roughly uniform
    const int m = 4, n = 40000;
    const election big = gen_impartial_culture(n, m, 17);
    std::vector<int> first(m, 0);
    for (voter_id v = 1; v <= n; ++v) ++first[big.ranking(v)[0] - 1];
    for (int c : first) CHECK(std::abs(c - n / m) < 400);
    CHECK_THROWS_AS(gen_impartial_culture(0, 3, 1), input_error);
}

TEST_CASE("full factorial") {
    const election e = gen_full_factorial(3);
    CHECK(e.num_voters() == 6);
    std::set<std::vector<candidate_id>> distinct;
    for (const auto& r : gen_full_factorial(5).rankings()) distinct.insert(r);
    CHECK(distinct.size() == 120);
    CHECK_THROWS_AS(gen_full_factorial(8), budget_error);
}
