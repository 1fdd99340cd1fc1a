#include "undom/profiles.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "undom/errors.hpp"
#include "undom/rng.hpp"

namespace undom {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

bool parse_int(std::string_view tok, long long& out) {
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

[[noreturn]] void fail(profile_error::kind k, std::size_t line, const std::string& msg) {
    std::string where = line ? "line " + std::to_string(line) + ": " : "";
    throw profile_error(k, line, where + msg);
}

} // namespace

election parse_election(std::string_view text) {
    long long m = 0, n = 0;
    bool have_header = false;
    std::vector<std::vector<candidate_id>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;

    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        const auto tokens = split_tokens(line);
        if (tokens.empty() || tokens.front().front() == '#') continue;

        if (!have_header) {
            if (tokens.size() != 2 || !parse_int(tokens[0], m) || !parse_int(tokens[1], n) || m < 1 || n < 1 ||
                m > 1'000'000 || n > 100'000'000)
                fail(profile_error::kind::malformed_header, line_no, "malformed header, expected \"m n\"");
            have_header = true;
            continue;
        }

        std::size_t first = 0;
        long long copies = 1;
        if (tokens[0] == "w") {
            if (tokens.size() < 2 || !parse_int(tokens[1], copies) || copies < 1)
                fail(profile_error::kind::malformed_ranking, line_no, "malformed ranking: bad \"w <count>\" prefix");
            first = 2;
        }
        if (tokens.size() - first != static_cast<std::size_t>(m))
            fail(profile_error::kind::malformed_ranking, line_no,
                 "malformed ranking: expected " + std::to_string(m) + " candidates, got " +
                     std::to_string(tokens.size() - first));
        std::vector<candidate_id> row;
        row.reserve(m);
        std::vector<char> seen(m, 0);
        for (std::size_t i = first; i < tokens.size(); ++i) {
            long long a = 0;
            if (!parse_int(tokens[i], a) || a < 1 || a > m || seen[a - 1])
                fail(profile_error::kind::malformed_ranking, line_no, "malformed ranking: not a permutation of 1.." +
                                                                          std::to_string(m));
            seen[a - 1] = 1;
            row.push_back(static_cast<candidate_id>(a));
        }
        if (static_cast<long long>(rows.size()) + copies > n)
            fail(profile_error::kind::count_mismatch, line_no,
                 "count mismatch: header declares " + std::to_string(n) + " voters, body has more");
        for (long long c = 0; c < copies; ++c) rows.push_back(row);
    }

    if (!have_header) fail(profile_error::kind::empty_profile, 0, "empty profile");
    if (static_cast<long long>(rows.size()) != n)
        fail(profile_error::kind::count_mismatch, 0,
             "count mismatch: header declares " + std::to_string(n) + " voters, body has " +
                 std::to_string(rows.size()));
    return election(static_cast<int>(m), rows);
}

std::string serialize_election(const election& e) {
    std::string out = std::to_string(e.num_candidates()) + " " + std::to_string(e.num_voters()) + "\n";
    for (voter_id v = 1; v <= e.num_voters(); ++v) {
        const auto r = e.ranking_unchecked(v);
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(r[i]);
        }
        out += '\n';
    }
    return out;
}

election read_election_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open profile '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_election(buf.str());
}

void write_election_file(const std::string& path, const election& e) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write profile '" + path + "'");
    out << serialize_election(e);
}

election gen_cyclic(int m) {
    if (m < 1) throw input_error("gen_cyclic: m must be positive");
    std::vector<std::vector<candidate_id>> rows(m, std::vector<candidate_id>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) rows[i][j] = (i + j) % m + 1;
    return election(m, rows);
}

election gen_cycle_product(int s, int t) {
    if (s < 2 || t < 2) throw input_error("gen_cycle_product: s and t must be at least 2");
    if (static_cast<long long>(s) * t > 10'000) throw budget_error("gen_cycle_product: s*t too large");
    const int m = s * t;
    std::vector<std::vector<candidate_id>> rows;
    rows.reserve(m);
    for (int p = 0; p < s; ++p) {
        for (int q = 0; q < t; ++q) {
            std::vector<candidate_id> row;
            row.reserve(m);
            for (int dx = 0; dx < s; ++dx)
                for (int dy = 0; dy < t; ++dy) row.push_back(((p + dx) % s) * t + (q + dy) % t + 1);
            rows.push_back(std::move(row));
        }
    }
    return election(m, rows);
}

election gen_minimal_dim3() {
    return election(6, {{1, 4, 2, 3, 6, 5},
                        {2, 5, 3, 1, 4, 6},
                        {3, 6, 1, 2, 5, 4},
                        {4, 3, 6, 1, 2, 5},
                        {5, 1, 4, 2, 3, 6},
                        {6, 2, 5, 3, 1, 4}});
}

election gen_impartial_culture(int n, int m, std::uint64_t seed) {
    if (n < 1 || m < 1) throw input_error("gen_impartial_culture: n and m must be positive");
    engine rng(seed);
    std::vector<std::vector<candidate_id>> rows(n, std::vector<candidate_id>(m));
    for (auto& row : rows) {
        std::iota(row.begin(), row.end(), 1);
        for (int i = m - 1; i >= 1; --i) {
            const auto j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
            std::swap(row[i], row[j]);
        }
    }
    return election(m, rows);
}

election gen_full_factorial(int m) {
    if (m < 1) throw input_error("gen_full_factorial: m must be positive");
    if (m > 7) throw budget_error("gen_full_factorial: m! exceeds the budget (m <= 7)");
    std::vector<candidate_id> perm(m);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::vector<candidate_id>> rows;
    do {
        rows.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return election(m, rows);
}

} // namespace undom
