#include "undom/election.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "undom/errors.hpp"

namespace undom {

election::election(int num_candidates, const std::vector<std::vector<candidate_id>>& rankings)
    : m_(num_candidates), n_(static_cast<int>(rankings.size())) {
    if (m_ < 1) throw input_error("election: need at least one candidate");
    if (n_ < 1) throw input_error("election: need at least one voter");
    order_.reserve(static_cast<std::size_t>(n_) * m_);
    pos_.assign(static_cast<std::size_t>(n_) * m_, -1);
    for (int v = 0; v < n_; ++v) {
        const auto& r = rankings[v];
        if (static_cast<int>(r.size()) != m_)
            throw input_error("election: voter " + std::to_string(v + 1) + " ranks " +
                              std::to_string(r.size()) + " candidates, expected " + std::to_string(m_));
        int* row = pos_.data() + static_cast<std::size_t>(v) * m_;
        for (int i = 0; i < m_; ++i) {
            const candidate_id a = r[i];
            if (a < 1 || a > m_ || row[a - 1] != -1)
                throw input_error("election: voter " + std::to_string(v + 1) + " ranking is not a permutation");
            row[a - 1] = i;
            order_.push_back(a);
        }
    }
}

void election::check_voter(voter_id v) const {
    if (v < 1 || v > n_) throw input_error("voter id " + std::to_string(v) + " out of range 1.." + std::to_string(n_));
}

void election::check_candidate(candidate_id a) const {
    if (a < 1 || a > m_)
        throw input_error("candidate id " + std::to_string(a) + " out of range 1.." + std::to_string(m_));
}

std::span<const candidate_id> election::ranking(voter_id v) const {
    check_voter(v);
    return ranking_unchecked(v);
}

int election::position(voter_id v, candidate_id a) const {
    check_voter(v);
    check_candidate(a);
    return positions(v)[a - 1];
}

election election::restrict_voters(std::span<const voter_id> voters) const {
    std::vector<std::vector<candidate_id>> rows;
    rows.reserve(voters.size());
    for (voter_id v : voters) {
        const auto r = ranking(v);
        rows.emplace_back(r.begin(), r.end());
    }
    return election(m_, rows);
}

std::vector<std::vector<candidate_id>> election::rankings() const {
    std::vector<std::vector<candidate_id>> rows;
    rows.reserve(n_);
    for (voter_id v = 1; v <= n_; ++v) {
        const auto r = ranking_unchecked(v);
        rows.emplace_back(r.begin(), r.end());
    }
    return rows;
}

committee::committee(std::vector<candidate_id> members) : members_(std::move(members)) {
    if (members_.empty()) throw input_error("committee: must be nonempty");
    std::sort(members_.begin(), members_.end());
    if (members_.front() < 1) throw input_error("committee: candidate ids are 1-based");
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
        throw input_error("committee: duplicate member");
}

committee committee::parse(std::string_view text) {
    std::vector<candidate_id> ids;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == ',' || c == ' ' || c == '\t') { ++i; continue; }
        candidate_id id = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), id);
        if (ec != std::errc{} || ptr == text.data() + i)
            throw input_error("committee: cannot parse '" + std::string(text) + "'");
        ids.push_back(id);
        i = static_cast<std::size_t>(ptr - text.data());
    }
    return committee(std::move(ids));
}

committee committee::all(int m) {
    std::vector<candidate_id> ids(m);
    for (int i = 0; i < m; ++i) ids[i] = i + 1;
    return committee(std::move(ids));
}

bool committee::contains(candidate_id a) const noexcept {
    return std::binary_search(members_.begin(), members_.end(), a);
}

void committee::check_against(const election& e) const {
    if (members_.back() > e.num_candidates())
        throw input_error("committee member " + std::to_string(members_.back()) + " out of range 1.." +
                          std::to_string(e.num_candidates()));
}

std::string committee::str() const {
    std::string out;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(members_[i]);
    }
    return out;
}

} // namespace undom
