#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace undom {

/// Candidates and voters are dense 1-based integers.
using candidate_id = int;
using voter_id = int;

/// n voters' strict rankings over m candidates, most-preferred first.
///
/// Rankings are stored flat together with the inverse permutation, so "where does voter v
/// put candidate a" is a single load. Elections are immutable once built.
class election {
public:
    /// Throws input_error unless every ranking is a permutation of 1..num_candidates and
    /// there is at least one voter.
    election(int num_candidates, const std::vector<std::vector<candidate_id>>& rankings);

    int num_candidates() const noexcept { return m_; }
    int num_voters() const noexcept { return n_; }

    /// Voter v's ranking, most-preferred first.
    std::span<const candidate_id> ranking(voter_id v) const;

    /// 0-based position of a in v's ranking (0 = favourite).
    int position(voter_id v, candidate_id a) const;

    /// positions(v)[a - 1] == position(v, a); unchecked fast path for the engines.
    std::span<const int> positions(voter_id v) const noexcept {
        return {pos_.data() + static_cast<std::size_t>(v - 1) * m_, static_cast<std::size_t>(m_)};
    }
    std::span<const candidate_id> ranking_unchecked(voter_id v) const noexcept {
        return {order_.data() + static_cast<std::size_t>(v - 1) * m_, static_cast<std::size_t>(m_)};
    }

    void check_voter(voter_id v) const;
    void check_candidate(candidate_id a) const;

    /// The sub-election on the listed voters (in the given order), same candidate set.
    election restrict_voters(std::span<const voter_id> voters) const;

    std::vector<std::vector<candidate_id>> rankings() const;

    friend bool operator==(const election& x, const election& y) {
        return x.m_ == y.m_ && x.n_ == y.n_ && x.order_ == y.order_;
    }

private:
    int m_ = 0;
    int n_ = 0;
    std::vector<candidate_id> order_;
    std::vector<int> pos_;
};

/// A nonempty set of distinct candidates, stored ascending.
class committee {
public:
    explicit committee(std::vector<candidate_id> members);
    committee(std::initializer_list<candidate_id> members)
        : committee(std::vector<candidate_id>(members)) {}

    /// "1,4" or "1 4".
    static committee parse(std::string_view text);
    /// {1, ..., m}
    static committee all(int m);

    std::span<const candidate_id> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(candidate_id a) const noexcept;

    /// Throws input_error if any member exceeds e's candidate count.
    void check_against(const election& e) const;

    std::string str() const;

    friend auto operator<=>(const committee&, const committee&) = default;
    friend bool operator==(const committee&, const committee&) = default;

private:
    std::vector<candidate_id> members_;
};

} // namespace undom
