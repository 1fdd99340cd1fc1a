#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "election.hpp"

namespace undom {

/// Profile text format:
///
///     # comment
///     m n
///     1 2 3          <- one voter, most-preferred first
///     w 4 3 1 2      <- four identical voters
///
/// Lines starting with '#' and blank lines are ignored. CRLF is accepted on input; output
/// uses LF and never uses the "w" prefix.
election parse_election(std::string_view text);
std::string serialize_election(const election& e);

election read_election_file(const std::string& path);
void write_election_file(const std::string& path, const election& e);

/// Voter i ranks i, i+1, ..., m, 1, ..., i-1.
election gen_cyclic(int m);

/// Product of an s-cycle and a t-cycle. Voter and candidate (p, q) both get id p*t + q + 1;
/// voter (p, q) ranks candidates by (x - p mod s), then (y - q mod t).
election gen_cycle_product(int s, int t);

/// The fixed six-voter, six-candidate election of Condorcet dimension 3.
election gen_minimal_dim3();

/// n independent uniform rankings. Each voter starts from 1..m and is Fisher-Yates
/// shuffled (i = m-1 down to 1, swap with uniform_below(i + 1)) on an mt19937_64 seeded
/// with `seed`; voters are generated in order from the same stream.
election gen_impartial_culture(int n, int m, std::uint64_t seed);

/// One voter per permutation of 1..m, in lexicographic order. m <= 7.
election gen_full_factorial(int m);

} // namespace undom
