#pragma once

#include "bdnsat/program.hpp"

#include <cstddef>
#include <vector>

namespace bdn {

/// Largest |at(P)| the brute-force enumerator accepts without `force`.
inline constexpr std::size_t kOracleAtomLimit = 20;

/// Brute force: every M subset of at(P) that is a minimal model of P^M.
/// Results are ordered by their bitmask over at(P) in ascending id order.
/// Throws `GuardError` when |at(P)| exceeds the limit and `force` is false.
std::vector<AtomSet> enumerate_answer_sets(const Program& p, bool force = false);

/// Same definition for a single candidate; checks all 2^|M| subsets.
bool naive_is_answer_set(const Program& p, const AtomSet& m);

} // namespace bdn
