#pragma once

#include "bdnsat/program.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bdn {

/// Largest backdoor the 2^k subset loops accept.
inline constexpr std::size_t kMaxBackdoorAtoms = 20;

/// P_{X1 <= X}: rules meeting X1 in the head are removed, X is removed from the
/// remaining heads and X1 from the remaining positive bodies.
struct RestrictedProgram {
    Program base;
    AtomSet x;
    AtomSet x1;
};

/// Throws `Error` unless x1 is a subset of x.
RestrictedProgram restrict_program(const Program& p, const AtomSet& x, const AtomSet& x1);

/// Which MinCheck exits fired. Several conditions of step 4 may hold at once;
/// all of them are recorded.
struct MinCheckOutcome {
    enum Condition : std::uint8_t {
        none = 0,
        not_contained = 1u << 0,   // step 1: X1 not a subset of M
        violates_constraint = 1u << 1, // (a)
        escapes_m_minus_x = 1u << 2,   // (b)
        not_proper_subset = 1u << 3,   // (c)
        not_a_model = 1u << 4,         // (d)
    };

    bool result = false;
    std::uint8_t fired = none;
    AtomSet least_model; // L; empty when step 1 fired

    bool has(Condition c) const noexcept { return (fired & c) != 0; }
    /// E.g. "1", "a", "a,b,c"; "-" when nothing fired.
    std::string describe() const;

    friend bool operator==(const MinCheckOutcome&, const MinCheckOutcome&) = default;
};

/// MinCheck(X1) for candidate M. `reduct` must be gl_reduct(p, m); the
/// overload without it computes the reduct itself.
MinCheckOutcome mincheck(const Program& p, const Program& reduct, const AtomSet& m, const AtomSet& x,
                         const AtomSet& x1);
MinCheckOutcome mincheck(const Program& p, const AtomSet& m, const AtomSet& x, const AtomSet& x1);

/// The i-th subset of `ids` in binary-counter order (bit j selects ids[j]).
AtomSet subset_by_index(const std::vector<AtomId>& ids, std::uint64_t index, std::size_t universe);

struct AnswerSetCheck {
    bool answer_set = false;
    bool model_of_reduct = false;
    /// One entry per subset X1 of X & at(P), in subset-index order. Empty when
    /// M is not a model of its reduct.
    std::vector<MinCheckOutcome> subsets;
    /// Smallest subset index where MinCheck returned False.
    std::optional<std::size_t> first_failure;
};

/// Fixed-parameter answer-set check with a verified strong Normal-backdoor.
/// The subset loop runs in parallel; results are identical to the serial version.
/// Throws `GuardError` when |X & at(P)| exceeds kMaxBackdoorAtoms.
AnswerSetCheck check_answer_set(const Program& p, const AtomSet& m, const AtomSet& x);
AnswerSetCheck check_answer_set_serial(const Program& p, const AtomSet& m, const AtomSet& x);

inline bool is_answer_set(const Program& p, const AtomSet& m, const AtomSet& x) {
    return check_answer_set(p, m, x).answer_set;
}

} // namespace bdn
