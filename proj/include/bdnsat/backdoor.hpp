#pragma once

#include "bdnsat/program.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bdn {

/// Undirected graph joining atoms that share a rule head.
struct HeadGraph {
    std::vector<AtomId> vertices;                 // at(P), ascending
    std::vector<std::pair<AtomId, AtomId>> edges; // first < second, sorted, unique
    std::size_t universe = 0;

    bool covered_by(const AtomSet& cover) const;
};

HeadGraph head_dependency_graph(const Program& p);

/// A vertex cover of size <= k, or nullopt if none exists.
///
/// Kernelizes by forcing every vertex whose remaining degree exceeds the
/// budget, rejects when more than budget^2 edges remain, then branches on the
/// lexicographically smallest uncovered edge taking the lower endpoint first.
std::optional<AtomSet> vertex_cover_bounded(const HeadGraph& g, std::size_t k);

enum class BackdoorKind { strong, deletion };

struct Backdoor {
    AtomSet atoms;
    BackdoorKind kind = BackdoorKind::strong;
    bool verified = false;

    std::size_t size() const { return atoms.size(); }
};

/// Partial interpretation over `domain`; `true_atoms` is tau^-1(1).
class TruthAssignment {
public:
    TruthAssignment(AtomSet domain, AtomSet true_atoms);

    const AtomSet& domain() const noexcept { return domain_; }
    const AtomSet& true_atoms() const noexcept { return true_; }
    AtomSet false_atoms() const { return domain_ - true_; }
    bool value(AtomId a) const { return true_.contains(a); }

private:
    AtomSet domain_;
    AtomSet true_;
};

/// P - X: delete atoms of X (and their negations) everywhere; no rule is dropped.
Program delete_atoms(const Program& p, const AtomSet& x);

/// P_tau: drop rules by conditions (i)-(iv), then strip literals over the domain.
Program assignment_reduct(const Program& p, const TruthAssignment& tau);

/// X is a strong Normal-backdoor iff P - X is normal (P tautology-free).
/// With `exhaustive` every reduct P_tau is checked as well and both answers must
/// agree; throws `GuardError` for |X| > 20 in that mode.
bool verify_strong_backdoor(const Program& p, const AtomSet& x, bool exhaustive = false);

/// Smallest strong Normal-backdoor with at most `max_k` atoms.
std::optional<Backdoor> find_backdoor(const Program& p, std::size_t max_k);

/// One atom name per line, sorted by name.
std::string format_backdoor(const Program& p, const AtomSet& x);

/// Accepts names separated by commas and/or whitespace.
AtomSet parse_atom_list(const Program& p, const std::string& text);

} // namespace bdn
