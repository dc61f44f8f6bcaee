#pragma once

#include "bdnsat/cnf.hpp"
#include "bdnsat/formula.hpp"
#include "bdnsat/program.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace bdn {

/// Variable layout of a query encoding.
///
///   v[a]                      ids 1 .. n
///   u_i^j[a]  (block i, layer j = 0..p)   ids n+1 .. n + blocks*(p+1)*n, block-strided
///   Tseitin labels            everything above
///
/// n = |at(P)|, p = min(|P|, |at(P)|). Blocks are 0-based here and 1-based in
/// the variable-map sidecar.
class VarTable {
public:
    VarTable(const Program& p, std::size_t blocks);

    const std::vector<AtomId>& atoms() const noexcept { return atoms_; }
    std::size_t atom_count() const noexcept { return atoms_.size(); }
    std::size_t layers() const noexcept { return layers_; }
    std::size_t blocks() const noexcept { return blocks_; }

    Var v(AtomId a) const { return static_cast<Var>(1 + index(a)); }
    Var u(std::size_t block, std::size_t layer, AtomId a) const;
    /// Number of v- and u-variables; Tseitin labels start above this.
    Var fixed_count() const noexcept;

    Formula fv(AtomId a) const { return Formula::variable(v(a)); }
    Formula fu(std::size_t block, std::size_t layer, AtomId a) const { return Formula::variable(u(block, layer, a)); }

    enum class Role { v, u, label };
    struct Slot {
        Role role;
        std::size_t block = 0;
        std::size_t layer = 0;
        AtomId atom = 0;
    };
    Slot describe(Var id) const;

    /// Sidecar lines "v <id> <atom>", "u <id> <block> <layer> <atom>", "t <id>" for ids 1..total.
    void write_map(std::ostream& out, const AtomTable& table, Var total) const;

private:
    std::size_t index(AtomId a) const;

    std::vector<AtomId> atoms_;
    std::vector<std::ptrdiff_t> index_of_;
    std::size_t layers_;
    std::size_t blocks_;
};

enum class QueryMode { brave, skeptical };

struct QuerySpec {
    QueryMode mode = QueryMode::brave;
    AtomId atom = 0;
    /// Extra condition over v-variables conjoined to the query.
    std::optional<Formula> property;
};

/// Model condition: M is a model of P^M.
Formula build_f_mod(const Program& p, const VarTable& vt);

/// Layered least-model simulation of DH(P^M_{Xi<=X}) for one block.
Formula build_f_lm_block(const Program& p, const AtomSet& x, const AtomSet& xi, std::size_t block,
                         const VarTable& vt);

/// MinCheck(Xi) as a formula: not(subset) or (lm and (a or b or c or d)).
Formula build_f_min_block(const Program& p, const AtomSet& x, const AtomSet& xi, std::size_t block,
                          const VarTable& vt);

struct EncodedQuery {
    Formula formula;
    VarTable vars;
    /// X_i for each block i, binary-counter order over ascending atom ids.
    std::vector<AtomSet> subsets;
};

/// F_mod & F_min & (v[a*] or its negation) [& property]. Blocks are built in
/// parallel; `build_query_serial` is the reference and yields the same formula.
/// Throws `Error` if X is not a strong Normal-backdoor or a* is not in at(P),
/// `GuardError` if |X & at(P)| exceeds kMaxBackdoorAtoms.
EncodedQuery build_query(const Program& p, const AtomSet& x, const QuerySpec& q);
EncodedQuery build_query_serial(const Program& p, const AtomSet& x, const QuerySpec& q);

/// Tseitin CNF with semantic variable names filled in.
CnfFormula encode_cnf(const EncodedQuery& q, const AtomTable& table);

/// M = { a : v[a] true }. Throws `Error` if the assignment is too short.
AtomSet decode_model(const std::vector<bool>& assignment, const VarTable& vt, std::size_t universe);

} // namespace bdn
