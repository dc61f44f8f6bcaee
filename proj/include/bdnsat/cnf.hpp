#pragma once

#include "bdnsat/formula.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace bdn {

using Literal = int;
using Clause = std::vector<Literal>;

/// Clause list over variables 1..num_vars.
struct CnfFormula {
    Var num_vars = 0;
    std::vector<Clause> clauses;
    /// Semantic name per variable id (index 0 unused); may be empty.
    std::vector<std::string> names;

    /// Throws `Error` on a zero literal or a variable beyond num_vars.
    void add_clause(Clause c);
    /// Assignment indexed by variable id, size num_vars + 1.
    bool satisfied_by(const std::vector<bool>& assignment) const;
};

/// Equisatisfiable CNF. Constants are folded first; every remaining compound
/// subformula below the top-level conjunction gets a fresh label whose id is
/// allocated after its children, starting at `base_vars + 1`. Variables
/// 1..base_vars keep their meaning.
CnfFormula tseitin_cnf(const Formula& f, Var base_vars);

/// Constant folding with flattening of nested conjunctions/disjunctions and
/// double-negation removal. The result is a constant or constant-free.
Formula simplify(const Formula& f);

/// "p cnf <vars> <clauses>" then one zero-terminated clause per line.
void emit_dimacs(const CnfFormula& cnf, std::ostream& out, const std::vector<std::string>& comments = {});
std::string to_dimacs(const CnfFormula& cnf);

/// Reads DIMACS CNF; "c" lines and a trailing "%" section are ignored.
CnfFormula parse_dimacs(std::istream& in);

} // namespace bdn
