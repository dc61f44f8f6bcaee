#include "bdnsat/cnf.hpp"

#include "bdnsat/error.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace bdn {

void CnfFormula::add_clause(Clause c) {
    for (Literal l : c)
        if (l == 0 || static_cast<Var>(std::abs(l)) > num_vars) throw Error("cnf: literal out of range");
    clauses.push_back(std::move(c));
}

bool CnfFormula::satisfied_by(const std::vector<bool>& assignment) const {
    if (assignment.size() < static_cast<std::size_t>(num_vars) + 1) return false;
    for (const auto& c : clauses) {
        bool sat = false;
        for (Literal l : c) {
            if (assignment[static_cast<std::size_t>(std::abs(l))] == (l > 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

Formula simplify(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::constant:
        case K::variable: return f;
        case K::negation: {
            Formula s = simplify(f.children()[0]);
            if (s.kind() == K::constant) return Formula::constant(!s.value());
            if (s.kind() == K::negation) return s.children()[0];
            return Formula::negation(std::move(s));
        }
        case K::conjunction:
        case K::disjunction: {
            const bool is_and = f.kind() == K::conjunction;
            std::vector<Formula> kept;
            for (const auto& c : f.children()) {
                Formula s = simplify(c);
                if (s.kind() == K::constant) {
                    if (s.value() == is_and) continue;     // neutral
                    return Formula::constant(!is_and);     // absorbing
                }
                if (s.kind() == f.kind()) {
                    for (const auto& g : s.children()) kept.push_back(g);
                } else {
                    kept.push_back(std::move(s));
                }
            }
            return is_and ? Formula::all_of(std::move(kept)) : Formula::any_of(std::move(kept));
        }
        case K::implication: {
            Formula a = simplify(f.children()[0]);
            Formula b = simplify(f.children()[1]);
            if (a.is_constant(false) || b.is_constant(true)) return Formula::constant(true);
            if (a.is_constant(true)) return b;
            if (b.is_constant(false)) return simplify(Formula::negation(std::move(a)));
            return Formula::implication(std::move(a), std::move(b));
        }
        case K::biconditional: {
            Formula a = simplify(f.children()[0]);
            Formula b = simplify(f.children()[1]);
            if (a.kind() == K::constant) return a.value() ? b : simplify(Formula::negation(std::move(b)));
            if (b.kind() == K::constant) return b.value() ? a : simplify(Formula::negation(std::move(a)));
            return Formula::biconditional(std::move(a), std::move(b));
        }
    }
    return f;
}

namespace {

class TseitinEncoder {
public:
    explicit TseitinEncoder(Var base) { cnf_.num_vars = base; }

    void assert_top(const Formula& f) {
        using K = Formula::Kind;
        switch (f.kind()) {
            case K::constant:
                if (!f.value()) {
                    const Literal t = fresh();
                    emit({t});
                    emit({-t});
                }
                return;
            case K::conjunction:
                for (const auto& c : f.children()) assert_top(c);
                return;
            case K::disjunction: {
                Clause c;
                for (const auto& g : f.children()) c.push_back(label(g));
                emit(std::move(c));
                return;
            }
            case K::implication: {
                const Literal a = label(f.children()[0]);
                const Literal b = label(f.children()[1]);
                emit({-a, b});
                return;
            }
            case K::biconditional: {
                const Literal a = label(f.children()[0]);
                const Literal b = label(f.children()[1]);
                emit({-a, b});
                emit({a, -b});
                return;
            }
            default: emit({label(f)});
        }
    }

    CnfFormula take() && { return std::move(cnf_); }

private:
    Literal fresh() { return static_cast<Literal>(++cnf_.num_vars); }
    void emit(Clause c) { cnf_.clauses.push_back(std::move(c)); }

    Literal label(const Formula& f) {
        using K = Formula::Kind;
        const auto& ch = f.children();
        switch (f.kind()) {
            case K::constant: throw Error("tseitin: constant below the root after folding");
            case K::variable: return static_cast<Literal>(f.var());
            case K::negation: return -label(ch[0]);
            case K::conjunction:
            case K::disjunction: {
                std::vector<Literal> lits;
                lits.reserve(ch.size());
                for (const auto& c : ch) lits.push_back(label(c));
                const Literal t = fresh();
                const Literal s = f.kind() == K::conjunction ? 1 : -1;
                // And: t -> l_i, (all l_i) -> t. Or is the dual.
                Clause back{s * t};
                for (Literal l : lits) {
                    emit({-s * t, s * l});
                    back.push_back(-s * l);
                }
                emit(std::move(back));
                return t;
            }
            case K::implication: {
                const Literal a = label(ch[0]);
                const Literal b = label(ch[1]);
                const Literal t = fresh();
                emit({-t, -a, b});
                emit({t, a});
                emit({t, -b});
                return t;
            }
            case K::biconditional: {
                const Literal a = label(ch[0]);
                const Literal b = label(ch[1]);
                const Literal t = fresh();
                emit({-t, -a, b});
                emit({-t, a, -b});
                emit({t, a, b});
                emit({t, -a, -b});
                return t;
            }
        }
        return 0;
    }

    CnfFormula cnf_;
};

} // namespace

CnfFormula tseitin_cnf(const Formula& f, Var base_vars) {
    const Formula s = simplify(f);
    if (s.max_var() > base_vars) throw Error("tseitin: formula references a variable beyond the base range");
    TseitinEncoder enc(base_vars);
    enc.assert_top(s);
    CnfFormula cnf = std::move(enc).take();
    cnf.names.assign(static_cast<std::size_t>(cnf.num_vars) + 1, std::string());
    return cnf;
}

void emit_dimacs(const CnfFormula& cnf, std::ostream& out, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "c " << c << '\n';
    out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    std::string line;
    for (const auto& clause : cnf.clauses) {
        line.clear();
        for (Literal l : clause) {
            line += std::to_string(l);
            line += ' ';
        }
        line += "0\n";
        out << line;
    }
}

std::string to_dimacs(const CnfFormula& cnf) {
    std::ostringstream ss;
    emit_dimacs(cnf, ss);
    return ss.str();
}

CnfFormula parse_dimacs(std::istream& in) {
    CnfFormula cnf;
    std::string line;
    bool header = false;
    std::size_t expected = 0;
    Clause cur;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == '%') break;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, fmt;
            long long vars = 0;
            long long n = 0;
            if (!(ls >> p >> fmt >> vars >> n) || fmt != "cnf" || vars < 0 || n < 0)
                throw Error("dimacs: malformed header '" + line + "'");
            cnf.num_vars = static_cast<Var>(vars);
            expected = static_cast<std::size_t>(n);
            header = true;
            continue;
        }
        if (!header) throw Error("dimacs: clause before header");
        long long lit = 0;
        while (ls >> lit) {
            if (lit == 0) {
                cnf.add_clause(std::move(cur));
                cur.clear();
            } else {
                cur.push_back(static_cast<Literal>(lit));
            }
        }
        if (!ls.eof()) throw Error("dimacs: bad token in '" + line + "'");
    }
    if (!header) throw Error("dimacs: missing header");
    if (!cur.empty()) cnf.add_clause(std::move(cur));
    if (cnf.clauses.size() != expected) throw Error("dimacs: clause count does not match header");
    cnf.names.assign(static_cast<std::size_t>(cnf.num_vars) + 1, std::string());
    return cnf;
}

} // namespace bdn
