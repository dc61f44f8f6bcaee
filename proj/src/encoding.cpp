#include "bdnsat/encoding.hpp"

#include "bdnsat/backdoor.hpp"
#include "bdnsat/error.hpp"
#include "bdnsat/mincheck.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <ostream>

namespace bdn {

VarTable::VarTable(const Program& p, std::size_t blocks)
    : atoms_(p.atoms().ids()),
      index_of_(p.universe(), -1),
      layers_(std::min(p.rules().size(), atoms_.size())),
      blocks_(blocks) {
    for (std::size_t i = 0; i < atoms_.size(); ++i) index_of_[atoms_[i]] = static_cast<std::ptrdiff_t>(i);
}

std::size_t VarTable::index(AtomId a) const {
    if (a >= index_of_.size() || index_of_[a] < 0) throw Error("var table: atom does not occur in the program");
    return static_cast<std::size_t>(index_of_[a]);
}

Var VarTable::u(std::size_t block, std::size_t layer, AtomId a) const {
    if (block >= blocks_ || layer > layers_) throw Error("var table: block or layer out of range");
    const std::size_t n = atoms_.size();
    return static_cast<Var>(1 + n + (block * (layers_ + 1) + layer) * n + index(a));
}

Var VarTable::fixed_count() const noexcept {
    const std::size_t n = atoms_.size();
    return static_cast<Var>(n + blocks_ * (layers_ + 1) * n);
}

VarTable::Slot VarTable::describe(Var id) const {
    const std::size_t n = atoms_.size();
    if (id == 0) throw Error("var table: id 0");
    if (id > fixed_count()) return {Role::label};
    std::size_t k = id - 1;
    if (k < n) return {Role::v, 0, 0, atoms_[k]};
    k -= n;
    const std::size_t group = k / n;
    return {Role::u, group / (layers_ + 1), group % (layers_ + 1), atoms_[k % n]};
}

void VarTable::write_map(std::ostream& out, const AtomTable& table, Var total) const {
    for (Var id = 1; id <= total; ++id) {
        const Slot s = describe(id);
        switch (s.role) {
            case Role::v: out << "v " << id << ' ' << table.name(s.atom) << '\n'; break;
            case Role::u:
                out << "u " << id << ' ' << s.block + 1 << ' ' << s.layer << ' ' << table.name(s.atom) << '\n';
                break;
            case Role::label: out << "t " << id << '\n'; break;
        }
    }
}

Formula build_f_mod(const Program& p, const VarTable& vt) {
    std::vector<Formula> conjuncts;
    conjuncts.reserve(p.rules().size());
    for (const auto& r : p.rules()) {
        std::vector<Formula> guard;
        for (auto b : r.neg) guard.push_back(!vt.fv(b));
        std::vector<Formula> sat;
        for (auto b : r.pos) sat.push_back(!vt.fv(b));
        for (auto b : r.head) sat.push_back(vt.fv(b));
        conjuncts.push_back(Formula::implication(Formula::all_of(std::move(guard)), Formula::any_of(std::move(sat))));
    }
    return Formula::all_of(std::move(conjuncts));
}

Formula build_f_lm_block(const Program& p, const AtomSet& x, const AtomSet& xi, std::size_t block,
                         const VarTable& vt) {
    const Program restricted = restrict_program(p, x, xi).base;
    std::vector<std::vector<const Rule*>> deriving(p.universe());
    for (const auto& r : restricted.rules())
        for (auto h : r.head) deriving[h].push_back(&r);

    std::vector<Formula> parts;
    parts.reserve((vt.layers() + 1) * vt.atom_count());
    for (auto a : vt.atoms()) parts.push_back(Formula::biconditional(vt.fu(block, 0, a), Formula::constant(false)));
    for (std::size_t j = 1; j <= vt.layers(); ++j) {
        for (auto a : vt.atoms()) {
            std::vector<Formula> step{vt.fu(block, j - 1, a)};
            for (const Rule* r : deriving[a]) {
                std::vector<Formula> body;
                for (auto b : r->pos) body.push_back(vt.fu(block, j - 1, b));
                for (auto b : r->neg) body.push_back(!vt.fv(b));
                step.push_back(Formula::all_of(std::move(body)));
            }
            parts.push_back(Formula::biconditional(vt.fu(block, j, a), Formula::any_of(std::move(step))));
        }
    }
    return Formula::all_of(std::move(parts));
}

Formula build_f_min_block(const Program& p, const AtomSet& x, const AtomSet& xi, std::size_t block,
                          const VarTable& vt) {
    const std::size_t top = vt.layers();
    const Program restricted = restrict_program(p, x, xi).base;
    auto lm = [&](AtomId a) { return vt.fu(block, top, a); };

    std::vector<Formula> within;
    xi.for_each([&](AtomId a) {
        if (x.contains(a)) within.push_back(vt.fv(a));
    });
    const Formula f_subset = Formula::all_of(std::move(within));

    std::vector<Formula> fa;
    for (const auto& r : restricted.rules()) {
        if (!r.head.empty()) continue;
        std::vector<Formula> body;
        for (auto b : r.neg) body.push_back(!vt.fv(b));
        for (auto b : r.pos) body.push_back(lm(b));
        fa.push_back(Formula::all_of(std::move(body)));
    }

    std::vector<Formula> fb;
    for (auto a : vt.atoms())
        if (!x.contains(a)) fb.push_back(Formula::conjunction({!vt.fv(a), lm(a)}));

    std::vector<Formula> equal;
    std::vector<Formula> overflow;
    for (auto a : vt.atoms()) {
        if (xi.contains(a)) {
            equal.push_back(vt.fv(a));
            overflow.push_back(!vt.fv(a));
        } else {
            equal.push_back(Formula::biconditional(vt.fv(a), lm(a)));
            overflow.push_back(Formula::conjunction({lm(a), !vt.fv(a)}));
        }
    }
    const Formula fc =
        Formula::disjunction({Formula::all_of(std::move(equal)), Formula::any_of(std::move(overflow))});

    std::vector<Formula> fd;
    for (const auto& r : p.rules()) {
        if (std::any_of(r.head.begin(), r.head.end(), [&](AtomId a) { return xi.contains(a); })) continue;
        std::vector<Formula> violated;
        for (auto a : r.neg) violated.push_back(!vt.fv(a));
        for (auto a : r.head) violated.push_back(!lm(a));
        // u^p[b] or Xi(b): true for b in Xi, so those conjuncts vanish.
        for (auto b : r.pos)
            if (!xi.contains(b)) violated.push_back(lm(b));
        fd.push_back(Formula::all_of(std::move(violated)));
    }

    const Formula conditions = Formula::disjunction(
        {Formula::any_of(std::move(fa)), Formula::any_of(std::move(fb)), fc, Formula::any_of(std::move(fd))});
    return Formula::disjunction(
        {!f_subset, Formula::conjunction({build_f_lm_block(p, x, xi, block, vt), conditions})});
}

namespace {

struct QueryPlan {
    AtomSet x;
    std::vector<AtomSet> subsets;
};

QueryPlan plan_query(const Program& p, const AtomSet& x, const QuerySpec& q) {
    if (!p.atoms().contains(q.atom)) throw Error("query atom does not occur in the program");
    AtomSet relevant = x & p.atoms();
    const auto ids = relevant.ids();
    if (ids.size() > kMaxBackdoorAtoms)
        throw GuardError("encoding: backdoor of " + std::to_string(ids.size()) + " atoms exceeds the limit");
    if (!verify_strong_backdoor(p, relevant)) throw Error("encoding: X is not a strong Normal-backdoor");
    std::vector<AtomSet> subsets;
    subsets.reserve(std::size_t{1} << ids.size());
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << ids.size()); ++i)
        subsets.push_back(subset_by_index(ids, i, p.universe()));
    return {std::move(relevant), std::move(subsets)};
}

EncodedQuery assemble(const Program& p, QueryPlan plan, std::vector<Formula> blocks, VarTable vt,
                      const QuerySpec& q) {
    std::vector<Formula> parts{build_f_mod(p, vt), Formula::all_of(std::move(blocks)),
                               q.mode == QueryMode::brave ? vt.fv(q.atom) : !vt.fv(q.atom)};
    if (q.property) parts.push_back(*q.property);
    return {Formula::conjunction(std::move(parts)), std::move(vt), std::move(plan.subsets)};
}

} // namespace

EncodedQuery build_query_serial(const Program& p, const AtomSet& x, const QuerySpec& q) {
    QueryPlan plan = plan_query(p, x, q);
    VarTable vt(p, plan.subsets.size());
    std::vector<Formula> blocks;
    blocks.reserve(plan.subsets.size());
    for (std::size_t i = 0; i < plan.subsets.size(); ++i)
        blocks.push_back(build_f_min_block(p, plan.x, plan.subsets[i], i, vt));
    return assemble(p, std::move(plan), std::move(blocks), std::move(vt), q);
}

EncodedQuery build_query(const Program& p, const AtomSet& x, const QuerySpec& q) {
    QueryPlan plan = plan_query(p, x, q);
    VarTable vt(p, plan.subsets.size());
    std::vector<Formula> blocks(plan.subsets.size());
    detail::parallel_for(static_cast<std::int64_t>(blocks.size()), [&](std::int64_t i) {
        const auto idx = static_cast<std::size_t>(i);
        blocks[idx] = build_f_min_block(p, plan.x, plan.subsets[idx], idx, vt);
    });
    return assemble(p, std::move(plan), std::move(blocks), std::move(vt), q);
}

CnfFormula encode_cnf(const EncodedQuery& q, const AtomTable& table) {
    CnfFormula cnf = tseitin_cnf(q.formula, q.vars.fixed_count());
    for (Var id = 1; id <= cnf.num_vars; ++id) {
        const auto s = q.vars.describe(id);
        switch (s.role) {
            case VarTable::Role::v: cnf.names[id] = "v[" + table.name(s.atom) + "]"; break;
            case VarTable::Role::u:
                cnf.names[id] = "u[" + std::to_string(s.block + 1) + "][" + std::to_string(s.layer) + "][" +
                                table.name(s.atom) + "]";
                break;
            case VarTable::Role::label: cnf.names[id] = "t"; break;
        }
    }
    return cnf;
}

AtomSet decode_model(const std::vector<bool>& assignment, const VarTable& vt, std::size_t universe) {
    AtomSet m(universe);
    for (auto a : vt.atoms()) {
        const Var id = vt.v(a);
        if (id >= assignment.size()) throw Error("decode_model: assignment does not cover the v-variables");
        if (assignment[id]) m.insert(a);
    }
    return m;
}

} // namespace bdn
