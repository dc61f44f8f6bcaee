#include "bdnsat/mincheck.hpp"

#include "bdnsat/error.hpp"
#include "parallel.hpp"

#include <algorithm>

namespace bdn {

RestrictedProgram restrict_program(const Program& p, const AtomSet& x, const AtomSet& x1) {
    if (!x1.is_subset_of(x)) throw Error("restrict_program: X1 is not a subset of X");
    std::vector<Rule> out;
    out.reserve(p.rules().size());
    for (const auto& r : p.rules()) {
        if (std::any_of(r.head.begin(), r.head.end(), [&](AtomId a) { return x1.contains(a); })) continue;
        Rule s;
        std::copy_if(r.head.begin(), r.head.end(), std::back_inserter(s.head), [&](AtomId a) { return !x.contains(a); });
        std::copy_if(r.pos.begin(), r.pos.end(), std::back_inserter(s.pos), [&](AtomId a) { return !x1.contains(a); });
        s.neg = r.neg;
        out.push_back(std::move(s));
    }
    return {p.with_rules(std::move(out)), x, x1};
}

std::string MinCheckOutcome::describe() const {
    static constexpr std::pair<Condition, const char*> names[] = {
        {not_contained, "1"}, {violates_constraint, "a"}, {escapes_m_minus_x, "b"},
        {not_proper_subset, "c"}, {not_a_model, "d"}};
    std::string out;
    for (const auto& [c, n] : names) {
        if (!has(c)) continue;
        if (!out.empty()) out += ',';
        out += n;
    }
    return out.empty() ? "-" : out;
}

MinCheckOutcome mincheck(const Program& p, const Program& reduct, const AtomSet& m, const AtomSet& x,
                         const AtomSet& x1) {
    MinCheckOutcome out;
    out.least_model = p.empty_set();
    if (!x1.is_subset_of(m)) {
        out.result = true;
        out.fired = MinCheckOutcome::not_contained;
        return out;
    }

    const RestrictedProgram restricted = restrict_program(reduct, x, x1);
    if (!restricted.base.flags().horn) throw Error("mincheck: restricted reduct is not Horn; X is not a backdoor");
    const AtomSet& lm = out.least_model = least_model(restricted.base);

    for (const auto& r : restricted.base.rules()) {
        if (r.is_constraint() && !satisfies(lm, r)) {
            out.fired |= MinCheckOutcome::violates_constraint;
            break;
        }
    }
    if (!lm.is_subset_of(m - x)) out.fired |= MinCheckOutcome::escapes_m_minus_x;
    const AtomSet extended = lm | x1;
    if (extended == m || !extended.is_subset_of(m)) out.fired |= MinCheckOutcome::not_proper_subset;
    if (!is_model(extended, reduct)) out.fired |= MinCheckOutcome::not_a_model;

    out.result = out.fired != MinCheckOutcome::none;
    return out;
}

MinCheckOutcome mincheck(const Program& p, const AtomSet& m, const AtomSet& x, const AtomSet& x1) {
    return mincheck(p, gl_reduct(p, m), m, x, x1);
}

AtomSet subset_by_index(const std::vector<AtomId>& ids, std::uint64_t index, std::size_t universe) {
    AtomSet s(universe);
    for (std::size_t j = 0; j < ids.size(); ++j)
        if ((index >> j) & 1u) s.insert(ids[j]);
    return s;
}

namespace {

struct Prepared {
    Program reduct;
    AtomSet x;
    std::vector<AtomId> ids;
};

std::optional<Prepared> prepare(const Program& p, const AtomSet& m, const AtomSet& x, AnswerSetCheck& out) {
    AtomSet relevant = x & p.atoms();
    auto ids = relevant.ids();
    if (ids.size() > kMaxBackdoorAtoms)
        throw GuardError("answer-set check: backdoor of " + std::to_string(ids.size()) + " atoms exceeds the limit");
    Program reduct = gl_reduct(p, m);
    out.model_of_reduct = is_model(m, reduct);
    if (!out.model_of_reduct) return std::nullopt;
    out.subsets.resize(std::size_t{1} << ids.size());
    return Prepared{std::move(reduct), std::move(relevant), std::move(ids)};
}

void finish(AnswerSetCheck& out) {
    for (std::size_t i = 0; i < out.subsets.size(); ++i) {
        if (!out.subsets[i].result) {
            out.first_failure = i;
            break;
        }
    }
    out.answer_set = out.model_of_reduct && !out.first_failure;
}

} // namespace

AnswerSetCheck check_answer_set_serial(const Program& p, const AtomSet& m, const AtomSet& x) {
    AnswerSetCheck out;
    if (auto prep = prepare(p, m, x, out)) {
        for (std::size_t i = 0; i < out.subsets.size(); ++i)
            out.subsets[i] = mincheck(p, prep->reduct, m, prep->x, subset_by_index(prep->ids, i, p.universe()));
    }
    finish(out);
    return out;
}

AnswerSetCheck check_answer_set(const Program& p, const AtomSet& m, const AtomSet& x) {
    AnswerSetCheck out;
    if (auto prep = prepare(p, m, x, out)) {
        detail::parallel_for(static_cast<std::int64_t>(out.subsets.size()), [&](std::int64_t i) {
            const auto idx = static_cast<std::size_t>(i);
            out.subsets[idx] = mincheck(p, prep->reduct, m, prep->x, subset_by_index(prep->ids, idx, p.universe()));
        });
    }
    finish(out);
    return out;
}

} // namespace bdn
