#include "bdnsat/formula.hpp"

#include "bdnsat/error.hpp"

#include <algorithm>

namespace bdn {

Formula::Formula() : Formula(constant(false)) {}

Formula Formula::constant(bool value) {
    static const Formula t(std::make_shared<const Node>(Node{Kind::constant, true, 0, {}}));
    static const Formula f(std::make_shared<const Node>(Node{Kind::constant, false, 0, {}}));
    return value ? t : f;
}

Formula Formula::variable(Var v) {
    if (v == 0) throw Error("formula: variable ids start at 1");
    return Formula(std::make_shared<const Node>(Node{Kind::variable, false, v, {}}));
}

Formula Formula::negation(Formula f) {
    return Formula(std::make_shared<const Node>(Node{Kind::negation, false, 0, {std::move(f)}}));
}

Formula Formula::conjunction(std::vector<Formula> children) {
    if (children.empty()) throw Error("formula: empty conjunction");
    return Formula(std::make_shared<const Node>(Node{Kind::conjunction, false, 0, std::move(children)}));
}

Formula Formula::disjunction(std::vector<Formula> children) {
    if (children.empty()) throw Error("formula: empty disjunction");
    return Formula(std::make_shared<const Node>(Node{Kind::disjunction, false, 0, std::move(children)}));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(Node{Kind::implication, false, 0, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::biconditional(Formula lhs, Formula rhs) {
    return Formula(
        std::make_shared<const Node>(Node{Kind::biconditional, false, 0, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::all_of(std::vector<Formula> children) {
    if (children.empty()) return constant(true);
    if (children.size() == 1) return std::move(children.front());
    return conjunction(std::move(children));
}

Formula Formula::any_of(std::vector<Formula> children) {
    if (children.empty()) return constant(false);
    if (children.size() == 1) return std::move(children.front());
    return disjunction(std::move(children));
}

std::size_t Formula::node_count() const {
    std::size_t n = 1;
    for (const auto& c : children()) n += c.node_count();
    return n;
}

Var Formula::max_var() const {
    Var m = kind() == Kind::variable ? var() : 0;
    for (const auto& c : children()) m = std::max(m, c.max_var());
    return m;
}

bool Formula::evaluate(const std::vector<bool>& assignment) const {
    const auto& ch = children();
    switch (kind()) {
        case Kind::constant: return value();
        case Kind::variable: return assignment.at(var());
        case Kind::negation: return !ch[0].evaluate(assignment);
        case Kind::conjunction:
            return std::all_of(ch.begin(), ch.end(), [&](const Formula& c) { return c.evaluate(assignment); });
        case Kind::disjunction:
            return std::any_of(ch.begin(), ch.end(), [&](const Formula& c) { return c.evaluate(assignment); });
        case Kind::implication: return !ch[0].evaluate(assignment) || ch[1].evaluate(assignment);
        case Kind::biconditional: return ch[0].evaluate(assignment) == ch[1].evaluate(assignment);
    }
    return false;
}

std::string Formula::to_string() const {
    const auto& ch = children();
    auto join = [&](const char* op) {
        std::string out = "(";
        for (std::size_t i = 0; i < ch.size(); ++i) {
            if (i) out += op;
            out += ch[i].to_string();
        }
        return out + ")";
    };
    switch (kind()) {
        case Kind::constant: return value() ? "T" : "F";
        case Kind::variable: return "x" + std::to_string(var());
        case Kind::negation: return "-" + ch[0].to_string();
        case Kind::conjunction: return join(" & ");
        case Kind::disjunction: return join(" | ");
        case Kind::implication: return join(" -> ");
        case Kind::biconditional: return join(" <-> ");
    }
    return {};
}

} // namespace bdn
