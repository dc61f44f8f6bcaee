#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace bdn {

/// Propositional variable id, 1-based so that it doubles as a DIMACS literal.
using Var = std::uint32_t;

/// Immutable boolean expression tree. Subtrees may be shared between parents;
/// `node_count` counts them once per occurrence.
class Formula {
public:
    enum class Kind : std::uint8_t { constant, variable, negation, conjunction, disjunction, implication, biconditional };

    Formula(); // constant false

    static Formula constant(bool value);
    static Formula variable(Var v);
    static Formula negation(Formula f);
    /// At least one child.
    static Formula conjunction(std::vector<Formula> children);
    static Formula disjunction(std::vector<Formula> children);
    static Formula implication(Formula lhs, Formula rhs);
    static Formula biconditional(Formula lhs, Formula rhs);

    /// Empty list becomes the neutral constant; a single child is returned as is.
    static Formula all_of(std::vector<Formula> children);
    static Formula any_of(std::vector<Formula> children);

    Kind kind() const noexcept { return node_->kind; }
    bool value() const noexcept { return node_->value; }
    Var var() const noexcept { return node_->var; }
    const std::vector<Formula>& children() const noexcept { return node_->children; }

    bool is_constant(bool v) const noexcept { return kind() == Kind::constant && value() == v; }

    /// Number of nodes in the tree.
    std::size_t node_count() const;
    /// Largest variable id referenced, 0 if none.
    Var max_var() const;

    /// Evaluation under `assignment`, indexed by variable id (index 0 unused).
    bool evaluate(const std::vector<bool>& assignment) const;

    std::string to_string() const;

private:
    struct Node {
        Kind kind;
        bool value = false;
        Var var = 0;
        std::vector<Formula> children;
    };
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

inline Formula operator!(Formula f) { return Formula::negation(std::move(f)); }

} // namespace bdn
