#pragma once

#include "bdnsat/atom_set.hpp"

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bdn {

/// Name <-> id map for the atoms of one program. Ids are dense from 0.
class AtomTable {
public:
    AtomId intern(std::string_view name);
    std::optional<AtomId> find(std::string_view name) const;
    const std::string& name(AtomId id) const { return names_.at(id); }
    std::size_t size() const noexcept { return names_.size(); }

    /// `[a-z][A-Za-z0-9_]*`
    static bool valid_name(std::string_view name) noexcept;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, AtomId> index_;
};

/// A disjunctive rule `H <- B+, not B-`. The three atom lists are kept sorted and duplicate-free.
struct Rule {
    std::vector<AtomId> head;
    std::vector<AtomId> pos;
    std::vector<AtomId> neg;

    /// Sorts and deduplicates; returns the number of duplicates dropped.
    std::size_t normalize();

    bool is_tautological() const;
    bool is_normal() const noexcept { return head.size() <= 1; }
    bool is_constraint() const noexcept { return head.empty(); }
    bool is_horn() const noexcept { return is_normal() && neg.empty(); }
    std::size_t size() const noexcept { return head.size() + pos.size() + neg.size(); }

    friend bool operator==(const Rule&, const Rule&) = default;
};

struct ProgramFlags {
    bool normal = true;
    bool horn = true;
    bool negation_free = true;
    bool tight = true;

    friend bool operator==(const ProgramFlags&, const ProgramFlags&) = default;
};

/// Bookkeeping from parsing; zero for derived programs.
struct IngestStats {
    std::size_t tautologies_removed = 0;
    std::size_t duplicate_atoms = 0;
};

/// An ordered list of rules over a shared atom table. Immutable after construction.
///
/// Derived programs (reducts, restrictions) share the table of the program they
/// came from, so `atoms()` (the atoms actually occurring in rules) may be a
/// strict subset of the table.
class Program {
public:
    Program();
    Program(std::shared_ptr<const AtomTable> table, std::vector<Rule> rules, IngestStats stats = {});

    const std::vector<Rule>& rules() const noexcept { return rules_; }
    const AtomTable& table() const noexcept { return *table_; }
    const std::shared_ptr<const AtomTable>& table_ptr() const noexcept { return table_; }
    std::size_t universe() const noexcept { return table_->size(); }

    /// at(P): atoms occurring in some rule.
    const AtomSet& atoms() const noexcept { return atoms_; }
    const ProgramFlags& flags() const noexcept { return flags_; }
    const IngestStats& ingest_stats() const noexcept { return stats_; }

    /// Sum of rule sizes.
    std::size_t size() const noexcept;

    /// Same table, different rules.
    Program with_rules(std::vector<Rule> rules) const;

    AtomSet empty_set() const { return AtomSet(universe()); }
    /// Throws `Error` on an unknown name.
    AtomSet set_of(const std::vector<std::string>& names) const;

    std::string format_set(const AtomSet& s) const;
    std::string format_rule(const Rule& r) const;
    /// One rule per line, same grammar as the parser accepts.
    std::string to_string() const;

    /// Rule-by-rule comparison by atom names, independent of id assignment.
    bool same_structure(const Program& other) const;

private:
    std::shared_ptr<const AtomTable> table_;
    std::vector<Rule> rules_;
    AtomSet atoms_;
    ProgramFlags flags_;
    IngestStats stats_;
};

std::ostream& operator<<(std::ostream& os, const Program& p);

/// Rule as written in source: names in textual order, body literals interleaved.
struct SourceRule {
    std::vector<std::string> head;
    std::vector<std::pair<std::string, bool>> body; // (atom, negated)
};

/// Collects source rules and performs ingestion: deduplication, tautology
/// removal, and id assignment by first appearance among the surviving rules.
class ProgramBuilder {
public:
    ProgramBuilder& add(SourceRule rule);
    ProgramBuilder& add(std::vector<std::string> head, std::vector<std::string> pos, std::vector<std::string> neg);
    Program build() const;

private:
    std::vector<SourceRule> rules_;
};

Program parse_program(std::string_view text);
Program parse_program_file(const std::string& path);

Program remove_tautologies(const Program& p);

bool satisfies(const AtomSet& m, const Rule& r);
bool is_model(const AtomSet& m, const Program& p);

/// P^M: drop rules whose negative body meets M, strip negative bodies of the rest.
Program gl_reduct(const Program& p, const AtomSet& m);

/// Least model of the non-constraint part of a Horn program. Constraints are ignored.
/// Throws `Error` if some rule is not Horn.
AtomSet least_model(const Program& p);

ProgramFlags classify(const Program& p);

/// Acyclicity of the positive dependency graph (edge x -> y iff x in H(r), y in B+(r)).
bool is_tight(const Program& p);

} // namespace bdn
