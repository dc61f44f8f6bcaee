#include "bdnsat/program.hpp"

#include "bdnsat/error.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <sstream>

namespace bdn {

AtomId AtomTable::intern(std::string_view name) {
    if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
    const auto id = static_cast<AtomId>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
}

std::optional<AtomId> AtomTable::find(std::string_view name) const {
    if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
    return std::nullopt;
}

bool AtomTable::valid_name(std::string_view name) noexcept {
    if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
    return std::all_of(name.begin() + 1, name.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

namespace {

std::size_t sort_unique(std::vector<AtomId>& v) {
    std::sort(v.begin(), v.end());
    const auto before = v.size();
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return before - v.size();
}

bool sorted_intersect(const std::vector<AtomId>& a, const std::vector<AtomId>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else return true;
    }
    return false;
}

} // namespace

std::size_t Rule::normalize() { return sort_unique(head) + sort_unique(pos) + sort_unique(neg); }

bool Rule::is_tautological() const { return sorted_intersect(pos, head) || sorted_intersect(pos, neg); }

Program::Program() : Program(std::make_shared<AtomTable>(), {}) {}

Program::Program(std::shared_ptr<const AtomTable> table, std::vector<Rule> rules, IngestStats stats)
    : table_(std::move(table)), rules_(std::move(rules)), atoms_(table_->size()), stats_(stats) {
    for (const auto& r : rules_) {
        for (auto a : r.head) atoms_.insert(a);
        for (auto a : r.pos) atoms_.insert(a);
        for (auto a : r.neg) atoms_.insert(a);
    }
    flags_ = classify(*this);
}

std::size_t Program::size() const noexcept {
    std::size_t n = 0;
    for (const auto& r : rules_) n += r.size();
    return n;
}

Program Program::with_rules(std::vector<Rule> rules) const { return Program(table_, std::move(rules)); }

AtomSet Program::set_of(const std::vector<std::string>& names) const {
    AtomSet s = empty_set();
    for (const auto& n : names) {
        auto id = table_->find(n);
        if (!id) throw Error("unknown atom '" + n + "'");
        s.insert(*id);
    }
    return s;
}

std::string Program::format_set(const AtomSet& s) const {
    std::string out = "{";
    bool first = true;
    s.for_each([&](AtomId a) {
        if (!first) out += ',';
        out += table_->name(a);
        first = false;
    });
    return out + "}";
}

std::string Program::format_rule(const Rule& r) const {
    std::string out;
    for (std::size_t i = 0; i < r.head.size(); ++i) {
        if (i) out += " | ";
        out += table_->name(r.head[i]);
    }
    if (!r.pos.empty() || !r.neg.empty() || r.head.empty()) {
        out += r.head.empty() ? ":-" : " :-";
        bool first = true;
        auto lit = [&](AtomId a, bool negated) {
            out += first ? " " : ", ";
            if (negated) out += "not ";
            out += table_->name(a);
            first = false;
        };
        for (auto a : r.pos) lit(a, false);
        for (auto a : r.neg) lit(a, true);
    }
    return out + ".";
}

std::string Program::to_string() const {
    std::string out;
    for (const auto& r : rules_) {
        out += format_rule(r);
        out += '\n';
    }
    return out;
}

bool Program::same_structure(const Program& other) const {
    if (rules_.size() != other.rules_.size()) return false;
    auto names = [](const AtomTable& t, const std::vector<AtomId>& ids) {
        std::vector<std::string> out;
        out.reserve(ids.size());
        for (auto a : ids) out.push_back(t.name(a));
        std::sort(out.begin(), out.end());
        return out;
    };
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const auto& r = rules_[i];
        const auto& s = other.rules_[i];
        if (names(*table_, r.head) != names(*other.table_, s.head) ||
            names(*table_, r.pos) != names(*other.table_, s.pos) ||
            names(*table_, r.neg) != names(*other.table_, s.neg))
            return false;
    }
    return true;
}

std::ostream& operator<<(std::ostream& os, const Program& p) { return os << p.to_string(); }

ProgramBuilder& ProgramBuilder::add(SourceRule rule) {
    rules_.push_back(std::move(rule));
    return *this;
}

ProgramBuilder& ProgramBuilder::add(std::vector<std::string> head, std::vector<std::string> pos,
                                    std::vector<std::string> neg) {
    SourceRule r{std::move(head), {}};
    for (auto& a : pos) r.body.emplace_back(std::move(a), false);
    for (auto& a : neg) r.body.emplace_back(std::move(a), true);
    return add(std::move(r));
}

Program ProgramBuilder::build() const {
    // Tautology and duplicate detection work on names; ids are handed out only
    // to rules that survive so that at(P) equals the table.
    IngestStats stats;
    auto table = std::make_shared<AtomTable>();
    std::vector<Rule> rules;
    for (const auto& src : rules_) {
        for (const auto& a : src.head)
            if (!AtomTable::valid_name(a)) throw Error("invalid atom name '" + a + "'");
        for (const auto& [a, negated] : src.body)
            if (!AtomTable::valid_name(a)) throw Error("invalid atom name '" + a + "'");
        if (src.head.empty() && src.body.empty()) throw Error("rule with empty head and empty body");

        auto in = [](const std::vector<std::string>& v, const std::string& a) {
            return std::find(v.begin(), v.end(), a) != v.end();
        };
        std::vector<std::string> pos;
        std::vector<std::string> neg;
        for (const auto& [a, negated] : src.body) (negated ? neg : pos).push_back(a);
        bool taut = false;
        for (const auto& a : pos) taut = taut || in(src.head, a) || in(neg, a);
        if (taut) {
            ++stats.tautologies_removed;
            continue;
        }
        Rule r;
        for (const auto& a : src.head) r.head.push_back(table->intern(a));
        for (const auto& [a, negated] : src.body) (negated ? r.neg : r.pos).push_back(table->intern(a));
        stats.duplicate_atoms += r.normalize();
        rules.push_back(std::move(r));
    }
    return Program(std::move(table), std::move(rules), stats);
}

Program remove_tautologies(const Program& p) {
    std::vector<Rule> kept;
    kept.reserve(p.rules().size());
    for (const auto& r : p.rules())
        if (!r.is_tautological()) kept.push_back(r);
    return p.with_rules(std::move(kept));
}

bool satisfies(const AtomSet& m, const Rule& r) {
    for (auto a : r.head)
        if (m.contains(a)) return true;
    for (auto a : r.neg)
        if (m.contains(a)) return true;
    for (auto a : r.pos)
        if (!m.contains(a)) return true;
    return false;
}

bool is_model(const AtomSet& m, const Program& p) {
    return std::all_of(p.rules().begin(), p.rules().end(), [&](const Rule& r) { return satisfies(m, r); });
}

Program gl_reduct(const Program& p, const AtomSet& m) {
    std::vector<Rule> out;
    out.reserve(p.rules().size());
    for (const auto& r : p.rules()) {
        if (std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return m.contains(a); })) continue;
        out.push_back(Rule{r.head, r.pos, {}});
    }
    return p.with_rules(std::move(out));
}

AtomSet least_model(const Program& p) {
    const auto& rules = p.rules();
    std::vector<std::vector<std::size_t>> watchers(p.universe());
    std::vector<std::size_t> missing(rules.size());
    AtomSet model = p.empty_set();
    std::deque<AtomId> queue;

    auto derive = [&](const Rule& r) {
        const AtomId h = r.head.front();
        if (!model.contains(h)) {
            model.insert(h);
            queue.push_back(h);
        }
    };

    for (std::size_t i = 0; i < rules.size(); ++i) {
        const auto& r = rules[i];
        if (!r.is_horn()) throw Error("least_model: rule '" + p.format_rule(r) + "' is not Horn");
        if (r.is_constraint()) continue;
        missing[i] = r.pos.size();
        for (auto b : r.pos) watchers[b].push_back(i);
    }
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (!rules[i].is_constraint() && missing[i] == 0) derive(rules[i]);

    while (!queue.empty()) {
        const AtomId a = queue.front();
        queue.pop_front();
        for (auto i : watchers[a])
            if (--missing[i] == 0) derive(rules[i]);
    }
    return model;
}

bool is_tight(const Program& p) {
    const std::size_t n = p.universe();
    std::vector<std::vector<AtomId>> succ(n);
    for (const auto& r : p.rules())
        for (auto h : r.head)
            for (auto b : r.pos) succ[h].push_back(b);

    // Iterative three-colour DFS.
    enum : unsigned char { white, grey, black };
    std::vector<unsigned char> colour(n, white);
    std::vector<std::pair<AtomId, std::size_t>> stack;
    for (AtomId root = 0; root < n; ++root) {
        if (colour[root] != white) continue;
        colour[root] = grey;
        stack.emplace_back(root, 0);
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < succ[v].size()) {
                const AtomId w = succ[v][next++];
                if (colour[w] == grey) return false;
                if (colour[w] == white) {
                    colour[w] = grey;
                    stack.emplace_back(w, 0);
                }
            } else {
                colour[v] = black;
                stack.pop_back();
            }
        }
    }
    return true;
}

ProgramFlags classify(const Program& p) {
    ProgramFlags f;
    for (const auto& r : p.rules()) {
        f.normal = f.normal && r.is_normal();
        f.negation_free = f.negation_free && r.neg.empty();
    }
    f.horn = f.normal && f.negation_free;
    f.tight = is_tight(p);
    return f;
}

} // namespace bdn
