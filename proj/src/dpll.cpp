#include "bdnsat/solver.hpp"

#include <cstdint>
#include <cstdlib>
#include <deque>

namespace bdn {
namespace {

constexpr std::int8_t kUnassigned = -1;

class Dpll {
public:
    explicit Dpll(const CnfFormula& cnf) : n_(cnf.num_vars), value_(n_ + 1, kUnassigned), watches_(2 * (n_ + 1)) {
        eliminate_pure_literals(cnf);
    }

    SatStatus run() {
        if (conflict_at_root_ || !propagate()) return SatStatus::unsat;
        Var cursor = 1;
        for (;;) {
            while (cursor <= n_ && value_[cursor] != kUnassigned) ++cursor;
            if (cursor > n_) return SatStatus::sat;

            levels_.push_back({trail_.size(), -static_cast<Literal>(cursor), false});
            assign(levels_.back().decision);
            while (!propagate()) {
                while (!levels_.empty() && levels_.back().flipped) {
                    undo_to(levels_.back().trail_size);
                    levels_.pop_back();
                }
                if (levels_.empty()) return SatStatus::unsat;
                Level& top = levels_.back();
                undo_to(top.trail_size);
                top.flipped = true;
                top.decision = -top.decision;
                cursor = static_cast<Var>(std::abs(top.decision));
                assign(top.decision);
            }
        }
    }

    std::vector<bool> model() const {
        std::vector<bool> out(n_ + 1, false);
        for (Var v = 1; v <= n_; ++v) out[v] = value_[v] == 1;
        return out;
    }

private:
    struct Level {
        std::size_t trail_size;
        Literal decision;
        bool flipped;
    };

    static std::size_t code(Literal l) { return 2 * static_cast<std::size_t>(std::abs(l)) + (l < 0 ? 1 : 0); }

    // 1 true, 0 false, -1 unassigned
    int lit_value(Literal l) const {
        const std::int8_t v = value_[static_cast<std::size_t>(std::abs(l))];
        if (v == kUnassigned) return -1;
        return (l > 0) == (v == 1) ? 1 : 0;
    }

    void assign(Literal l) {
        value_[static_cast<std::size_t>(std::abs(l))] = l > 0 ? 1 : 0;
        trail_.push_back(l);
    }

    void undo_to(std::size_t size) {
        while (trail_.size() > size) {
            value_[static_cast<std::size_t>(std::abs(trail_.back()))] = kUnassigned;
            trail_.pop_back();
        }
        qhead_ = std::min(qhead_, size);
    }

    // Root-level pure literals are fixed and every clause they satisfy is dropped;
    // the remaining clauses are loaded into the watch lists.
    void eliminate_pure_literals(const CnfFormula& cnf) {
        std::vector<std::size_t> occurrences(2 * (n_ + 1), 0);
        std::vector<std::vector<std::size_t>> clauses_of(2 * (n_ + 1));
        for (std::size_t i = 0; i < cnf.clauses.size(); ++i)
            for (Literal l : cnf.clauses[i]) {
                ++occurrences[code(l)];
                clauses_of[code(l)].push_back(i);
            }

        std::vector<bool> removed(cnf.clauses.size(), false);
        std::deque<Var> pending;
        for (Var v = 1; v <= n_; ++v) pending.push_back(v);
        while (!pending.empty()) {
            const Var v = pending.front();
            pending.pop_front();
            if (value_[v] != kUnassigned) continue;
            const auto pos = occurrences[code(static_cast<Literal>(v))];
            const auto neg = occurrences[code(-static_cast<Literal>(v))];
            if ((pos == 0) == (neg == 0)) continue; // absent or mixed
            const Literal pure = pos > 0 ? static_cast<Literal>(v) : -static_cast<Literal>(v);
            assign(pure);
            for (auto ci : clauses_of[code(pure)]) {
                if (removed[ci]) continue;
                removed[ci] = true;
                for (Literal l : cnf.clauses[ci]) {
                    if (--occurrences[code(l)] == 0) pending.push_back(static_cast<Var>(std::abs(l)));
                }
            }
        }
        qhead_ = trail_.size(); // pure literals satisfy everything they touch

        for (std::size_t i = 0; i < cnf.clauses.size(); ++i) {
            if (removed[i]) continue;
            const Clause& c = cnf.clauses[i];
            if (c.empty()) {
                conflict_at_root_ = true;
            } else if (c.size() == 1) {
                units_.push_back(c[0]);
            } else {
                const auto idx = clauses_.size();
                clauses_.push_back(c);
                watches_[code(c[0])].push_back(idx);
                watches_[code(c[1])].push_back(idx);
            }
        }
        for (Literal u : units_) {
            const int v = lit_value(u);
            if (v == 0) conflict_at_root_ = true;
            else if (v == -1) assign(u);
        }
    }

    bool propagate() {
        while (qhead_ < trail_.size()) {
            const Literal falsified = -trail_[qhead_++];
            auto& list = watches_[code(falsified)];
            std::size_t keep = 0;
            for (std::size_t k = 0; k < list.size(); ++k) {
                const auto ci = list[k];
                Clause& c = clauses_[ci];
                if (c[0] == falsified) std::swap(c[0], c[1]);
                if (lit_value(c[0]) == 1) {
                    list[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t j = 2; j < c.size(); ++j) {
                    if (lit_value(c[j]) != 0) {
                        std::swap(c[1], c[j]);
                        watches_[code(c[1])].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                list[keep++] = ci;
                const int first = lit_value(c[0]);
                if (first == 0) {
                    for (++k; k < list.size(); ++k) list[keep++] = list[k];
                    list.resize(keep);
                    return false;
                }
                if (first == -1) assign(c[0]);
            }
            list.resize(keep);
        }
        return true;
    }

    Var n_;
    std::vector<std::int8_t> value_;
    std::vector<std::vector<std::size_t>> watches_;
    std::vector<Clause> clauses_;
    std::vector<Literal> units_;
    std::vector<Literal> trail_;
    std::vector<Level> levels_;
    std::size_t qhead_ = 0;
    bool conflict_at_root_ = false;
};

} // namespace

SatResult solve_dpll(const CnfFormula& cnf) {
    Dpll dpll(cnf);
    SatResult r;
    r.solver = "internal-dpll";
    r.status = dpll.run();
    if (r.status == SatStatus::sat) r.assignment = dpll.model();
    return r;
}

} // namespace bdn
