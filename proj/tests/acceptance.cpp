// Acceptance suite: one PASS/FAIL line per criterion; exit status 0 iff all pass.

#include "bdnsat/backdoor.hpp"
#include "bdnsat/encoding.hpp"
#include "bdnsat/mincheck.hpp"
#include "bdnsat/oracle.hpp"
#include "bdnsat/solver.hpp"
#include "support/test_support.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace bdn;
using namespace bdn::test;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed(double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

/// 500 random programs, at most 7 atoms and 10 rules each.
const std::vector<Program>& corpus() {
    static const std::vector<Program> programs = [] {
        std::mt19937_64 rng(20240607);
        std::vector<Program> out;
        while (out.size() < 500) {
            Program p = random_program(rng, {7, 10});
            if (p.atoms().empty()) continue;
            out.push_back(std::move(p));
        }
        return out;
    }();
    return programs;
}

AtomSet backdoor_of(const Program& p) { return find_backdoor(p, p.universe())->atoms; }

bool solve_sat(const CnfFormula& cnf, std::size_t& unknown) {
    const SatResult r = solve(cnf, SolverConfig{});
    if (r.status == SatStatus::unknown) ++unknown;
    return r.status == SatStatus::sat;
}

Verdict example_fidelity() {
    const auto start = Clock::now();
    const Program p = parse_program(kP1);
    const AtomSet m = set_of(p, "b,c,g");
    const AtomSet x = set_of(p, "b,c,h");
    std::vector<std::string> problems;

    if (!naive_is_answer_set(p, m)) problems.push_back("oracle rejects {b,c,g}");
    if (!verify_strong_backdoor(p, x)) problems.push_back("{b,c,h} not verified");
    if (!is_answer_set(p, m, x)) problems.push_back("MinCheck driver rejects {b,c,g}");

    const std::vector<std::pair<std::string, std::string>> reducts{
        {"", "i :- g. a. g :- not i."}, {"h", "a. g :- not i."},        {"c", "a. g :- not i."},
        {"c,h", "a. g :- not i."},      {"b", "a. i :- g. g :- not i."}, {"b,h", "a. g :- not i."},
        {"b,c", "g :- not i."},         {"b,c,h", "g :- not i."},
    };
    for (const auto& [truths, expected] : reducts)
        if (canonical(assignment_reduct(p, TruthAssignment(x, set_of(p, truths)))) != canonical_text(expected))
            problems.push_back("reduct for true atoms {" + truths + "}");

    auto fires = [&](const std::string& x1, MinCheckOutcome::Condition c, const char* label) {
        const MinCheckOutcome out = mincheck(p, m, x, set_of(p, x1));
        if (!out.result || !out.has(c)) problems.push_back(std::string("X1={") + x1 + "} did not fire " + label);
    };
    fires("", MinCheckOutcome::violates_constraint, "(a)");
    fires("c", MinCheckOutcome::not_proper_subset, "(c)");
    fires("b,c", MinCheckOutcome::not_proper_subset, "(c)");

    const double t = seconds_since(start);
    if (t >= 1.0) problems.push_back("took " + fixed(t, 2) + " s");
    Verdict v;
    v.pass = problems.empty();
    v.detail = v.pass ? "3 checks, 8 reducts, 3 MinCheck conditions in " + fixed(t, 3) + " s" : problems.front();
    return v;
}

Verdict theorem1_equivalence() {
    const auto start = Clock::now();
    std::size_t candidates = 0, mismatches = 0;
    for (const auto& p : corpus()) {
        const AtomSet x = backdoor_of(p);
        for (const auto& m : all_subsets(p)) {
            ++candidates;
            mismatches += is_answer_set(p, m, x) != naive_is_answer_set(p, m);
        }
    }
    const double t = seconds_since(start);
    return {mismatches == 0 && t < 300.0, std::to_string(corpus().size()) + " programs, " +
                                              std::to_string(candidates) + " candidates, " +
                                              std::to_string(mismatches) + " mismatches, " + fixed(t, 1) + " s"};
}

Verdict theorem2_end_to_end() {
    const auto start = Clock::now();
    std::size_t queries = 0, mismatches = 0, unknown = 0;
    for (const auto& p : corpus()) {
        const AtomSet x = backdoor_of(p);
        const auto sets = enumerate_answer_sets(p);
        for (auto a : p.atoms().ids()) {
            const bool some = std::any_of(sets.begin(), sets.end(), [&](const AtomSet& s) { return s.contains(a); });
            const bool all = std::all_of(sets.begin(), sets.end(), [&](const AtomSet& s) { return s.contains(a); });
            const bool brave = solve_sat(encode_cnf(build_query(p, x, {QueryMode::brave, a, std::nullopt}), p.table()), unknown);
            const bool skept = solve_sat(encode_cnf(build_query(p, x, {QueryMode::skeptical, a, std::nullopt}), p.table()), unknown);
            queries += 2;
            mismatches += (brave != some) + (!skept != all);
        }
    }
    const double t = seconds_since(start);
    return {mismatches == 0 && unknown == 0 && t < 600.0,
            std::to_string(queries) + " queries, " + std::to_string(mismatches) + " mismatches, " +
                std::to_string(unknown) + " unknown, " + fixed(t, 1) + " s"};
}

Verdict strong_equals_deletion() {
    std::size_t sets = 0, mismatches = 0;
    for (const auto& p : corpus()) {
        const auto ids = p.atoms().ids();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ids.size()); ++mask) {
            if (__builtin_popcountll(mask) > 4) continue;
            const AtomSet x = subset_by_index(ids, mask, p.universe());
            const auto xs = x.ids();
            bool all_normal = true;
            for (std::uint64_t t = 0; t < (std::uint64_t{1} << xs.size()) && all_normal; ++t)
                all_normal = assignment_reduct(p, TruthAssignment(x, subset_by_index(xs, t, p.universe()))).flags().normal;
            ++sets;
            mismatches += all_normal != delete_atoms(p, x).flags().normal;
        }
    }
    return {mismatches == 0, std::to_string(sets) + " backdoor candidates, " + std::to_string(mismatches) + " mismatches"};
}

Verdict detection_optimality() {
    std::size_t graphs = 0, mismatches = 0;
    auto compare = [&](const Program& p) {
        const HeadGraph g = head_dependency_graph(p);
        const auto found = find_backdoor(p, p.universe());
        ++graphs;
        mismatches += !found || found->size() != exhaustive_min_cover(p.universe(), g.edges) ||
                      !verify_strong_backdoor(p, found->atoms);
    };
    for (const auto& p : corpus()) compare(p);
    std::mt19937_64 rng(4177);
    for (int i = 0; i < 300; ++i) {
        const std::size_t atoms = 8 + rng() % 7;
        ProgramBuilder b;
        for (auto& r : random_source_rules(rng, atoms, atoms + rng() % atoms)) b.add(std::move(r));
        compare(b.build());
    }
    const Program p1 = parse_program(kP1);
    const auto bd = find_backdoor(p1, 7);
    const bool p1_ok = bd && bd->size() == 3 && !find_backdoor(p1, 2);
    return {mismatches == 0 && p1_ok, std::to_string(graphs) + " head graphs (up to 14 vertices), " +
                                          std::to_string(mismatches) + " mismatches, P1 minimum " +
                                          (bd ? std::to_string(bd->size()) : "none")};
}

struct Fit {
    double intercept = 0, slope = 0, worst = 0; // worst relative deviation from the line
};

/// Least-squares line y = intercept + slope * x. With `relative` each residual
/// is divided by its measurement, so the fit minimizes relative error.
Fit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys, bool relative) {
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double w = relative ? 1.0 / (ys[i] * ys[i]) : 1.0;
        sw += w;
        sx += w * xs[i];
        sy += w * ys[i];
        sxx += w * xs[i] * xs[i];
        sxy += w * xs[i] * ys[i];
    }
    Fit f;
    f.slope = (sw * sxy - sx * sy) / (sw * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / sw;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double predicted = f.intercept + f.slope * xs[i];
        f.worst = std::max(f.worst, std::abs(ys[i] - predicted) / predicted);
    }
    return f;
}

/// Fixed atom and rule set; the first k choice pairs are disjunctive, the rest normal.
Program padded_program(int k) {
    std::string text = "a :- not b.\nb :- not a.\nc :- a, not d.\nd :- b.\n:- c, d.\n";
    for (int j = 0; j < 8; ++j) {
        const std::string x = "x" + std::to_string(j), y = "y" + std::to_string(j);
        text += j < k ? x + " | " + y + ".\n" : x + " :- not " + y + ".\n";
        text += y + " :- a, " + x + ".\n";
    }
    return parse_program(text);
}

/// Normal program with n rules over n atoms: a ring of rules ai :- a(i-1), not a(i+1).
Program normal_ring(int n) {
    std::string text;
    for (int i = 0; i < n; ++i)
        text += "a" + std::to_string(i) + " :- a" + std::to_string((i + n - 1) % n) + ", not a" +
                std::to_string((i + 1) % n) + ".\n";
    return parse_program(text);
}

Verdict scaling_shape() {
    std::vector<double> blocks, nodes, clauses;
    bool block_counts_ok = true;
    for (int k = 1; k <= 8; ++k) {
        const Program p = padded_program(k);
        const auto bd = find_backdoor(p, 8);
        if (!bd || bd->size() != static_cast<std::size_t>(k)) return {false, "padding did not force k=" + std::to_string(k)};
        const auto q = build_query(p, bd->atoms, {QueryMode::brave, *p.table().find("a"), std::nullopt});
        block_counts_ok = block_counts_ok && q.vars.blocks() == (std::size_t{1} << k);
        blocks.push_back(static_cast<double>(q.vars.blocks()));
        nodes.push_back(static_cast<double>(q.formula.node_count()));
        clauses.push_back(static_cast<double>(encode_cnf(q, p.table()).clauses.size()));
    }
    const Fit fn = linear_fit(blocks, nodes, true);
    const Fit fc = linear_fit(blocks, clauses, true);
    const Fit fn_plain = linear_fit(blocks, nodes, false);
    const Fit fc_plain = linear_fit(blocks, clauses, false);

    std::vector<double> ratios;
    for (int n : {50, 100, 200, 400}) {
        const Program p = normal_ring(n);
        const auto q = build_query(p, p.empty_set(), {QueryMode::brave, 0, std::nullopt});
        ratios.push_back(static_cast<double>(q.formula.node_count()) / (static_cast<double>(n) * n));
    }
    const double c = ratios.front();
    const bool quadratic = std::all_of(ratios.begin(), ratios.end(), [&](double r) { return r <= c; });

    const bool pass = block_counts_ok && fn.worst <= 0.15 && fc.worst <= 0.15 && quadratic;
    std::string detail = "k=1..8: nodes " + fixed(fn.slope, 0) + "/block, worst deviation " +
                         fixed(100 * fn.worst, 2) + "%; clauses " + fixed(fc.slope, 0) + "/block, worst deviation " +
                         fixed(100 * fc.worst, 2) + "% (unweighted fit: " + fixed(100 * fn_plain.worst, 1) + "%, " +
                         fixed(100 * fc_plain.worst, 1) + "%); k=0 nodes/n^2 at n=50..400:";
    for (double r : ratios) detail += " " + fixed(r, 3);
    detail += " (C=" + fixed(c, 3) + ")";
    return {pass, detail};
}

Verdict tseitin_equisatisfiability() {
    const auto start = Clock::now();
    std::mt19937_64 rng(99991);
    std::size_t mismatches = 0, satisfiable = 0;
    for (int i = 0; i < 1000; ++i) {
        const Var vars = 1 + static_cast<Var>(rng() % 12);
        const Formula f = random_formula(rng, vars, 2 + static_cast<int>(rng() % 4));
        const bool expected = truth_table_sat(f, vars);
        const SatResult r = solve(tseitin_cnf(f, vars), SolverConfig{});
        mismatches += (r.status == SatStatus::sat) != expected || r.status == SatStatus::unknown;
        satisfiable += expected;
    }
    const double t = seconds_since(start);
    return {mismatches == 0 && t < 120.0, "1000 formulas (" + std::to_string(satisfiable) + " satisfiable), " +
                                              std::to_string(mismatches) + " mismatches, " + fixed(t, 2) + " s"};
}

Verdict containment() {
    std::size_t answer_sets = 0, missing = 0;
    for (const auto& p : corpus()) {
        const AtomSet x = backdoor_of(p) & p.atoms();
        if (!verify_strong_backdoor(p, x)) return {false, "unverified backdoor"};
        const auto xs = x.ids();
        std::vector<AtomSet> candidates;
        for (std::uint64_t t = 0; t < (std::uint64_t{1} << xs.size()); ++t) {
            const AtomSet truths = subset_by_index(xs, t, p.universe());
            for (AtomSet m : enumerate_answer_sets(assignment_reduct(p, TruthAssignment(x, truths)))) {
                m |= truths;
                candidates.push_back(std::move(m));
            }
        }
        for (const auto& m : enumerate_answer_sets(p)) {
            ++answer_sets;
            missing += std::find(candidates.begin(), candidates.end(), m) == candidates.end();
        }
    }
    return {missing == 0, std::to_string(answer_sets) + " answer sets checked, " + std::to_string(missing) + " missing"};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"1 example fidelity", example_fidelity},
        {"2 answer-set check equivalence", theorem1_equivalence},
        {"3 brave/skeptical end to end", theorem2_end_to_end},
        {"4 strong equals deletion backdoor", strong_equals_deletion},
        {"5 detection optimality", detection_optimality},
        {"6 scaling shape", scaling_shape},
        {"7 Tseitin equisatisfiability", tseitin_equisatisfiability},
        {"8 containment in reduct answer sets", containment},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Verdict v;
        try {
            v = run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
