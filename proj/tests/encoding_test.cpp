#include "bdnsat/backdoor.hpp"
#include "bdnsat/encoding.hpp"
#include "bdnsat/error.hpp"
#include "bdnsat/mincheck.hpp"
#include "bdnsat/oracle.hpp"
#include "bdnsat/solver.hpp"
#include "support/test_support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace bdn;
using namespace bdn::test;

namespace {

std::vector<bool> v_assignment(const VarTable& vt, const AtomSet& m) {
    std::vector<bool> a(vt.fixed_count() + 1, false);
    for (auto atom : vt.atoms()) a[vt.v(atom)] = m.contains(atom);
    return a;
}

/// CNF of `f` plus unit clauses pinning every v-variable to M.
CnfFormula pinned(const Formula& f, const VarTable& vt, const AtomSet& m) {
    CnfFormula cnf = tseitin_cnf(f, vt.fixed_count());
    for (auto a : vt.atoms()) cnf.add_clause({m.contains(a) ? Literal(vt.v(a)) : -Literal(vt.v(a))});
    return cnf;
}

AtomSet top_layer(const std::vector<bool>& model, const VarTable& vt, std::size_t block, std::size_t universe) {
    AtomSet s(universe);
    for (auto a : vt.atoms())
        if (model[vt.u(block, vt.layers(), a)]) s.insert(a);
    return s;
}

bool sat(const CnfFormula& cnf) {
    const SatResult r = solve_dpll(cnf);
    EXPECT_NE(r.status, SatStatus::unknown);
    return r.status == SatStatus::sat;
}

} // namespace

TEST(VarTableTest, LayoutIsInjectiveAndOrdered) {
    const Program p = parse_program(kP1);
    const VarTable vt(p, 8);
    EXPECT_EQ(vt.layers(), 7u);
    EXPECT_EQ(vt.fixed_count(), 7u + 8u * 8u * 7u);
    std::set<Var> seen;
    for (auto a : vt.atoms()) {
        EXPECT_LE(vt.v(a), 7u);
        seen.insert(vt.v(a));
    }
    for (std::size_t b = 0; b < 8; ++b)
        for (std::size_t j = 0; j <= vt.layers(); ++j)
            for (auto a : vt.atoms()) {
                const Var id = vt.u(b, j, a);
                EXPECT_GT(id, 7u);
                EXPECT_TRUE(seen.insert(id).second);
                const auto slot = vt.describe(id);
                EXPECT_EQ(slot.role, VarTable::Role::u);
                EXPECT_EQ(slot.block, b);
                EXPECT_EQ(slot.layer, j);
                EXPECT_EQ(slot.atom, a);
            }
    EXPECT_EQ(seen.size(), vt.fixed_count());
    EXPECT_EQ(vt.describe(vt.fixed_count() + 1).role, VarTable::Role::label);
    EXPECT_THROW(vt.u(8, 0, 0), Error);
}

TEST(FModTest, Examples) {
    const Program fact = parse_program("c.");
    const VarTable vf(fact, 1);
    const Formula f = build_f_mod(fact, vf);
    EXPECT_TRUE(f.evaluate(v_assignment(vf, fact.set_of({"c"}))));
    EXPECT_FALSE(f.evaluate(v_assignment(vf, fact.empty_set())));

    const Program constraint = parse_program(":- a.");
    const VarTable vc(constraint, 1);
    EXPECT_TRUE(build_f_mod(constraint, vc).evaluate(v_assignment(vc, constraint.empty_set())));
    EXPECT_FALSE(build_f_mod(constraint, vc).evaluate(v_assignment(vc, constraint.set_of({"a"}))));

    const Program p = parse_program(kP1);
    const VarTable vt(p, 1);
    const Formula fm = build_f_mod(p, vt);
    ASSERT_EQ(fm.kind(), Formula::Kind::conjunction);
    EXPECT_EQ(fm.children().size(), 8u);
    EXPECT_TRUE(fm.evaluate(v_assignment(vt, set_of(p, "b,c,g"))));
}

TEST(FModTest, MatchesModelOfReduct) {
    std::mt19937_64 rng(67);
    for (int i = 0; i < 200; ++i) {
        const Program p = random_program(rng);
        const VarTable vt(p, 1);
        const Formula f = build_f_mod(p, vt);
        for (const auto& m : all_subsets(p))
            ASSERT_EQ(f.evaluate(v_assignment(vt, m)), is_model(m, gl_reduct(p, m)));
    }
}

TEST(FLmTest, RunningExampleTopLayer) {
    const Program p = parse_program(kP1);
    const AtomSet x = set_of(p, "b,c,h");
    const AtomSet m = set_of(p, "b,c,g");
    const VarTable vt(p, 1);
    const auto r = solve_dpll(pinned(build_f_lm_block(p, x, p.empty_set(), 0, vt), vt, m));
    ASSERT_EQ(r.status, SatStatus::sat);
    EXPECT_EQ(top_layer(*r.assignment, vt, 0, p.universe()), set_of(p, "a,g"));
}

TEST(FLmTest, EmptyProgramForcesEverythingFalse) {
    auto table = std::make_shared<AtomTable>();
    table->intern("a");
    const Program p(table, {Rule{{}, {0}, {}}}); // ":- a." keeps a in at(P)
    const VarTable vt(p, 1);
    const Formula f = build_f_lm_block(p, p.empty_set(), p.empty_set(), 0, vt);
    for (bool v : {false, true}) {
        const AtomSet m = v ? p.set_of({"a"}) : p.empty_set();
        const auto r = solve_dpll(pinned(f, vt, m));
        ASSERT_EQ(r.status, SatStatus::sat);
        EXPECT_FALSE((*r.assignment)[vt.u(0, 0, 0)]);
        EXPECT_FALSE((*r.assignment)[vt.u(0, 1, 0)]);
    }
}

// u^p is the least model of DH(restricted reduct) and is the only possibility.
TEST(FLmTest, FunctionallyDeterminedByV) {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 80; ++i) {
        const Program p = random_program(rng, {6, 8});
        const AtomSet x = find_backdoor(p, p.universe())->atoms;
        const auto xs = x.ids();
        const VarTable vt(p, std::size_t{1} << xs.size());
        const auto subsets = all_subsets(p);
        for (int s = 0; s < 4; ++s) {
            const AtomSet& m = subsets[rng() % subsets.size()];
            const std::size_t block = rng() % vt.blocks();
            const AtomSet xi = subset_by_index(xs, block, p.universe());
            const Formula f = build_f_lm_block(p, x, xi, block, vt);
            CnfFormula cnf = pinned(f, vt, m);
            const auto r = solve_dpll(cnf);
            ASSERT_EQ(r.status, SatStatus::sat);
            const AtomSet expected = least_model(restrict_program(gl_reduct(p, m), x, xi).base);
            ASSERT_EQ(top_layer(*r.assignment, vt, block, p.universe()), expected);

            Clause blocking;
            for (std::size_t j = 0; j <= vt.layers(); ++j)
                for (auto a : vt.atoms()) {
                    const Var id = vt.u(block, j, a);
                    blocking.push_back((*r.assignment)[id] ? -Literal(id) : Literal(id));
                }
            cnf.add_clause(std::move(blocking));
            ASSERT_FALSE(sat(cnf));
        }
    }
}

TEST(FMinTest, RunningExampleBlocks) {
    const Program p = parse_program(kP1);
    const AtomSet x = set_of(p, "b,c,h");
    const AtomSet m = set_of(p, "b,c,g");
    const VarTable vt(p, 8);
    const auto xs = x.ids();
    for (std::size_t i = 0; i < 8; ++i) {
        const AtomSet xi = subset_by_index(xs, i, p.universe());
        EXPECT_TRUE(sat(pinned(build_f_min_block(p, x, xi, i, vt), vt, m))) << p.format_set(xi);
    }
    // Block for X1 = {} is satisfied through a violated constraint alone.
    const Formula lm = build_f_lm_block(p, x, p.empty_set(), 0, vt);
    const auto r = solve_dpll(pinned(lm, vt, m));
    ASSERT_EQ(r.status, SatStatus::sat);
    const AtomSet top = top_layer(*r.assignment, vt, 0, p.universe());
    EXPECT_EQ(top, set_of(p, "a,g"));
}

TEST(FMinTest, StepOneAnalogue) {
    const Program p = parse_program(kP1);
    const AtomSet x = set_of(p, "b,c,h");
    const VarTable vt(p, 8);
    // Block 4 is X1 = {h}; h is false in M.
    const AtomSet xi = subset_by_index(x.ids(), 4, p.universe());
    ASSERT_EQ(xi, set_of(p, "h"));
    EXPECT_TRUE(sat(pinned(build_f_min_block(p, x, xi, 4, vt), vt, set_of(p, "a,b"))));
}

TEST(FMinTest, BlockTruthMatchesMinCheck) {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 60; ++i) {
        const Program p = random_program(rng, {5, 7});
        const AtomSet x = find_backdoor(p, p.universe())->atoms;
        const auto xs = x.ids();
        const VarTable vt(p, std::size_t{1} << xs.size());
        for (std::size_t b = 0; b < vt.blocks(); ++b) {
            const AtomSet xi = subset_by_index(xs, b, p.universe());
            const Formula f = build_f_min_block(p, x, xi, b, vt);
            for (const auto& m : all_subsets(p)) {
                if (!is_model(m, gl_reduct(p, m))) continue;
                ASSERT_EQ(sat(pinned(f, vt, m)), mincheck(p, m, x, xi).result)
                    << p << "M=" << p.format_set(m) << " Xi=" << p.format_set(xi);
            }
        }
    }
}

TEST(QueryTest, RunningExampleBraveB) {
    const Program p = parse_program(kP1);
    const AtomSet x = set_of(p, "b,c,h");
    const auto q = build_query(p, x, {QueryMode::brave, *p.table().find("b"), std::nullopt});
    EXPECT_EQ(q.subsets.size(), 8u);
    EXPECT_EQ(q.vars.blocks(), 8u);
    const CnfFormula cnf = encode_cnf(q, p.table());
    const SatResult r = solve_dpll(cnf);
    ASSERT_EQ(r.status, SatStatus::sat);
    const AtomSet m = decode_model(*r.assignment, q.vars, p.universe());
    EXPECT_TRUE(m.contains(*p.table().find("b")));
    EXPECT_TRUE(is_answer_set(p, m, x));
}

TEST(QueryTest, SingleFactProgram) {
    const Program p = parse_program("a.");
    const AtomId a = *p.table().find("a");
    const auto brave = build_query(p, p.empty_set(), {QueryMode::brave, a, std::nullopt});
    EXPECT_EQ(brave.vars.blocks(), 1u);
    EXPECT_TRUE(sat(encode_cnf(brave, p.table())));
    const auto skept = build_query(p, p.empty_set(), {QueryMode::skeptical, a, std::nullopt});
    EXPECT_FALSE(sat(encode_cnf(skept, p.table())));
}

TEST(QueryTest, Errors) {
    const Program p = parse_program(kP1);
    EXPECT_THROW(build_query(p, p.empty_set(), {QueryMode::brave, 0, std::nullopt}), Error);
    const Program q = parse_program(":- z. a.");
    EXPECT_THROW(build_query(q, q.empty_set(), {QueryMode::brave, static_cast<AtomId>(q.universe() + 3), std::nullopt}), Error);
    std::string text;
    for (int i = 0; i < 11; ++i) text += "x" + std::to_string(i) + " | y" + std::to_string(i) + ".\n";
    const Program big = parse_program(text);
    EXPECT_THROW(build_query(big, big.atoms(), {QueryMode::brave, 0, std::nullopt}), GuardError);
}

TEST(QueryTest, PropertyConjunct) {
    const Program p = parse_program("a | b.");
    const AtomId a = *p.table().find("a"), b = *p.table().find("b");
    const AtomSet x = p.set_of({"a"});
    const VarTable probe(p, 2);
    // a in some answer set, but not together with b.
    QuerySpec with_b{QueryMode::brave, a, Formula::variable(probe.v(b))};
    EXPECT_FALSE(sat(encode_cnf(build_query(p, x, with_b), p.table())));
    QuerySpec without_b{QueryMode::brave, a, !Formula::variable(probe.v(b))};
    EXPECT_TRUE(sat(encode_cnf(build_query(p, x, without_b), p.table())));
}

TEST(QueryTest, SerialAndParallelIdentical) {
    std::mt19937_64 rng(79);
    for (int i = 0; i < 50; ++i) {
        const Program p = random_program(rng);
        const AtomSet x = find_backdoor(p, p.universe())->atoms;
        if (p.atoms().empty()) continue;
        const QuerySpec spec{QueryMode::skeptical, p.atoms().ids().back(), std::nullopt};
        const auto a = build_query(p, x, spec);
        const auto b = build_query_serial(p, x, spec);
        EXPECT_EQ(a.formula.to_string(), b.formula.to_string());
        EXPECT_EQ(to_dimacs(encode_cnf(a, p.table())), to_dimacs(encode_cnf(b, p.table())));
    }
}

TEST(QueryTest, EndToEndAgainstOracle) {
    std::mt19937_64 rng(83);
    for (int i = 0; i < 80; ++i) {
        const Program p = random_program(rng, {6, 8});
        const AtomSet x = find_backdoor(p, p.universe())->atoms;
        const auto sets = enumerate_answer_sets(p);
        for (auto a : p.atoms().ids()) {
            const bool some = std::any_of(sets.begin(), sets.end(), [&](const AtomSet& s) { return s.contains(a); });
            const bool all = std::all_of(sets.begin(), sets.end(), [&](const AtomSet& s) { return s.contains(a); });
            ASSERT_EQ(sat(encode_cnf(build_query(p, x, {QueryMode::brave, a, std::nullopt}), p.table())), some) << p;
            ASSERT_EQ(!sat(encode_cnf(build_query(p, x, {QueryMode::skeptical, a, std::nullopt}), p.table())), all)
                << p;
        }
    }
}

TEST(QueryTest, BlockCountAndGrowth) {
    std::string text = "a :- not b. b :- not a.\n";
    std::vector<std::size_t> nodes;
    for (int k = 0; k <= 4; ++k) {
        std::string t = text;
        std::vector<std::string> names;
        for (int j = 0; j < k; ++j) t += "x" + std::to_string(j) + " | y" + std::to_string(j) + ".\n";
        const Program p = parse_program(t);
        const auto bd = find_backdoor(p, 8);
        ASSERT_EQ(bd->size(), static_cast<std::size_t>(k));
        const auto q = build_query(p, bd->atoms, {QueryMode::brave, *p.table().find("a"), std::nullopt});
        EXPECT_EQ(q.vars.blocks(), std::size_t{1} << k);
        nodes.push_back(q.formula.node_count());
    }
    for (std::size_t i = 1; i < nodes.size(); ++i) EXPECT_GT(nodes[i], nodes[i - 1]);
}

TEST(DecodeTest, IdentityOnVVariables) {
    const Program p = parse_program(kP1);
    const VarTable vt(p, 1);
    for (const auto& m : all_subsets(p)) EXPECT_EQ(decode_model(v_assignment(vt, m), vt, p.universe()), m);
    EXPECT_THROW(decode_model(std::vector<bool>(3, false), vt, p.universe()), Error);
}

TEST(SidecarTest, Format) {
    const Program p = parse_program("a | b.");
    const auto q = build_query(p, p.set_of({"a"}), {QueryMode::brave, 0, std::nullopt});
    const CnfFormula cnf = encode_cnf(q, p.table());
    std::ostringstream out;
    q.vars.write_map(out, p.table(), cnf.num_vars);
    std::istringstream in(out.str());
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    ASSERT_EQ(lines.size(), cnf.num_vars);
    EXPECT_EQ(lines[0], "v 1 a");
    EXPECT_EQ(lines[1], "v 2 b");
    // Two atoms, one rule: layers 0..1 in each of two blocks.
    EXPECT_EQ(lines[2], "u 3 1 0 a");
    EXPECT_EQ(lines[5], "u 6 1 1 b");
    EXPECT_EQ(lines[6], "u 7 2 0 a");
    EXPECT_EQ(lines[9], "u 10 2 1 b");
    for (std::size_t i = 10; i < lines.size(); ++i) EXPECT_EQ(lines[i], "t " + std::to_string(i + 1));
    EXPECT_EQ(cnf.names[1], "v[a]");
    EXPECT_EQ(cnf.names[10], "u[2][1][b]");
}

TEST(DimacsTest, DeterministicOutput) {
    const Program p = parse_program(kP1);
    const AtomSet x = set_of(p, "b,c,h");
    const QuerySpec spec{QueryMode::brave, *p.table().find("g"), std::nullopt};
    const std::string first = to_dimacs(encode_cnf(build_query(p, x, spec), p.table()));
    for (int i = 0; i < 3; ++i) EXPECT_EQ(to_dimacs(encode_cnf(build_query(p, x, spec), p.table())), first);
}
