#include "bdnsat/cli.hpp"

#include "bdnsat/backdoor.hpp"
#include "bdnsat/encoding.hpp"
#include "bdnsat/error.hpp"
#include "bdnsat/mincheck.hpp"
#include "bdnsat/oracle.hpp"
#include "bdnsat/solver.hpp"
#include "parallel.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace bdn {
namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

struct Options {
    std::string file;
    std::vector<std::string> files;
    std::optional<std::size_t> max_k;
    std::string model;
    std::string backdoor;
    bool force = false;
    bool print = false;
    std::string mode = "brave";
    std::string atom;
    std::string out_path;
    std::string map_path;
    std::string solver;
    bool internal = false;
    double timeout = 60.0;
};

// The given backdoor (verified) or the smallest detected one.
AtomSet backdoor_for(const Program& p, const std::string& given, std::ostream& out) {
    if (!given.empty()) {
        AtomSet x = parse_atom_list(p, given);
        if (!verify_strong_backdoor(p, x)) throw Error("given set is not a strong Normal-backdoor");
        out << "backdoor: " << p.format_set(x) << " (given)\n";
        return x;
    }
    auto found = find_backdoor(p, p.atoms().size());
    if (!found) throw Error("no backdoor found"); // unreachable: at(P) always works
    out << "backdoor: " << p.format_set(found->atoms) << " (detected)\n";
    return found->atoms;
}

QuerySpec query_for(const Program& p, const Options& o) {
    QuerySpec q;
    if (o.mode == "brave") q.mode = QueryMode::brave;
    else if (o.mode == "skeptical") q.mode = QueryMode::skeptical;
    else throw Error("--mode must be brave or skeptical");
    const auto id = p.table().find(o.atom);
    if (!id) throw Error("atom '" + o.atom + "' does not occur in the program");
    q.atom = *id;
    return q;
}

int cmd_parse(const Options& o, std::ostream& out) {
    const Program p = parse_program_file(o.file);
    const auto& f = p.flags();
    out << "atoms: " << p.atoms().size() << '\n'
        << "rules: " << p.rules().size() << '\n'
        << "tautologies removed: " << p.ingest_stats().tautologies_removed << '\n'
        << "duplicate atoms dropped: " << p.ingest_stats().duplicate_atoms << '\n'
        << "normal: " << yes_no(f.normal) << '\n'
        << "horn: " << yes_no(f.horn) << '\n'
        << "negation-free: " << yes_no(f.negation_free) << '\n'
        << "tight: " << yes_no(f.tight) << '\n';
    if (o.print) out << p;
    return exit_code::ok;
}

int cmd_backdoor(const Options& o, std::ostream& out) {
    const Program p = parse_program_file(o.file);
    const std::size_t k = o.max_k.value_or(p.atoms().size());
    const auto found = find_backdoor(p, k);
    if (!found) {
        out << "none within " << k << '\n';
        return exit_code::ok;
    }
    out << format_backdoor(p, found->atoms);
    return exit_code::ok;
}

int cmd_check(const Options& o, std::ostream& out) {
    const Program p = parse_program_file(o.file);
    const AtomSet m = parse_atom_list(p, o.model);
    const AtomSet x = backdoor_for(p, o.backdoor, out);
    const AnswerSetCheck check = check_answer_set(p, m, x);
    const auto ids = (x & p.atoms()).ids();
    if (!check.model_of_reduct) {
        out << "answer set: no (not a model of the reduct)\n";
        return exit_code::ok;
    }
    if (!check.answer_set) {
        const auto i = *check.first_failure;
        out << "answer set: no (MinCheck false for X1=" << p.format_set(subset_by_index(ids, i, p.universe()))
            << ")\n";
        return exit_code::ok;
    }
    out << "answer set: yes\n";
    for (std::size_t i = 0; i < check.subsets.size(); ++i)
        out << "  X1=" << p.format_set(subset_by_index(ids, i, p.universe())) << ": " << check.subsets[i].describe()
            << '\n';
    return exit_code::ok;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
    const Program p = parse_program_file(o.file);
    const auto sets = enumerate_answer_sets(p, o.force);
    for (const auto& s : sets) out << p.format_set(s) << '\n';
    out << "answer sets: " << sets.size() << '\n';
    return exit_code::ok;
}

int cmd_encode(const Options& o, std::ostream& out) {
    const Program p = parse_program_file(o.file);
    const QuerySpec q = query_for(p, o);
    const AtomSet x = backdoor_for(p, o.backdoor, out);
    const EncodedQuery enc = build_query(p, x, q);
    const CnfFormula cnf = encode_cnf(enc, p.table());

    std::ofstream cnf_out(o.out_path, std::ios::binary);
    if (!cnf_out) throw Error("cannot write '" + o.out_path + "'");
    emit_dimacs(cnf, cnf_out, {std::string(q.mode == QueryMode::brave ? "brave" : "skeptical") + " " + o.atom});
    if (!o.map_path.empty()) {
        std::ofstream map_out(o.map_path, std::ios::binary);
        if (!map_out) throw Error("cannot write '" + o.map_path + "'");
        enc.vars.write_map(map_out, p.table(), cnf.num_vars);
    }
    out << "blocks: " << enc.vars.blocks() << '\n'
        << "formula nodes: " << enc.formula.node_count() << '\n'
        << "variables: " << cnf.num_vars << '\n'
        << "clauses: " << cnf.clauses.size() << '\n';
    return exit_code::ok;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
    const Program p = parse_program_file(o.file);
    const QuerySpec q = query_for(p, o);
    const AtomSet x = backdoor_for(p, o.backdoor, out);
    const EncodedQuery enc = build_query(p, x, q);
    const CnfFormula cnf = encode_cnf(enc, p.table());

    SolverConfig cfg = SolverConfig::from_environment();
    if (!o.solver.empty()) {
        cfg.mode = SolverConfig::Mode::external;
        cfg.executable = o.solver;
    }
    if (o.internal) cfg.mode = SolverConfig::Mode::internal;
    cfg.timeout_seconds = o.timeout;
    const SatResult r = solve(cnf, cfg);

    const std::string query = o.mode + "(" + o.atom + ")";
    if (r.status == SatStatus::unknown) {
        out << query << ": unknown\n";
        err << "solver: " << r.diagnostics << '\n';
        return exit_code::unknown;
    }
    if (r.status == SatStatus::sat) {
        const AtomSet m = decode_model(*r.assignment, enc.vars, p.universe());
        if (!is_answer_set(p, m, x)) throw Error("decoded model " + p.format_set(m) + " is not an answer set");
        const bool brave = q.mode == QueryMode::brave;
        out << query << ": " << (brave ? "yes" : "no") << '\n'
            << (brave ? "witness: " : "counterexample: ") << p.format_set(m) << '\n';
        return brave ? exit_code::yes : exit_code::no;
    }
    const bool brave = q.mode == QueryMode::brave;
    out << query << ": " << (brave ? "no" : "yes") << '\n';
    return brave ? exit_code::no : exit_code::yes;
}

struct StatsRow {
    std::size_t atoms = 0;
    std::size_t rules = 0;
    std::size_t backdoor = 0;
    bool tight = false;
    std::string error;
};

int cmd_stats(const Options& o, std::ostream& out, std::ostream& err) {
    std::vector<StatsRow> rows(o.files.size());
    detail::parallel_for(static_cast<std::int64_t>(rows.size()), [&](std::int64_t i) {
        auto& row = rows[static_cast<std::size_t>(i)];
        try {
            const Program p = parse_program_file(o.files[static_cast<std::size_t>(i)]);
            row.atoms = p.atoms().size();
            row.rules = p.rules().size();
            row.backdoor = find_backdoor(p, row.atoms)->size();
            row.tight = p.flags().tight;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    });

    std::size_t width = 4;
    for (const auto& f : o.files) width = std::max(width, f.size());
    out << std::left << std::setw(static_cast<int>(width)) << "file" << std::right << std::setw(8) << "atoms"
        << std::setw(8) << "rules" << std::setw(10) << "backdoor" << std::setw(10) << "bd%" << std::setw(7)
        << "tight" << '\n';
    int rc = exit_code::ok;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (!row.error.empty()) {
            err << o.files[i] << ": " << row.error << '\n';
            rc = exit_code::error;
            continue;
        }
        const double pct = row.atoms == 0 ? 0.0 : 100.0 * static_cast<double>(row.backdoor) / static_cast<double>(row.atoms);
        std::ostringstream pct_text;
        pct_text << std::fixed << std::setprecision(2) << pct;
        out << std::left << std::setw(static_cast<int>(width)) << o.files[i] << std::right << std::setw(8)
            << row.atoms << std::setw(8) << row.rules << std::setw(10) << row.backdoor << std::setw(10)
            << pct_text.str() << std::setw(7) << yes_no(row.tight) << '\n';
    }
    return rc;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Brave and skeptical reasoning for disjunctive programs via backdoors to normality"};
    app.name("bdnsat");
    app.require_subcommand(1);
    Options o;

    auto* parse = app.add_subcommand("parse", "Parse a program and report its classification");
    parse->add_option("file", o.file, "Program file")->required();
    parse->add_flag("--print", o.print, "Pretty-print the ingested program");

    auto* backdoor = app.add_subcommand("backdoor", "Find a smallest strong Normal-backdoor");
    backdoor->add_option("file", o.file, "Program file")->required();
    backdoor->add_option("--max-k", o.max_k, "Largest backdoor size to try");

    auto* check = app.add_subcommand("check", "Decide whether a set of atoms is an answer set");
    check->add_option("file", o.file, "Program file")->required();
    check->add_option("--model", o.model, "Candidate answer set, comma-separated")->required();
    check->add_option("--backdoor", o.backdoor, "Backdoor atoms, comma-separated (detected if omitted)");

    auto* enumerate = app.add_subcommand("enumerate", "List all answer sets by brute force");
    enumerate->add_option("file", o.file, "Program file")->required();
    enumerate->add_flag("--force", o.force, "Ignore the atom-count guard");

    auto add_query = [&](CLI::App* cmd) {
        cmd->add_option("file", o.file, "Program file")->required();
        cmd->add_option("--mode", o.mode, "brave or skeptical")->check(CLI::IsMember({"brave", "skeptical"}));
        cmd->add_option("--atom", o.atom, "Query atom")->required();
        cmd->add_option("--backdoor", o.backdoor, "Backdoor atoms, comma-separated (detected if omitted)");
    };
    auto* encode = app.add_subcommand("encode", "Write the query as DIMACS CNF");
    add_query(encode);
    encode->add_option("--out", o.out_path, "CNF output file")->required();
    encode->add_option("--map", o.map_path, "Variable-map output file");

    auto* solve_cmd = app.add_subcommand("solve", "Answer a brave or skeptical query (exit 10 yes, 20 no)");
    add_query(solve_cmd);
    solve_cmd->add_option("--solver", o.solver, "External SAT solver executable");
    solve_cmd->add_flag("--internal", o.internal, "Use the built-in solver even if one is configured");
    solve_cmd->add_option("--timeout", o.timeout, "Solver timeout in seconds")->check(CLI::PositiveNumber);

    auto* stats = app.add_subcommand("stats", "Backdoor size statistics per file");
    stats->add_option("files", o.files, "Program files")->required();

    std::vector<std::string> argv_store{"bdnsat"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::error;
    }

    try {
        if (parse->parsed()) return cmd_parse(o, out);
        if (backdoor->parsed()) return cmd_backdoor(o, out);
        if (check->parsed()) return cmd_check(o, out);
        if (enumerate->parsed()) return cmd_enumerate(o, out);
        if (encode->parsed()) return cmd_encode(o, out);
        if (solve_cmd->parsed()) return cmd_solve(o, out, err);
        if (stats->parsed()) return cmd_stats(o, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::error;
    }
    return exit_code::error;
}

} // namespace bdn
