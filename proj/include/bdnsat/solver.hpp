#pragma once

#include "bdnsat/cnf.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bdn {

enum class SatStatus { sat, unsat, unknown };

const char* to_string(SatStatus s) noexcept;

struct SatResult {
    SatStatus status = SatStatus::unknown;
    /// Indexed by variable id, size num_vars + 1. Present iff status == sat.
    std::optional<std::vector<bool>> assignment;
    double seconds = 0.0;
    std::string solver;
    /// Why the result is unknown, or notes from the solver run.
    std::string diagnostics;
};

struct SolverConfig {
    enum class Mode { internal, external };

    Mode mode = Mode::internal;
    std::string executable;
    double timeout_seconds = 60.0;

    /// External if BDNSAT_SOLVER is set, internal otherwise.
    static SolverConfig from_environment();
};

/// Environment variable naming the external solver executable.
inline constexpr const char* kSolverEnvVar = "BDNSAT_SOLVER";

/// Solves `cnf` and checks any returned model against every clause. A model
/// that fails the check is reported as unknown, never as sat.
/// Throws `Error` if the external executable cannot be resolved.
SatResult solve(const CnfFormula& cnf, const SolverConfig& cfg);

/// Chronological-backtracking DPLL: unit propagation over two watched literals,
/// pure-literal elimination at the root, lowest-index-first branching trying
/// false first. No clause learning.
SatResult solve_dpll(const CnfFormula& cnf);

/// Path lookup: names containing '/' must exist and be executable, otherwise PATH is searched.
std::optional<std::string> resolve_executable(const std::string& name);

/// Parses SAT-competition output ("s ..." status line, "v ..." literal lines).
/// `exit_code` 10/20 is accepted when the status line is missing.
SatResult parse_solver_output(std::string_view output, int exit_code, Var num_vars);

} // namespace bdn
