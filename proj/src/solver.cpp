#include "bdnsat/solver.hpp"

#include "bdnsat/error.hpp"

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

namespace bdn {

const char* to_string(SatStatus s) noexcept {
    switch (s) {
        case SatStatus::sat: return "SAT";
        case SatStatus::unsat: return "UNSAT";
        case SatStatus::unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

SolverConfig SolverConfig::from_environment() {
    SolverConfig cfg;
    if (const char* exe = std::getenv(kSolverEnvVar); exe != nullptr && *exe != '\0') {
        cfg.mode = Mode::external;
        cfg.executable = exe;
    }
    return cfg;
}

std::optional<std::string> resolve_executable(const std::string& name) {
    auto runnable = [](const std::string& path) {
        struct stat st {};
        return ::stat(path.c_str(), &st) == 0 && S_ISREG(st.st_mode) && ::access(path.c_str(), X_OK) == 0;
    };
    if (name.empty()) return std::nullopt;
    if (name.find('/') != std::string::npos) return runnable(name) ? std::optional(name) : std::nullopt;
    const char* path = std::getenv("PATH");
    std::istringstream dirs(path ? path : "");
    std::string dir;
    while (std::getline(dirs, dir, ':')) {
        const std::string candidate = (dir.empty() ? std::string(".") : dir) + "/" + name;
        if (runnable(candidate)) return candidate;
    }
    return std::nullopt;
}

SatResult parse_solver_output(std::string_view output, int exit_code, Var num_vars) {
    SatResult r;
    std::optional<SatStatus> status;
    std::vector<bool> assignment(static_cast<std::size_t>(num_vars) + 1, false);
    bool saw_values = false;

    std::istringstream in{std::string(output)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("s ", 0) == 0) {
            const std::string word = line.substr(2);
            if (word == "SATISFIABLE") status = SatStatus::sat;
            else if (word == "UNSATISFIABLE") status = SatStatus::unsat;
            else if (word == "UNKNOWN") status = SatStatus::unknown;
            else {
                r.diagnostics = "unparsable status line '" + line + "'";
                return r;
            }
        } else if (line.rfind("v ", 0) == 0 || line == "v") {
            std::istringstream vals(line.substr(1));
            long long lit = 0;
            while (vals >> lit) {
                if (lit == 0) continue;
                const auto var = static_cast<unsigned long long>(lit < 0 ? -lit : lit);
                if (var > num_vars) {
                    r.diagnostics = "solver reported variable " + std::to_string(var) + " beyond " +
                                    std::to_string(num_vars);
                    return r;
                }
                assignment[var] = lit > 0;
                saw_values = true;
            }
            if (!vals.eof()) {
                r.diagnostics = "unparsable value line '" + line + "'";
                return r;
            }
        }
    }
    if (!status) {
        if (exit_code == 10) status = SatStatus::sat;
        else if (exit_code == 20) status = SatStatus::unsat;
        else {
            r.diagnostics = "no status line (exit code " + std::to_string(exit_code) + ")";
            return r;
        }
    }
    r.status = *status;
    if (r.status == SatStatus::sat) {
        if (!saw_values && num_vars > 0) {
            r.status = SatStatus::unknown;
            r.diagnostics = "solver reported SAT without a model";
            return r;
        }
        r.assignment = std::move(assignment);
    }
    return r;
}

namespace {

class TempCnfFile {
public:
    explicit TempCnfFile(const CnfFormula& cnf) {
        std::string tmpl = (std::filesystem::temp_directory_path() / "bdnsat-XXXXXX.cnf").string();
        const int fd = ::mkstemps(tmpl.data(), 4);
        if (fd < 0) throw Error("cannot create temporary CNF file");
        ::close(fd);
        path_ = tmpl;
        std::ofstream out(path_, std::ios::binary | std::ios::trunc);
        emit_dimacs(cnf, out);
        if (!out) throw Error("cannot write temporary CNF file '" + path_ + "'");
    }
    ~TempCnfFile() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    TempCnfFile(const TempCnfFile&) = delete;
    TempCnfFile& operator=(const TempCnfFile&) = delete;

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

SatResult run_external(const CnfFormula& cnf, const SolverConfig& cfg) {
    const auto exe = resolve_executable(cfg.executable);
    if (!exe) throw Error("cannot resolve solver executable '" + cfg.executable + "'");
    TempCnfFile file(cnf);

    int fds[2];
    if (::pipe(fds) != 0) throw Error("pipe() failed");
    const pid_t pid = ::fork();
    if (pid < 0) {
        ::close(fds[0]);
        ::close(fds[1]);
        throw Error("fork() failed");
    }
    if (pid == 0) {
        ::dup2(fds[1], STDOUT_FILENO);
        const int devnull = ::open("/dev/null", O_WRONLY);
        if (devnull >= 0) ::dup2(devnull, STDERR_FILENO);
        ::close(fds[0]);
        ::close(fds[1]);
        char* argv[] = {const_cast<char*>(exe->c_str()), const_cast<char*>(file.path().c_str()), nullptr};
        ::execv(exe->c_str(), argv);
        ::_exit(127);
    }
    ::close(fds[1]);

    SatResult r;
    r.solver = *exe;
    std::string output;
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(cfg.timeout_seconds);
    bool timed_out = false;
    char buf[4096];
    for (;;) {
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) {
            timed_out = true;
            break;
        }
        pollfd pfd{fds[0], POLLIN, 0};
        const int ready = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(left.count(), 1000)));
        if (ready < 0 && errno != EINTR) break;
        if (ready <= 0) continue;
        const ssize_t got = ::read(fds[0], buf, sizeof buf);
        if (got <= 0) break;
        output.append(buf, static_cast<std::size_t>(got));
    }
    ::close(fds[0]);
    if (timed_out) ::kill(pid, SIGKILL);
    int wstatus = 0;
    ::waitpid(pid, &wstatus, 0);

    if (timed_out) {
        r.diagnostics = "timeout after " + std::to_string(cfg.timeout_seconds) + " s";
        return r;
    }
    if (!WIFEXITED(wstatus)) {
        r.diagnostics = "solver terminated by signal " + std::to_string(WTERMSIG(wstatus));
        return r;
    }
    const int code = WEXITSTATUS(wstatus);
    if (code == 127) {
        r.diagnostics = "solver process could not be started";
        return r;
    }
    SatResult parsed = parse_solver_output(output, code, cnf.num_vars);
    parsed.solver = r.solver;
    return parsed;
}

} // namespace

SatResult solve(const CnfFormula& cnf, const SolverConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    SatResult r = cfg.mode == SolverConfig::Mode::external ? run_external(cnf, cfg) : solve_dpll(cnf);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.status == SatStatus::sat && (!r.assignment || !cnf.satisfied_by(*r.assignment))) {
        r.status = SatStatus::unknown;
        r.assignment.reset();
        r.diagnostics = "solver model does not satisfy the formula";
    }
    return r;
}

} // namespace bdn
