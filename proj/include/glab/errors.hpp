#pragma once
// Exception types shared across the library. Everything derives from Error so
// callers can catch one base; the CLI maps the concrete types to exit codes.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace glab {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// invalid or inconsistent run configuration (CLI exit 64)
struct ConfigError : Error {
    std::vector<std::string> violations;
    explicit ConfigError(std::vector<std::string> v)
        : Error(join(v)), violations(std::move(v)) {}
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid config:";
        for (const auto& e : v) { s += "\n  "; s += e; }
        return s;
    }
};

// boundary data violates a hypothesis needed downstream (CLI exit 65)
struct DegreeError : Error {
    int degree;
    DegreeError(const std::string& msg, int deg) : Error(msg), degree(deg) {}
};

// boundary samples too coarse for a reliable phase-increment sum
struct UnderResolvedError : Error {
    using Error::Error;
};

// modulus-phase decomposition requested where no lifting exists
struct LiftingError : Error {
    using Error::Error;
};

// fields on different grids combined in one expression
struct ShapeError : Error {
    using Error::Error;
};

// iteration failed to reach the requested tolerance; carries the residual
// history so the caller can see whether it stalled or diverged
struct SolverError : Error {
    std::vector<double> residual_history;
    SolverError(const std::string& msg, std::vector<double> hist)
        : Error(msg), residual_history(std::move(hist)) {}
};

} // namespace glab
