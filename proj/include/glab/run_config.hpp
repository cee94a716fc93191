#pragma once
// Declarative run configuration: a single JSON document describing domain,
// boundary data, problem kind, epsilon sweep, solver knobs, thresholds and
// output. Validation collects every violation (not just the first) and
// anchors parse errors to a line and column.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "glab/boundary.hpp"
#include "glab/diagnostics.hpp"
#include "glab/errors.hpp"
#include "glab/gl_solver.hpp"
#include "glab/grid.hpp"

namespace glab {

using ojson = nlohmann::ordered_json;

// a boundary entry is either a generator spec or explicit winding data
// g(theta) = e^{i d theta} (the latter exists to exercise the degree gate)
struct BoundaryConfig {
    bool winding = false;
    int degree = 1;       // winding only
    BoundarySpec spec;    // otherwise
};

struct RunConfig {
    std::string label = "run";
    ProblemKind problem = ProblemKind::Single;
    GridKind kind = GridKind::UnitDisk;
    int resolution = 64;
    std::vector<BoundaryConfig> boundary; // one entry, or two for pair problems
    std::vector<double> epsilons = {0.4, 0.2, 0.1, 0.05};
    double tau = 0.0; // filled to 0.25*min(eps)^2 by validation when absent
    double residual_tol = 1e-8;
    long max_steps = 20000;
    bool newton = true;
    bool continuation = true;
    Thresholds thresholds;
    std::string out_dir = "out";
    bool dump_fields = false;
};

namespace detail {

inline std::string line_anchor(const std::string& text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline void check_keys(const ojson& obj, const std::vector<std::string>& allowed,
                       const std::string& where, std::vector<std::string>& bad) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            bad.push_back(where + ": unknown key \"" + it.key() + "\"");
}

inline BoundaryConfig parse_boundary_entry(const ojson& b, const std::string& where,
                                           std::vector<std::string>& bad) {
    BoundaryConfig out;
    if (!b.is_object()) {
        bad.push_back(where + ": must be an object");
        return out;
    }
    check_keys(b, {"type", "amplitude", "mode", "table"}, where, bad);
    std::string type = b.value("type", "constant");
    if (type == "winding") {
        out.winding = true;
        out.degree = b.value("mode", 1);
        return out;
    }
    out.spec.amplitude = b.value("amplitude", 0.0);
    out.spec.mode = b.value("mode", 1);
    if (!std::isfinite(out.spec.amplitude))
        bad.push_back(where + ": amplitude must be finite");
    if (type == "constant") {
        out.spec.type = BoundarySpec::Type::Constant;
    } else if (type == "cos") {
        out.spec.type = BoundarySpec::Type::Cos;
    } else if (type == "sin_arclength") {
        out.spec.type = BoundarySpec::Type::SinArclength;
    } else if (type == "table") {
        out.spec.type = BoundarySpec::Type::Table;
        out.spec.table_path = b.value("table", "");
        if (out.spec.table_path.empty()) bad.push_back(where + ": table type needs a table path");
    } else {
        bad.push_back(where + ": unknown type \"" + type +
                      "\" (expected constant|cos|sin_arclength|table|winding)");
    }
    return out;
}

} // namespace detail

// parses and fully validates a config document; throws ConfigError listing
// every violation found
inline RunConfig validate_config(const std::string& raw) {
    ojson doc;
    try {
        doc = ojson::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError({"config is not valid JSON at " + detail::line_anchor(raw, e.byte) +
                           ": " + e.what()});
    }

    std::vector<std::string> bad;
    if (!doc.is_object()) throw ConfigError({"config root must be a JSON object"});
    detail::check_keys(doc,
                       {"label", "problem", "domain", "boundary", "epsilons", "solver",
                        "thresholds", "output"},
                       "config", bad);

    RunConfig cfg;
    cfg.label = doc.value("label", std::string("run"));

    std::string prob = doc.value("problem", std::string("single"));
    if (prob == "single") cfg.problem = ProblemKind::Single;
    else if (prob == "symmetric_pair") cfg.problem = ProblemKind::SymmetricPair;
    else if (prob == "non_symmetric_pair") cfg.problem = ProblemKind::NonSymmetricPair;
    else if (prob == "beta_minimizer") cfg.problem = ProblemKind::BetaMinimizer;
    else if (prob == "harmonic_only") cfg.problem = ProblemKind::HarmonicOnly;
    else
        bad.push_back("problem: unknown value \"" + prob +
                      "\" (expected single|symmetric_pair|non_symmetric_pair|beta_minimizer|"
                      "harmonic_only)");

    if (doc.contains("domain")) {
        const ojson& d = doc["domain"];
        if (!d.is_object()) {
            bad.push_back("domain: must be an object");
        } else {
            detail::check_keys(d, {"kind", "resolution"}, "domain", bad);
            std::string kind = d.value("kind", "unit_disk");
            if (kind == "unit_disk") cfg.kind = GridKind::UnitDisk;
            else if (kind == "unit_square") cfg.kind = GridKind::UnitSquare;
            else bad.push_back("domain.kind: unknown value \"" + kind +
                               "\" (expected unit_disk|unit_square)");
            cfg.resolution = d.value("resolution", 64);
            if (cfg.resolution < 4 || cfg.resolution > 4096)
                bad.push_back("domain.resolution: must be in [4, 4096], got " +
                              std::to_string(cfg.resolution));
        }
    }

    const bool needs_two = cfg.problem == ProblemKind::SymmetricPair ||
                           cfg.problem == ProblemKind::NonSymmetricPair ||
                           cfg.problem == ProblemKind::BetaMinimizer;
    if (doc.contains("boundary")) {
        const ojson& b = doc["boundary"];
        if (b.is_object()) {
            cfg.boundary.push_back(detail::parse_boundary_entry(b, "boundary", bad));
        } else if (b.is_array()) {
            for (size_t i = 0; i < b.size(); ++i)
                cfg.boundary.push_back(detail::parse_boundary_entry(
                    b[i], "boundary[" + std::to_string(i) + "]", bad));
        } else {
            bad.push_back("boundary: must be an object or an array of objects");
        }
    } else {
        cfg.boundary.resize(needs_two ? 2 : 1); // default: constant data
    }
    if (needs_two && cfg.boundary.size() != 2)
        bad.push_back("boundary: two boundary specs required for pair and beta problems, got " +
                      std::to_string(cfg.boundary.size()));
    if (!needs_two && cfg.boundary.size() != 1)
        bad.push_back("boundary: exactly one boundary spec expected, got " +
                      std::to_string(cfg.boundary.size()));

    if (doc.contains("epsilons")) {
        cfg.epsilons.clear();
        if (!doc["epsilons"].is_array()) {
            bad.push_back("epsilons: must be an array of positive reals");
        } else {
            for (const ojson& e : doc["epsilons"]) {
                if (!e.is_number()) {
                    bad.push_back("epsilons: entries must be numbers");
                    break;
                }
                cfg.epsilons.push_back(e.get<double>());
            }
        }
    }
    if (cfg.epsilons.empty()) bad.push_back("epsilons: at least one level required");
    for (double e : cfg.epsilons)
        if (!(e > 0.0) || !std::isfinite(e)) {
            bad.push_back("epsilons: all levels must be finite and > 0");
            break;
        }
    for (size_t i = 1; i < cfg.epsilons.size(); ++i)
        if (!(cfg.epsilons[i] < cfg.epsilons[i - 1])) {
            bad.push_back("epsilons: must be strictly decreasing");
            break;
        }

    if (doc.contains("solver")) {
        const ojson& s = doc["solver"];
        if (!s.is_object()) {
            bad.push_back("solver: must be an object");
        } else {
            detail::check_keys(s, {"tau", "residual_tol", "max_steps", "newton", "continuation"},
                               "solver", bad);
            cfg.tau = s.value("tau", 0.0);
            cfg.residual_tol = s.value("residual_tol", 1e-8);
            cfg.max_steps = s.value("max_steps", 20000L);
            cfg.newton = s.value("newton", true);
            cfg.continuation = s.value("continuation", true);
        }
    }
    if (!(cfg.residual_tol > 0.0)) bad.push_back("solver.residual_tol: must be > 0");
    if (cfg.max_steps <= 0) bad.push_back("solver.max_steps: must be > 0");

    // one tau drives every sweep level, so the stability guard binds at the
    // smallest epsilon; absent tau defaults to that bound
    if (!cfg.epsilons.empty()) {
        double eps_min = cfg.epsilons.back();
        if (eps_min > 0.0) {
            double bound = stable_tau_bound(eps_min);
            if (cfg.tau > bound * (1.0 + 1e-12))
                bad.push_back("solver.tau: exceeds the stability bound 0.25*min(epsilon)^2 = " +
                              std::to_string(bound));
            if (cfg.tau <= 0.0) cfg.tau = bound;
        }
    }

    if (doc.contains("thresholds")) {
        const ojson& t = doc["thresholds"];
        if (!t.is_object()) {
            bad.push_back("thresholds: must be an object");
        } else {
            detail::check_keys(t, {"C1", "C2", "C3", "C4", "C5", "C6"}, "thresholds", bad);
            cfg.thresholds.C1 = t.value("C1", -1.0);
            cfg.thresholds.C2 = t.value("C2", -1.0);
            cfg.thresholds.C3 = t.value("C3", -1.0);
            cfg.thresholds.C4 = t.value("C4", -1.0);
            cfg.thresholds.C5 = t.value("C5", -1.0);
            cfg.thresholds.C6 = t.value("C6", -1.0);
        }
    }

    if (doc.contains("output")) {
        const ojson& o = doc["output"];
        if (!o.is_object()) {
            bad.push_back("output: must be an object");
        } else {
            detail::check_keys(o, {"directory", "dump_fields"}, "output", bad);
            cfg.out_dir = o.value("directory", std::string("out"));
            cfg.dump_fields = o.value("dump_fields", false);
        }
    }
    if (cfg.out_dir.empty()) bad.push_back("output.directory: must not be empty");

    if (!bad.empty()) throw ConfigError(bad);
    return cfg;
}

// the fully-defaulted config document (what `gl validate` echoes back)
inline ojson config_echo(const RunConfig& cfg) {
    ojson b_arr = ojson::array();
    for (const BoundaryConfig& b : cfg.boundary) {
        ojson e;
        if (b.winding) {
            e["type"] = "winding";
            e["mode"] = b.degree;
        } else {
            switch (b.spec.type) {
                case BoundarySpec::Type::Constant: e["type"] = "constant"; break;
                case BoundarySpec::Type::Cos: e["type"] = "cos"; break;
                case BoundarySpec::Type::SinArclength: e["type"] = "sin_arclength"; break;
                case BoundarySpec::Type::Table: e["type"] = "table"; break;
            }
            e["amplitude"] = b.spec.amplitude;
            e["mode"] = b.spec.mode;
            if (b.spec.type == BoundarySpec::Type::Table) e["table"] = b.spec.table_path;
        }
        b_arr.push_back(e);
    }
    ojson j;
    j["label"] = cfg.label;
    j["problem"] = to_string(cfg.problem);
    j["domain"] = {{"kind", to_string(cfg.kind)}, {"resolution", cfg.resolution}};
    j["boundary"] = b_arr;
    j["epsilons"] = cfg.epsilons;
    j["solver"] = {{"tau", cfg.tau},
                   {"residual_tol", cfg.residual_tol},
                   {"max_steps", cfg.max_steps},
                   {"newton", cfg.newton},
                   {"continuation", cfg.continuation}};
    ojson th = ojson::object();
    if (cfg.thresholds.C1 >= 0.0) th["C1"] = cfg.thresholds.C1;
    if (cfg.thresholds.C2 >= 0.0) th["C2"] = cfg.thresholds.C2;
    if (cfg.thresholds.C3 >= 0.0) th["C3"] = cfg.thresholds.C3;
    if (cfg.thresholds.C4 >= 0.0) th["C4"] = cfg.thresholds.C4;
    if (cfg.thresholds.C5 >= 0.0) th["C5"] = cfg.thresholds.C5;
    if (cfg.thresholds.C6 >= 0.0) th["C6"] = cfg.thresholds.C6;
    j["thresholds"] = th;
    j["output"] = {{"directory", cfg.out_dir}, {"dump_fields", cfg.dump_fields}};
    return j;
}

// realize a config entry as boundary data on a grid
inline BoundaryData realize_boundary(const BoundaryConfig& b,
                                     const std::shared_ptr<const Grid>& g) {
    if (b.winding)
        return boundary_from_samples(g, winding_samples(*g, b.degree),
                                     "winding:" + std::to_string(b.degree),
                                     /*smoothness_verified=*/true);
    return make_boundary(g, b.spec);
}

} // namespace glab
