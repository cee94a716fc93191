#pragma once
// Executes a validated RunConfig end to end: builds the grid and boundary
// data, gates on the degree-zero hypothesis, runs the epsilon sweep (warm
// starting each level from the previous when continuation is on), assembles
// the sweep report, classifies it, and persists every artifact.
//
// Exit-code contract: 0 all verdicts consistent or inconclusive, 2 any
// inconsistent verdict, 1 solver failure (callers map ConfigError to 64 and
// DegreeError to 65).

#include <ctime>
#include <filesystem>
#include <string>
#include <vector>

#include "glab/artifacts.hpp"
#include "glab/constrained_pair.hpp"
#include "glab/diagnostics.hpp"
#include "glab/gl_solver.hpp"
#include "glab/run_config.hpp"
#include "glab/two_component.hpp"

namespace glab {

struct RunOutcome {
    int exit_code = 0;
    SweepReport report;
    std::vector<Verdict> verdicts;
    std::string note;          // why verdicts were skipped, when they were
    std::string out_dir;
    bool solver_failed = false;
    std::string failure;       // solver failure message
};

namespace detail {

inline SweepRow build_row(const GLSolution& s, const HarmonicLifting& ref) {
    SweepRow r;
    r.epsilon = s.epsilon;
    r.er = energy_report(s, ref);
    r.residual = s.residual;
    r.steps = s.steps_taken;
    r.identity_1_7 = s.identity_1_7;
    if (min_modulus(s.u) >= 0.5) r.div_residual_u = decompose(s.u, ref).div_residual;
    r.omega_area_d025 = deviation_set_area(s.u, 0.25);
    r.omega_area_d010 = deviation_set_area(s.u, 0.10);
    r.max_modulus_u = s.max_modulus;
    return r;
}

inline SweepRow build_row(const PairSolution& s, const HarmonicLifting& ru,
                          const HarmonicLifting& rv) {
    SweepRow r;
    r.epsilon = s.epsilon;
    r.er = energy_report(s, ru, rv);
    r.residual = std::max(s.residual_u, s.residual_v);
    r.steps = s.steps_taken;
    r.identity_1_7 = s.identity_1_7;
    if (min_modulus(s.u) >= 0.5) r.div_residual_u = decompose(s.u, ru).div_residual;
    if (min_modulus(s.v) >= 0.5) r.div_residual_v = decompose(s.v, rv).div_residual;
    r.omega_area_d025 = deviation_set_area(s.u, 0.25);
    r.omega_area_d010 = deviation_set_area(s.u, 0.10);
    r.max_modulus_u = s.max_modulus_u;
    r.max_modulus_v = s.max_modulus_v;
    r.max_sumsq = s.max_sumsq;
    return r;
}

inline std::string utc_timestamp() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

inline std::string level_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "level_%02d", index);
    return buf;
}

} // namespace detail

inline RunOutcome run(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    RunOutcome out;
    out.out_dir = cfg.out_dir;

    auto grid = build_grid(cfg.kind, cfg.resolution);
    const bool pair_problem = cfg.problem == ProblemKind::SymmetricPair ||
                              cfg.problem == ProblemKind::NonSymmetricPair;
    const bool two_boundaries = pair_problem || cfg.problem == ProblemKind::BetaMinimizer;

    BoundaryData bu = realize_boundary(cfg.boundary[0], grid);
    detail::require_degree_zero(bu);
    BoundaryData bv;
    if (two_boundaries) {
        bv = realize_boundary(cfg.boundary[1], grid);
        detail::require_degree_zero(bv);
    }

    HarmonicLifting ru = solve_harmonic(bu);
    HarmonicLifting rv;
    if (two_boundaries) rv = solve_harmonic(bv);

    SweepReport& rep = out.report;
    rep.problem = cfg.problem;
    rep.kind = cfg.kind;
    rep.resolution = cfg.resolution;
    rep.h = grid->h();
    rep.residual_tol = cfg.residual_tol;
    rep.reference_dirichlet_u = ru.energy;
    rep.reference_dirichlet_v = two_boundaries ? rv.energy : 0.0;

    double constraint_violation = 0.0;
    ConstrainedPair beta_pair;
    if (two_boundaries) {
        rep.alpha = alpha_value(ru, rv);
        beta_pair = minimize_beta(ru, rv);
        rep.beta = beta_pair.beta_value;
        constraint_violation = beta_pair.constraint_violation;
    }

    // ---- the epsilon sweep
    std::vector<ojson> solve_docs;
    std::vector<std::pair<std::string, std::string>> field_dumps; // name -> contents
    if (cfg.dump_fields) {
        field_dumps.emplace_back("u0.csv", field_dump_text(ru.u0));
        if (two_boundaries) field_dumps.emplace_back("v0.csv", field_dump_text(rv.u0));
        if (two_boundaries) {
            field_dumps.emplace_back("u_star.csv", field_dump_text(beta_pair.u));
            field_dumps.emplace_back("v_star.csv", field_dump_text(beta_pair.v));
        }
    }

    const bool sweeping = cfg.problem == ProblemKind::Single || pair_problem;
    if (sweeping) {
        ComplexField warm_u = ru.u0;
        ComplexField warm_v = two_boundaries ? rv.u0 : ComplexField(grid);
        for (size_t k = 0; k < cfg.epsilons.size(); ++k) {
            SolverConfig scfg;
            scfg.epsilon = cfg.epsilons[k];
            scfg.residual_tol = cfg.residual_tol;
            scfg.max_steps = cfg.max_steps;
            scfg.newton = cfg.newton;
            scfg.continuation = cfg.continuation;

            try {
                SweepRow row;
                long newton_steps = 0;
                double max_mod = 0.0, min_u = 0.0, min_v = 0.0, max_sumsq = 0.0;
                double tau = cfg.tau;
                if (cfg.problem == ProblemKind::Single) {
                    scfg.tau = tau;
                    GLSolution s = cfg.continuation ? solve_gl(bu, warm_u, scfg)
                                                    : solve_gl(bu, grid, scfg);
                    warm_u = s.u;
                    row = detail::build_row(s, ru);
                    newton_steps = s.newton_steps;
                    max_mod = s.max_modulus;
                    min_u = min_modulus(s.u);
                    if (cfg.dump_fields)
                        field_dumps.emplace_back("u_" + detail::level_name((int)k) + ".csv",
                                                 field_dump_text(s.u));
                } else {
                    // the stacked pair Hessian is stiffer than the single-field
                    // one; clamp to its descent bound per level
                    tau = std::min(tau, glab::detail::pair_default_tau(scfg.epsilon));
                    scfg.tau = tau;
                    PairVariant variant = cfg.problem == ProblemKind::SymmetricPair
                                              ? PairVariant::Symmetric
                                              : PairVariant::NonSymmetric;
                    PairSolution s = cfg.continuation
                                         ? solve_pair(bu, bv, warm_u, warm_v, scfg, variant)
                                         : solve_pair(bu, bv, grid, scfg, variant);
                    warm_u = s.u;
                    warm_v = s.v;
                    row = detail::build_row(s, ru, rv);
                    newton_steps = s.newton_steps;
                    max_mod = std::max(s.max_modulus_u, s.max_modulus_v);
                    min_u = min_modulus(s.u);
                    min_v = min_modulus(s.v);
                    max_sumsq = s.max_sumsq;
                    if (cfg.dump_fields) {
                        field_dumps.emplace_back("u_" + detail::level_name((int)k) + ".csv",
                                                 field_dump_text(s.u));
                        field_dumps.emplace_back("v_" + detail::level_name((int)k) + ".csv",
                                                 field_dump_text(s.v));
                    }
                }
                solve_docs.push_back(solve_record(row, row.er, newton_steps, tau, max_mod,
                                                  min_u, min_v, max_sumsq));
                rep.rows.push_back(row);
            } catch (const SolverError& e) {
                out.solver_failed = true;
                out.failure = "level " + detail::level_name((int)k) + " (epsilon " +
                              detail::csv_num(cfg.epsilons[k]) + "): " + e.what();
                break;
            }
        }
    }

    // ---- classify
    std::string status = out.solver_failed ? "solver_failure: " + out.failure : "ok";
    if (out.solver_failed) {
        out.note = "solver failure; verdicts skipped";
        out.exit_code = 1;
    } else if (!sweeping) {
        out.note = "no epsilon sweep for this problem kind; verdicts skipped";
    } else if (rep.rows.size() < 3) {
        out.note = "fewer than 3 epsilon levels; verdicts skipped";
    } else {
        out.verdicts = classify_sweep(rep, cfg.thresholds);
        for (const Verdict& v : out.verdicts)
            if (v.status == VerdictStatus::Inconsistent) out.exit_code = 2;
    }

    // ---- persist
    fs::create_directories(cfg.out_dir);
    fs::create_directories(cfg.out_dir + "/solves");
    if (!field_dumps.empty()) fs::create_directories(cfg.out_dir + "/fields");

    detail::write_text_file(cfg.out_dir + "/sweep.csv",
                            sweep_csv_text(rep, constraint_violation));
    detail::write_text_file(
        cfg.out_dir + "/references.json",
        references_json(rep, cfg.thresholds, constraint_violation, status).dump(2) + "\n");
    detail::write_text_file(cfg.out_dir + "/verdicts.json",
                            verdicts_json(rep, out.verdicts, out.note).dump(2) + "\n");
    for (size_t k = 0; k < solve_docs.size(); ++k)
        detail::write_text_file(
            cfg.out_dir + "/solves/" + detail::level_name((int)k) + ".json",
            solve_docs[k].dump(2) + "\n");
    for (const auto& [name, text] : field_dumps)
        detail::write_text_file(cfg.out_dir + "/fields/" + name, text);

    ojson meta;
    meta["timestamp"] = detail::utc_timestamp();
    meta["status"] = status;
    meta["config"] = config_echo(cfg);
    detail::write_text_file(cfg.out_dir + "/run_meta.json", meta.dump(2) + "\n");

    return out;
}

// the `gl report` path: rebuild the report from disk and re-derive verdicts,
// producing the same document `run` wrote
inline ojson report_from_dir(const std::string& run_dir, int& exit_code) {
    StoredRun sr = read_stored_run(run_dir);
    std::vector<Verdict> verdicts;
    std::string note;
    exit_code = 0;
    if (sr.status != "ok") {
        note = "solver failure; verdicts skipped";
        exit_code = 1;
    } else if (sr.report.problem == ProblemKind::BetaMinimizer ||
               sr.report.problem == ProblemKind::HarmonicOnly) {
        note = "no epsilon sweep for this problem kind; verdicts skipped";
    } else if (sr.report.rows.size() < 3) {
        note = "fewer than 3 epsilon levels; verdicts skipped";
    } else {
        verdicts = classify_sweep(sr.report, sr.thresholds);
        for (const Verdict& v : verdicts)
            if (v.status == VerdictStatus::Inconsistent) exit_code = 2;
    }
    return verdicts_json(sr.report, verdicts, note);
}

} // namespace glab
