#pragma once
// On-disk artifact formats for runs: the 17-column sweep CSV, per-solve JSON
// records, references/verdicts JSON documents, and node-wise field dumps.
// Every writer is deterministic: fixed column and key order, fixed float
// formatting, and no wall-clock content (timestamps live in run_meta.json
// only, which is excluded from determinism comparisons).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "glab/diagnostics.hpp"
#include "glab/errors.hpp"
#include "glab/field.hpp"
#include "glab/run_config.hpp"

namespace glab {

namespace detail {

// shortest exact decimal for CSV cells; %.17g round-trips every double
inline std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError({"cannot write file: " + path});
    out << content;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError({"cannot read file: " + path});
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace detail

inline const char* sweep_csv_header() {
    return "epsilon,dirichlet_u,dirichlet_v,potential_combined,potential_u,potential_v,"
           "sup_dev_u,sup_dev_v,h1_dist_u,h1_dist_v,residual,steps,identity_1_7,"
           "div_residual_u,div_residual_v,omega_set_area_d025,omega_set_area_d010";
}

inline std::string sweep_csv_text(const SweepReport& rep, double constraint_violation) {
    using detail::csv_num;
    std::string s;
    s += "# problem=" + std::string(to_string(rep.problem)) + " kind=" + to_string(rep.kind) +
         " resolution=" + std::to_string(rep.resolution) + " h=" + csv_num(rep.h) +
         " residual_tol=" + csv_num(rep.residual_tol) + "\n";
    s += "# E0_u=" + csv_num(rep.reference_dirichlet_u) +
         " E0_v=" + csv_num(rep.reference_dirichlet_v);
    if (rep.problem != ProblemKind::Single && rep.problem != ProblemKind::HarmonicOnly) {
        s += " alpha=" + csv_num(rep.alpha) + " beta=" + csv_num(rep.beta) +
             " alpha_minus_beta=" + csv_num(rep.alpha - rep.beta) +
             " constraint_violation=" + csv_num(constraint_violation);
    }
    s += "\n";
    s += sweep_csv_header();
    s += "\n";
    for (const SweepRow& r : rep.rows) {
        s += csv_num(r.epsilon) + "," + csv_num(r.er.dirichlet_u) + "," +
             csv_num(r.er.dirichlet_v) + "," + csv_num(r.er.potential_combined) + "," +
             csv_num(r.er.potential_u) + "," + csv_num(r.er.potential_v) + "," +
             csv_num(r.er.sup_dev_u) + "," + csv_num(r.er.sup_dev_v) + "," +
             csv_num(r.er.h1_dist_u) + "," + csv_num(r.er.h1_dist_v) + "," +
             csv_num(r.residual) + "," + std::to_string(r.steps) + "," +
             csv_num(r.identity_1_7) + "," + csv_num(r.div_residual_u) + "," +
             csv_num(r.div_residual_v) + "," + csv_num(r.omega_area_d025) + "," +
             csv_num(r.omega_area_d010) + "\n";
    }
    return s;
}

// references.json: everything `gl report` needs to rebuild the sweep context
inline ojson references_json(const SweepReport& rep, const Thresholds& th,
                             double constraint_violation, const std::string& status) {
    ojson j;
    j["problem"] = to_string(rep.problem);
    j["kind"] = to_string(rep.kind);
    j["resolution"] = rep.resolution;
    j["h"] = rep.h;
    j["residual_tol"] = rep.residual_tol;
    j["E0_u"] = rep.reference_dirichlet_u;
    j["E0_v"] = rep.reference_dirichlet_v;
    j["alpha"] = rep.alpha;
    j["beta"] = rep.beta;
    j["alpha_minus_beta"] = rep.alpha - rep.beta;
    j["constraint_violation"] = constraint_violation;
    j["thresholds"] = {{"C1", th.C1}, {"C2", th.C2}, {"C3", th.C3},
                       {"C4", th.C4}, {"C5", th.C5}, {"C6", th.C6}};
    j["status"] = status;
    return j;
}

// observed suprema of the scaled potentials across the sweep
inline ojson observed_gamma_json(const SweepReport& rep) {
    ojson g;
    auto sup = [&](double (*pick)(const SweepRow&)) {
        double m = 0.0;
        for (const SweepRow& r : rep.rows) m = std::max(m, pick(r));
        return m;
    };
    if (rep.problem == ProblemKind::Single) {
        g["gamma0"] = sup([](const SweepRow& r) { return r.er.potential_u; });
    } else if (rep.problem == ProblemKind::SymmetricPair) {
        g["gamma1"] = sup([](const SweepRow& r) { return r.er.potential_combined; });
        g["gamma3"] = sup([](const SweepRow& r) { return r.er.potential_u; });
        g["gamma4"] = sup([](const SweepRow& r) { return r.er.potential_v; });
    } else if (rep.problem == ProblemKind::NonSymmetricPair) {
        g["gamma2"] =
            sup([](const SweepRow& r) { return r.er.potential_combined + r.er.potential_u; });
        g["gamma3"] = sup([](const SweepRow& r) { return r.er.potential_u; });
        g["gamma4"] = sup([](const SweepRow& r) { return r.er.potential_v; });
    }
    return g;
}

inline ojson verdicts_json(const SweepReport& rep, const std::vector<Verdict>& verdicts,
                           const std::string& note) {
    ojson j;
    j["problem"] = to_string(rep.problem);
    j["levels"] = rep.rows.size();
    j["observed_gamma"] = observed_gamma_json(rep);
    if (!note.empty()) j["note"] = note;
    ojson arr = ojson::array();
    for (const Verdict& v : verdicts) {
        ojson e;
        e["name"] = v.name;
        e["status"] = to_string(v.status);
        e["margin"] = v.margin;
        e["detail"] = v.detail;
        arr.push_back(e);
    }
    j["verdicts"] = arr;
    return j;
}

// per-solve record; key names are part of the interface
inline ojson solve_record(const SweepRow& r, const EnergyReport& er, long newton_steps,
                          double effective_tau, double max_modulus, double min_mod_u,
                          double min_mod_v, double max_sumsq) {
    ojson j;
    j["epsilon"] = r.epsilon;
    j["residual"] = r.residual;
    j["steps"] = r.steps;
    j["newton_steps"] = newton_steps;
    j["effective_tau"] = effective_tau;
    ojson e;
    e["dirichlet_u"] = er.dirichlet_u;
    e["dirichlet_v"] = er.dirichlet_v;
    e["potential_combined"] = er.potential_combined;
    e["potential_u"] = er.potential_u;
    e["potential_v"] = er.potential_v;
    e["g_energy"] = er.g_energy;
    j["energies"] = e;
    j["max_modulus"] = max_modulus;
    j["identity_1_7_residual"] = r.identity_1_7;
    j["max_modulus_u"] = r.max_modulus_u;
    j["max_modulus_v"] = r.max_modulus_v;
    j["min_modulus_u"] = min_mod_u;
    j["min_modulus_v"] = min_mod_v;
    j["max_sumsq"] = max_sumsq;
    j["interior_dev_u"] = er.interior_dev_u;
    j["interior_dev_v"] = er.interior_dev_v;
    return j;
}

// field dump: one-line JSON header, then one CSV row per node
inline std::string field_dump_text(const ComplexField& f) {
    const Grid& g = *f.grid;
    ojson hdr;
    hdr["kind"] = to_string(g.kind);
    hdr["resolution"] = g.resolution;
    hdr["nodes"] = g.n();
    std::string s = hdr.dump() + "\nindex,x,y,re,im\n";
    using detail::csv_num;
    for (int i = 0; i < g.n(); ++i)
        s += std::to_string(i) + "," + csv_num(g.x[i]) + "," + csv_num(g.y[i]) + "," +
             csv_num(f[i].real()) + "," + csv_num(f[i].imag()) + "\n";
    return s;
}

// ---------------------------------------------------------------------------
// readers (the `gl report` path: rebuild a SweepReport from stored artifacts)

struct StoredRun {
    SweepReport report;
    Thresholds thresholds;
    std::string status;
};

namespace detail {

inline ProblemKind problem_from_string(const std::string& s) {
    if (s == "single") return ProblemKind::Single;
    if (s == "symmetric_pair") return ProblemKind::SymmetricPair;
    if (s == "non_symmetric_pair") return ProblemKind::NonSymmetricPair;
    if (s == "beta_minimizer") return ProblemKind::BetaMinimizer;
    if (s == "harmonic_only") return ProblemKind::HarmonicOnly;
    throw ConfigError({"unknown problem kind in stored run: " + s});
}

inline std::vector<double> split_csv_row(const std::string& line, size_t expect,
                                         const std::string& where) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= line.size()) {
        size_t comma = line.find(',', pos);
        std::string cell =
            comma == std::string::npos ? line.substr(pos) : line.substr(pos, comma - pos);
        out.push_back(std::strtod(cell.c_str(), nullptr));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != expect)
        throw ConfigError({where + ": expected " + std::to_string(expect) + " columns, got " +
                           std::to_string(out.size())});
    return out;
}

} // namespace detail

inline StoredRun read_stored_run(const std::string& run_dir) {
    StoredRun sr;

    ojson refs = ojson::parse(detail::read_text_file(run_dir + "/references.json"));
    SweepReport& rep = sr.report;
    rep.problem = detail::problem_from_string(refs.at("problem").get<std::string>());
    rep.kind = refs.at("kind").get<std::string>() == "unit_disk" ? GridKind::UnitDisk
                                                                 : GridKind::UnitSquare;
    rep.resolution = refs.at("resolution").get<int>();
    rep.h = refs.at("h").get<double>();
    rep.residual_tol = refs.at("residual_tol").get<double>();
    rep.reference_dirichlet_u = refs.at("E0_u").get<double>();
    rep.reference_dirichlet_v = refs.at("E0_v").get<double>();
    rep.alpha = refs.at("alpha").get<double>();
    rep.beta = refs.at("beta").get<double>();
    const ojson& th = refs.at("thresholds");
    sr.thresholds.C1 = th.at("C1").get<double>();
    sr.thresholds.C2 = th.at("C2").get<double>();
    sr.thresholds.C3 = th.at("C3").get<double>();
    sr.thresholds.C4 = th.at("C4").get<double>();
    sr.thresholds.C5 = th.at("C5").get<double>();
    sr.thresholds.C6 = th.at("C6").get<double>();
    sr.status = refs.value("status", std::string("ok"));

    // CSV rows: skip comment lines, verify the fixed header
    std::istringstream csv(detail::read_text_file(run_dir + "/sweep.csv"));
    std::string line;
    bool header_seen = false;
    int index = 0;
    while (std::getline(csv, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != sweep_csv_header())
                throw ConfigError({"sweep.csv: unexpected header row"});
            header_seen = true;
            continue;
        }
        std::vector<double> c =
            detail::split_csv_row(line, 17, "sweep.csv row " + std::to_string(index));
        SweepRow r;
        r.epsilon = c[0];
        r.er.dirichlet_u = c[1];
        r.er.dirichlet_v = c[2];
        r.er.potential_combined = c[3];
        r.er.potential_u = c[4];
        r.er.potential_v = c[5];
        r.er.sup_dev_u = c[6];
        r.er.sup_dev_v = c[7];
        r.er.h1_dist_u = c[8];
        r.er.h1_dist_v = c[9];
        r.residual = c[10];
        r.steps = static_cast<long>(c[11]);
        r.identity_1_7 = c[12];
        r.er.identity_1_7 = c[12];
        r.div_residual_u = c[13];
        r.div_residual_v = c[14];
        r.omega_area_d025 = c[15];
        r.omega_area_d010 = c[16];

        // the classifier also needs quantities that live in the solve records
        char name[64];
        std::snprintf(name, sizeof name, "%s/solves/level_%02d.json", run_dir.c_str(), index);
        ojson rec = ojson::parse(detail::read_text_file(name));
        r.er.g_energy = rec.at("energies").at("g_energy").get<double>();
        r.max_modulus_u = rec.value("max_modulus_u", rec.value("max_modulus", 0.0));
        r.max_modulus_v = rec.value("max_modulus_v", 0.0);
        r.max_sumsq = rec.value("max_sumsq", 0.0);

        rep.rows.push_back(r);
        ++index;
    }
    if (!header_seen) throw ConfigError({"sweep.csv: missing header row"});
    return sr;
}

} // namespace glab
