#pragma once
// Per-solve measurement reports, the modulus-phase decomposition, and the
// sweep classifier that turns an epsilon-sweep into structured verdicts.
//
// The classifier encodes the convergence theory for degree-zero data as
// finite-epsilon trend checks:
//   - energy threshold: solutions whose Dirichlet energy stays at or below
//     the harmonic reference must converge to it in H^1;
//   - co-decay: the potential integral and the H^1 distance vanish together
//     or not at all;
//   - Pohozaev boundedness: the scaled potential never grows past its
//     largest-epsilon value (star-shaped domains);
//   - constrained-gap behaviour: for the symmetric pair system the limit is
//     governed by alpha vs beta -- when alpha > beta the per-component
//     potentials must diverge while the combined one stays bounded;
//   - modulus bounds and lifted-system residuals as per-row invariants.
// Verdicts are {consistent, inconsistent, inconclusive}; "inconsistent" means
// the data contradicts the expected asymptotics and fails the run.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <string>
#include <vector>

#include "glab/boundary.hpp"
#include "glab/errors.hpp"
#include "glab/field.hpp"
#include "glab/gl_solver.hpp"
#include "glab/harmonic.hpp"
#include "glab/operators.hpp"
#include "glab/two_component.hpp"

namespace glab {

enum class ProblemKind { Single, SymmetricPair, NonSymmetricPair, BetaMinimizer, HarmonicOnly };

inline const char* to_string(ProblemKind p) {
    switch (p) {
        case ProblemKind::Single: return "single";
        case ProblemKind::SymmetricPair: return "symmetric_pair";
        case ProblemKind::NonSymmetricPair: return "non_symmetric_pair";
        case ProblemKind::BetaMinimizer: return "beta_minimizer";
        case ProblemKind::HarmonicOnly: return "harmonic_only";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// per-solve energy report

struct EnergyReport {
    double dirichlet_u = 0.0, dirichlet_v = 0.0; // (1/2) int |grad .|^2
    double potential_combined = 0.0;             // (1/eps^2) int (2-|u|^2-|v|^2)^2
    double potential_u = 0.0, potential_v = 0.0; // (1/eps^2) int (1-|.|^2)^2
    double g_energy = 0.0;                       // full G_eps or F_eps
    double sup_dev_u = 0.0, sup_dev_v = 0.0;     // max node |1 - |.||
    double h1_dist_u = 0.0, h1_dist_v = 0.0;     // vs the harmonic references
    double identity_1_7 = 0.0;
    double interior_dev_u = 0.0, interior_dev_v = 0.0; // max |u - u0| on the inner half-domain
};

namespace detail {

// max |u - ref| over nodes within half the domain radius of the center --
// a cheap interior-convergence proxy that ignores the boundary layer
inline double inner_half_deviation(const ComplexField& u, const ComplexField& ref) {
    const Grid& g = *u.grid;
    double cx = 0.5, cy = g.kind == GridKind::UnitSquare ? 0.5 : 0.0;
    if (g.kind == GridKind::UnitDisk) { cx = 0.0; cy = 0.0; }
    double rmax = g.kind == GridKind::UnitDisk ? 0.5 : 0.25; // half of in-radius
    double m = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        double dx = g.x[i] - cx, dy = g.y[i] - cy;
        if (dx * dx + dy * dy <= rmax * rmax) m = std::max(m, std::abs(u[i] - ref[i]));
    }
    return m;
}

} // namespace detail

inline EnergyReport energy_report(const GLSolution& s, const HarmonicLifting& ref) {
    EnergyReport r;
    r.dirichlet_u = s.dirichlet;
    r.potential_u = s.potential;
    r.g_energy = s.g_energy;
    r.sup_dev_u = sup_deviation(s.u);
    r.h1_dist_u = h1_distance(s.u, ref.u0);
    r.identity_1_7 = s.identity_1_7;
    r.interior_dev_u = detail::inner_half_deviation(s.u, ref.u0);
    return r;
}

inline EnergyReport energy_report(const PairSolution& s, const HarmonicLifting& ref_u,
                                  const HarmonicLifting& ref_v) {
    EnergyReport r;
    r.dirichlet_u = s.dirichlet_u;
    r.dirichlet_v = s.dirichlet_v;
    r.potential_combined = s.potential_combined;
    r.potential_u = s.potential_u;
    r.potential_v = s.potential_v;
    r.g_energy = s.f_energy;
    r.sup_dev_u = sup_deviation(s.u);
    r.sup_dev_v = sup_deviation(s.v);
    r.h1_dist_u = h1_distance(s.u, ref_u.u0);
    r.h1_dist_v = h1_distance(s.v, ref_v.u0);
    r.identity_1_7 = s.identity_1_7;
    r.interior_dev_u = detail::inner_half_deviation(s.u, ref_u.u0);
    r.interior_dev_v = detail::inner_half_deviation(s.v, ref_v.u0);
    return r;
}

// ---------------------------------------------------------------------------
// modulus-phase decomposition u = rho e^{i zeta}

struct ModulusPhase {
    ScalarField rho;  // |u|
    ScalarField zeta; // unwrapped phase, equal to the boundary lifting on the rim
    ScalarField eta;  // zeta - phi (deviation from the harmonic phase)
    double div_residual = 0.0; // max-norm of discrete div(rho^2 grad zeta)
};

inline ModulusPhase decompose(const ComplexField& u, const HarmonicLifting& ref) {
    const Grid& g = *u.grid;
    require_same_grid(u, ref.u0);

    double mn = min_modulus(u);
    if (mn < 0.5)
        throw LiftingError("lifting unavailable: min |u| = " + std::to_string(mn) +
                           " is below 1/2");

    ModulusPhase mp{ScalarField(u.grid), ScalarField(u.grid), ScalarField(u.grid), 0.0};
    for (int i = 0; i < g.n(); ++i) mp.rho[i] = std::abs(u[i]);

    // unwrap by BFS from the boundary, seeded with the same lifting the
    // harmonic reference uses, so zeta = phi_0 on the rim by construction
    std::vector<char> seen(g.n(), 0);
    std::queue<int> q;
    for (int b : g.boundary) {
        mp.zeta[b] = ref.phi[b];
        seen[b] = 1;
        q.push(b);
    }
    while (!q.empty()) {
        int i = q.front();
        q.pop();
        for (int k = g.adj_off[i]; k < g.adj_off[i + 1]; ++k) {
            int j = g.adj_node[k];
            if (seen[j]) continue;
            mp.zeta[j] = mp.zeta[i] + std::arg(u[j] * std::conj(u[i]));
            seen[j] = 1;
            q.push(j);
        }
    }

    for (int i = 0; i < g.n(); ++i) mp.eta[i] = mp.zeta[i] - ref.phi[i];

    // discrete div(rho^2 grad zeta): edge flux with the midpoint modulus weight
    for (int i : g.interior) {
        double acc = 0.0;
        for (int k = g.adj_off[i]; k < g.adj_off[i + 1]; ++k) {
            int j = g.adj_node[k];
            double w2 = 0.5 * (mp.rho[i] * mp.rho[i] + mp.rho[j] * mp.rho[j]);
            acc += g.adj_w[k] * w2 * (mp.zeta[j] - mp.zeta[i]);
        }
        mp.div_residual = std::max(mp.div_residual, std::abs(acc / g.area[i]));
    }
    return mp;
}

// ---------------------------------------------------------------------------
// sweep data and classification

struct SweepRow {
    double epsilon = 0.0;
    EnergyReport er;
    double residual = 0.0; // scaled; max of the two for pairs
    long steps = 0;
    double identity_1_7 = 0.0;
    double div_residual_u = -1.0, div_residual_v = -1.0; // -1: modulus dipped below 1/2
    double omega_area_d025 = 0.0, omega_area_d010 = 0.0; // area of {1-|u|^2 > delta}
    double max_modulus_u = 0.0, max_modulus_v = 0.0;
    double max_sumsq = 0.0;
};

struct Thresholds {
    // negative means "derive the default from the references"
    double C1 = -1.0, C2 = -1.0, C3 = -1.0, C4 = -1.0, C5 = -1.0, C6 = -1.0;
};

struct SweepReport {
    ProblemKind problem = ProblemKind::Single;
    GridKind kind = GridKind::UnitSquare;
    int resolution = 0;
    double h = 0.0;
    double residual_tol = 0.0;
    double reference_dirichlet_u = 0.0; // (1/2) int |grad u0|^2
    double reference_dirichlet_v = 0.0;
    double alpha = 0.0, beta = 0.0; // pair references (0 when not applicable)
    std::vector<SweepRow> rows;     // epsilon strictly decreasing
};

enum class VerdictStatus { Consistent, Inconsistent, Inconclusive };

inline const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Consistent: return "consistent";
        case VerdictStatus::Inconsistent: return "inconsistent";
        case VerdictStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct Verdict {
    std::string name;
    VerdictStatus status = VerdictStatus::Inconclusive;
    double margin = 0.0; // signed slack of the binding comparison (>= 0 is good)
    std::string detail;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline double drop_factor(double first, double last) {
    return first / std::max(last, 1e-300);
}

// least-squares slope of y against log(eps); positive = decreasing as eps -> 0
inline double log_eps_slope(const std::vector<SweepRow>& rows, double (*pick)(const SweepRow&)) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = static_cast<int>(rows.size());
    for (const SweepRow& r : rows) {
        double x = std::log(r.epsilon), y = pick(r);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

} // namespace detail

inline std::vector<Verdict> classify_sweep(const SweepReport& rep, const Thresholds& th = {}) {
    if (rep.rows.size() < 3)
        throw ConfigError({"sweep classification needs at least 3 epsilon levels, got " +
                           std::to_string(rep.rows.size())});
    for (size_t k = 1; k < rep.rows.size(); ++k)
        if (!(rep.rows[k].epsilon < rep.rows[k - 1].epsilon))
            throw ConfigError({"sweep rows must have strictly decreasing epsilon"});

    const std::vector<SweepRow>& rows = rep.rows;
    const SweepRow& first = rows.front();
    const SweepRow& last = rows.back();
    const bool pair = rep.problem != ProblemKind::Single;
    const bool nonsym = rep.problem == ProblemKind::NonSymmetricPair;

    auto combined_dirichlet = [&](const SweepRow& r) { return r.er.dirichlet_u + r.er.dirichlet_v; };
    const double E0 = rep.reference_dirichlet_u + rep.reference_dirichlet_v;
    const double tolE = 0.05 * (1.0 + E0);

    std::vector<Verdict> out;
    auto push = [&](std::string name, VerdictStatus st, double margin, std::string detail) {
        out.push_back({std::move(name), st, margin, std::move(detail)});
    };

    // ---- energy threshold: bounded energy forces convergence to the reference
    {
        // the sharp reference constant: harmonic energy for single and
        // non-symmetric problems, the constrained infimum beta for the
        // symmetric pair (its minimizers approach the constraint manifold)
        double Cdefault = (rep.problem == ProblemKind::SymmetricPair) ? rep.beta : E0;
        double C = Cdefault;
        if (rep.problem == ProblemKind::Single && th.C1 >= 0.0) C = th.C1;
        if (nonsym && th.C3 >= 0.0) C = th.C3;
        if (rep.problem == ProblemKind::SymmetricPair && th.C5 >= 0.0) C = th.C5;

        double sweep_max = 0.0;
        for (const SweepRow& r : rows) sweep_max = std::max(sweep_max, combined_dirichlet(r));
        double hypothesis_margin = C + tolE - sweep_max;
        if (hypothesis_margin < 0.0) {
            push("energy_threshold", VerdictStatus::Inconclusive, hypothesis_margin,
                 "hypothesis not met: sweep max Dirichlet energy " + detail::fmt(sweep_max) +
                     " exceeds threshold " + detail::fmt(C) + " + tol; bounded-energy branch not exercised");
        } else {
            // conclusion: the threshold pinches onto the reference energy and
            // the final level sits within tolerance of it
            double gap = std::abs(combined_dirichlet(last) - Cdefault);
            bool ok = gap <= tolE;
            push("energy_threshold", ok ? VerdictStatus::Consistent : VerdictStatus::Inconsistent,
                 tolE - gap,
                 "final Dirichlet energy " + detail::fmt(combined_dirichlet(last)) +
                     " vs reference " + detail::fmt(Cdefault) + " (tol " + detail::fmt(tolE) + ")");
        }
    }

    // ---- liminf bound: energies may approach the reference only from below the tolerance band
    {
        double sweep_min = 1e300;
        for (const SweepRow& r : rows) sweep_min = std::min(sweep_min, combined_dirichlet(r));
        double ref = (rep.problem == ProblemKind::SymmetricPair) ? rep.beta : E0;
        double margin = sweep_min - (ref - tolE);
        push("liminf_energy", margin >= 0.0 ? VerdictStatus::Consistent : VerdictStatus::Inconsistent,
             margin,
             "sweep min Dirichlet energy " + detail::fmt(sweep_min) + " vs reference " +
                 detail::fmt(ref) + " - tol");
    }

    // ---- excess-energy branch: energies pinned above the reference forbid uniform convergence
    {
        double C = (rep.problem == ProblemKind::Single) ? th.C2 : th.C4; // C6 handled with the gap verdict
        if (rep.problem == ProblemKind::SymmetricPair) C = -1.0;
        double sweep_min = 1e300;
        for (const SweepRow& r : rows) sweep_min = std::min(sweep_min, combined_dirichlet(r));
        if (C < 0.0) {
            push("excess_energy_branch", VerdictStatus::Inconclusive, 0.0,
                 "no excess-energy threshold supplied; branch not exercised");
        } else if (sweep_min < C) {
            push("excess_energy_branch", VerdictStatus::Inconclusive, sweep_min - C,
                 "hypothesis not met: sweep min Dirichlet energy below the supplied threshold");
        } else {
            // conclusion: moduli must not flatten out -- for singles the
            // sup-deviation must not vanish, for the non-symmetric pair the
            // total potential must stay away from zero
            double probe = nonsym ? (last.er.potential_combined + last.er.potential_u)
                                  : last.er.sup_dev_u;
            bool ok = probe > 1e-6;
            push("excess_energy_branch", ok ? VerdictStatus::Consistent : VerdictStatus::Inconsistent,
                 probe - 1e-6, "deviation probe at smallest epsilon = " + detail::fmt(probe));
        }
    }

    // ---- co-decay: potential -> 0 iff H^1 distance -> 0 (trend form: both
    // fall by >= 10x from the first level, or neither)
    {
        if (rep.problem == ProblemKind::SymmetricPair && rep.alpha - rep.beta > 1e-3 * (1.0 + rep.alpha)) {
            // alpha > beta: the limit is not (u0, v0), so distance to the
            // harmonic pair is not expected to vanish; handled by the gap verdict
            push("h1_potential_codecay", VerdictStatus::Inconclusive, rep.alpha - rep.beta,
                 "alpha > beta: convergence target is a constrained minimizer, not the harmonic pair");
        } else {
            double pot_first = first.er.potential_u, pot_last = last.er.potential_u;
            double h1_first = first.er.h1_dist_u, h1_last = last.er.h1_dist_u;
            if (pair) {
                pot_first = first.er.potential_combined + (nonsym ? first.er.potential_u : 0.0);
                pot_last = last.er.potential_combined + (nonsym ? last.er.potential_u : 0.0);
                h1_first += first.er.h1_dist_v;
                h1_last += last.er.h1_dist_v;
            }
            bool degenerate = pot_first <= 1e-12 && h1_first <= 1e-9; // constant data: all zero
            double pd = detail::drop_factor(pot_first, pot_last);
            double hd = detail::drop_factor(h1_first, h1_last);
            VerdictStatus st;
            if (degenerate) st = VerdictStatus::Consistent;
            else if (pd >= 10.0 && hd >= 10.0) st = VerdictStatus::Consistent;
            else if (pd >= 10.0 || hd >= 10.0) st = VerdictStatus::Inconsistent; // one without the other
            else st = VerdictStatus::Inconclusive;
            push("h1_potential_codecay", st, std::min(pd, hd) - 10.0,
                 "potential drop x" + detail::fmt(pd) + ", H1-distance drop x" + detail::fmt(hd));
        }
    }

    // ---- Pohozaev boundedness of the scaled potential(s)
    {
        auto total_pot = [&](const SweepRow& r) {
            if (!pair) return r.er.potential_u;
            return r.er.potential_combined + (nonsym ? r.er.potential_u : 0.0);
        };
        double cap = 1.2 * total_pot(first);
        double worst = 0.0;
        for (const SweepRow& r : rows) worst = std::max(worst, total_pot(r));
        bool ok = worst <= cap + 1e-12;
        push("pohozaev_bound", ok ? VerdictStatus::Consistent : VerdictStatus::Inconsistent,
             cap - worst,
             "sweep max scaled potential " + detail::fmt(worst) + " vs 1.2x largest-epsilon value " +
                 detail::fmt(cap));
    }

    // ---- per-component potentials for pair problems
    if (pair) {
        if (nonsym) {
            // both per-component potentials stay bounded for the non-symmetric system
            double cap_u = 1.2 * first.er.potential_u, cap_v = 1.2 * first.er.potential_v;
            double max_u = 0.0, max_v = 0.0;
            for (const SweepRow& r : rows) {
                max_u = std::max(max_u, r.er.potential_u);
                max_v = std::max(max_v, r.er.potential_v);
            }
            bool ok = max_u <= cap_u + 1e-12 && max_v <= cap_v + 1e-12;
            push("percomponent_potentials_bounded",
                 ok ? VerdictStatus::Consistent : VerdictStatus::Inconsistent,
                 std::min(cap_u - max_u, cap_v - max_v),
                 "sweep max per-component potentials (" + detail::fmt(max_u) + ", " +
                     detail::fmt(max_v) + ") vs 1.2x largest-epsilon values");
        } else {
            // symmetric system: behaviour is governed by the alpha/beta gap
            double gap = rep.alpha - rep.beta;
            bool gap_positive = gap > 1e-3 * (1.0 + rep.alpha);
            bool u_grows = last.er.potential_u > first.er.potential_u;
            bool v_grows = last.er.potential_v > first.er.potential_v;
            bool u_bounded = last.er.potential_u <= 1.2 * first.er.potential_u + 1e-12;
            bool v_bounded = last.er.potential_v <= 1.2 * first.er.potential_v + 1e-12;
            VerdictStatus st;
            std::string det;
            if (gap_positive) {
                st = (u_grows && v_grows) ? VerdictStatus::Consistent : VerdictStatus::Inconsistent;
                det = "alpha - beta = " + detail::fmt(gap) +
                      " > 0: per-component potentials must diverge; observed (" +
                      detail::fmt(first.er.potential_u) + " -> " + detail::fmt(last.er.potential_u) +
                      ", " + detail::fmt(first.er.potential_v) + " -> " +
                      detail::fmt(last.er.potential_v) + ")";
            } else {
                st = (u_bounded && v_bounded) ? VerdictStatus::Consistent : VerdictStatus::Inconsistent;
                det = "alpha = beta within probe: per-component potentials must stay bounded; observed (" +
                      detail::fmt(first.er.potential_u) + " -> " + detail::fmt(last.er.potential_u) +
                      ", " + detail::fmt(first.er.potential_v) + " -> " +
                      detail::fmt(last.er.potential_v) + ")";
            }
            push("constrained_gap_behaviour", st, gap, det);

            // the modulus-flattening branch needs a priori constants we can
            // only instantiate with observed suprema; labeled as such
            double g1 = 0.0, g3 = 0.0, g4 = 0.0;
            for (const SweepRow& r : rows) {
                g1 = std::max(g1, r.er.potential_combined);
                g3 = std::max(g3, r.er.potential_u);
                g4 = std::max(g4, r.er.potential_v);
            }
            double C6 = th.C6 >= 0.0 ? th.C6 : E0 + std::sqrt(g1 * g3) + std::sqrt(g1 * g4);
            double sweep_min = 1e300;
            for (const SweepRow& r : rows) sweep_min = std::min(sweep_min, combined_dirichlet(r));
            if (!gap_positive && sweep_min >= C6) {
                double probe = std::max(last.er.sup_dev_u, last.er.sup_dev_v);
                push("modulus_flattening_branch",
                     probe > 1e-6 ? VerdictStatus::Consistent : VerdictStatus::Inconsistent,
                     probe - 1e-6,
                     "observed-constant surrogate: energies above C6 = " + detail::fmt(C6) +
                         "; sup-deviation probe " + detail::fmt(probe));
            } else {
                push("modulus_flattening_branch", VerdictStatus::Inconclusive, sweep_min - C6,
                     "observed-constant surrogate: hypothesis not exercised (sweep min energy " +
                         detail::fmt(sweep_min) + " vs C6 = " + detail::fmt(C6) + ")");
            }
        }
    }

    // ---- uniform-modulus trend: sup-deviation fitted against log(eps)
    {
        double slope = detail::log_eps_slope(rows, [](const SweepRow& r) {
            return std::max(r.er.sup_dev_u, r.er.sup_dev_v);
        });
        double sd_first = std::max(first.er.sup_dev_u, first.er.sup_dev_v);
        double sd_last = std::max(last.er.sup_dev_u, last.er.sup_dev_v);
        bool expect_persistent = rep.problem == ProblemKind::SymmetricPair &&
                                 rep.alpha - rep.beta > 1e-3 * (1.0 + rep.alpha);
        VerdictStatus st;
        if (sd_first <= 1e-12 && sd_last <= 1e-12) st = VerdictStatus::Consistent; // constant data
        else if (expect_persistent)
            st = sd_last > 1e-3 ? VerdictStatus::Consistent : VerdictStatus::Inconsistent;
        else if (slope > 0.0 && sd_last <= 0.8 * sd_first) st = VerdictStatus::Consistent;
        else if (sd_last > 1.2 * sd_first) st = VerdictStatus::Inconsistent;
        else st = VerdictStatus::Inconclusive;
        push("uniform_modulus_trend", st, slope,
             "sup-deviation " + detail::fmt(sd_first) + " -> " + detail::fmt(sd_last) +
                 ", log-eps slope " + detail::fmt(slope) +
                 (expect_persistent ? " (alpha > beta: deviation must persist)" : ""));
    }

    // ---- modulus bounds (maximum principle / its pair analogue)
    {
        double slack = 10.0 * rep.h * rep.h;
        double worst = -1e300;
        bool ok = true;
        if (!pair) {
            for (const SweepRow& r : rows) {
                worst = std::max(worst, r.max_modulus_u - (1.0 + slack));
                ok = ok && r.max_modulus_u <= 1.0 + slack;
            }
        } else if (nonsym) {
            for (const SweepRow& r : rows) {
                double eu = r.max_modulus_u * r.max_modulus_u - (1.5 + slack);
                double ev = r.max_modulus_v * r.max_modulus_v - (2.0 + slack);
                worst = std::max({worst, eu, ev});
                ok = ok && eu <= 0.0 && ev <= 0.0;
            }
        } else {
            for (const SweepRow& r : rows) {
                worst = std::max(worst, r.max_sumsq - (2.0 + slack));
                ok = ok && r.max_sumsq <= 2.0 + slack;
            }
        }
        push("modulus_bounds", ok ? VerdictStatus::Consistent : VerdictStatus::Inconsistent, -worst,
             pair ? (nonsym ? "max |u|^2 <= 1.5 + 10h^2 and max |v|^2 <= 2 + 10h^2"
                            : "max (|u|^2 + |v|^2) <= 2 + 10h^2")
                  : "max |u| <= 1 + 10h^2");
    }

    // ---- lifted-system residuals: balance identity and phase-flux divergence
    {
        double escale = 0.0;
        for (const SweepRow& r : rows) escale = std::max(escale, r.er.g_energy);
        double cap = 50.0 * (rep.h + rep.residual_tol) * (1.0 + escale);
        double worst = 0.0;
        int lifted_rows = 0;
        for (const SweepRow& r : rows) {
            worst = std::max(worst, r.identity_1_7);
            if (r.div_residual_u >= 0.0) {
                worst = std::max(worst, r.div_residual_u);
                ++lifted_rows;
            }
            if (pair && r.div_residual_v >= 0.0) worst = std::max(worst, r.div_residual_v);
        }
        bool ok = worst <= cap;
        push("lifted_system_residuals", ok ? VerdictStatus::Consistent : VerdictStatus::Inconsistent,
             cap - worst,
             "worst residual " + detail::fmt(worst) + " vs 50(h + tol)(1 + energy scale) = " +
                 detail::fmt(cap) + "; " + std::to_string(lifted_rows) + "/" +
                 std::to_string(rows.size()) + " rows admitted a lifting");
    }

    return out;
}

} // namespace glab
