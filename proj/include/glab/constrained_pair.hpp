#pragma once
// beta(g1, g2): infimum of I(u, v) = (1/2) integral (|grad u|^2 + |grad v|^2)
// over pairs with the pointwise constraint |u|^2 + |v|^2 = 2 and traces
// (g1, g2).  Always beta <= alpha, since unit-modulus pairs are feasible.
//
// Minimized by projected gradient descent started at (u0, v0): a diagonally
// preconditioned explicit step on each component followed by the pointwise
// retraction (u,v) <- sqrt(2) (u,v) / sqrt(|u|^2+|v|^2).  The preconditioner
// (Jacobi metric of the graph Laplacian) matters on the disk, where the tiny
// angular cells next to the axis would otherwise cap the stable step size at
// a uselessly small value; backtracking on the post-projection energy keeps
// the descent monotone by construction.  Minimizers need not be unique, so
// the returned pair is a candidate; the value is the quantity of interest.

#include <cmath>
#include <vector>

#include "glab/errors.hpp"
#include "glab/harmonic.hpp"
#include "glab/operators.hpp"

namespace glab {

struct ConstrainedPair {
    ComplexField u, v;             // a minimizer candidate
    double beta_value = 0.0;       // I at the final iterate
    double constraint_violation = 0.0; // max | |u|^2+|v|^2 - 2 |
    long steps = 0;
    std::vector<double> energy_trace;  // I after each accepted step (monotone)
};

struct BetaOptions {
    double decrease_tol = -1.0; // stop when an accepted step gains less; <0 = auto
    long max_steps = 200000;
};

namespace detail {
inline double pair_dirichlet(const ComplexField& u, const ComplexField& v) {
    return dirichlet_energy(u) + dirichlet_energy(v);
}
} // namespace detail

inline ConstrainedPair minimize_beta(const HarmonicLifting& a, const HarmonicLifting& b,
                                     BetaOptions opts = {}) {
    if (a.phi.grid.get() != b.phi.grid.get())
        throw ShapeError("minimize_beta needs both liftings on one grid");
    const auto& grid = a.phi.grid;
    const Grid& g = *grid;

    ConstrainedPair out;
    out.u = a.u0;
    out.v = b.u0;

    auto project = [&](ComplexField& u, ComplexField& v) {
        for (int i : g.interior) {
            double s = std::norm(u[i]) + std::norm(v[i]);
            if (s < 1e-6)
                throw SolverError("projection singular: |u|^2+|v|^2 = " +
                                  std::to_string(s) + " at node " + std::to_string(i),
                                  {});
            double scale = std::sqrt(2.0 / s);
            u[i] *= scale;
            v[i] *= scale;
        }
    };

    double I = detail::pair_dirichlet(out.u, out.v);
    double tol = (opts.decrease_tol > 0) ? opts.decrease_tol : 1e-12 * (1.0 + I);
    out.energy_trace.push_back(I);

    ComplexField lu(grid), lv(grid), tu(grid), tv(grid);
    double step = 1.0;
    for (long it = 0; it < opts.max_steps; ++it) {
        lu = laplacian(out.u);
        lv = laplacian(out.v);
        // preconditioned steepest descent direction: (a_i / wdeg_i) * (L u)_i
        bool accepted = false;
        while (step >= 1e-12) {
            tu = out.u;
            tv = out.v;
            for (int i : g.interior) {
                double m = step * g.area[i] / g.wdeg[i];
                tu[i] += m * lu[i];
                tv[i] += m * lv[i];
            }
            project(tu, tv);
            double It = detail::pair_dirichlet(tu, tv);
            if (It <= I + 1e-14 * (1.0 + std::abs(I))) {
                double gain = I - It;
                out.u = std::move(tu);
                out.v = std::move(tv);
                ++out.steps;
                out.energy_trace.push_back(It);
                I = It;
                step = std::min(1.0, step * 1.25);
                accepted = true;
                if (gain < tol) it = opts.max_steps; // converged
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break; // no productive step at any size: stationary
    }

    out.beta_value = I;
    for (int i = 0; i < g.n(); ++i) {
        double s = std::norm(out.u[i]) + std::norm(out.v[i]);
        out.constraint_violation = std::max(out.constraint_violation, std::abs(s - 2.0));
    }
    return out;
}

} // namespace glab
