#pragma once
// Shared solver kernel for the Euler-Lagrange systems: semi-implicit gradient
// flow (implicit Laplacian, explicit potential) with an optional damped Newton
// finisher on the discrete residual.
//
//   (I - tau L) u^{n+1} = u^n - tau * potential_gradient(u^n)     per component
//
// The flow is linearly stable for any tau and energy-monotone for
// tau <= 0.25 eps^2 (explicit-term Lipschitz bound), but contracts the smooth
// error modes at a rate ~ tau * lambda_1, which for small eps means it crawls
// long before it reaches tight residuals.  Newton takes over once the scaled
// residual is inside its basin; its linear solves are truncated Jacobi-PCG on
// the exact Hessian, and steps are backtracked on the max-norm residual so a
// stray indefinite direction cannot make things worse.
//
// Residuals are measured on  -L u - potential_gradient(u)  in the max norm
// and scaled by 1/(1 + eps^-2) so one tolerance means the same thing across
// epsilon levels.

#include <cmath>
#include <vector>

#include "glab/cg.hpp"
#include "glab/errors.hpp"
#include "glab/field.hpp"
#include "glab/operators.hpp"

namespace glab {

struct FlowOptions {
    double tau = 0.0;
    long max_steps = 20000;
    double residual_tol = 1e-8; // on the scaled residual
    bool newton = true;
};

struct FlowResult {
    long steps = 0;        // accepted flow steps
    long newton_steps = 0; // Newton iterations on top
    double residual = 0.0; // final scaled residual
    bool converged = false;
    std::vector<double> energy_trace;   // total energy after each flow step
    std::vector<double> residual_trace; // scaled residual after each step
};

namespace detail {

template <class Problem>
double total_energy(const Problem& p, const std::vector<ComplexField>& U) {
    double e = p.potential_energy(U);
    for (const auto& u : U) e += dirichlet_energy(u);
    return e;
}

// unscaled max-norm of -L u - potential_gradient(u) over interior nodes
template <class Problem>
double residual_max(const Problem& p, const std::vector<ComplexField>& U,
                    std::vector<ComplexField>& pg, std::vector<ComplexField>& lap) {
    for (int c = 0; c < Problem::ncomp; ++c) lap[c] = laplacian(U[c]);
    p.potential_gradient(U, pg);
    double m = 0.0;
    for (int c = 0; c < Problem::ncomp; ++c)
        for (int i : p.grid->interior)
            m = std::max(m, std::abs(-lap[c][i] + pg[c][i]));
    return m;
}

} // namespace detail

template <class Problem>
FlowResult relax(const Problem& p, std::vector<ComplexField>& U, const FlowOptions& opts) {
    const Grid& g = *p.grid;
    const double eps2 = p.epsilon * p.epsilon;
    const double scale = 1.0 + 1.0 / eps2;
    const double tol_unscaled = opts.residual_tol * scale;
    const double tau = opts.tau;

    // pin boundary rows to the data once; nothing below touches them
    for (int c = 0; c < Problem::ncomp; ++c) {
        const BoundaryData& bc = p.boundary(c);
        for (int k = 0; k < g.n_boundary(); ++k)
            U[c][g.boundary[k]] = bc.samples[k];
    }

    std::vector<ComplexField> pg(Problem::ncomp, ComplexField(p.grid));
    std::vector<ComplexField> lap(Problem::ncomp, ComplexField(p.grid));

    FlowResult res;
    double rmax = detail::residual_max(p, U, pg, lap);
    res.residual_trace.push_back(rmax / scale);

    // newton takes over from a loose flow solution; flow alone must go all
    // the way down when disabled
    const double trigger_unscaled =
        opts.newton ? std::max(tol_unscaled, 1e-3 * scale) : tol_unscaled;

    ShiftedLaplacian<cplx> A{g, 1.0, tau};
    auto diag = A.diagonal();
    std::vector<cplx> rhs(g.n());

    // ---- semi-implicit flow phase ----
    long stall_window = 200;
    while (rmax > trigger_unscaled && res.steps < opts.max_steps) {
        p.potential_gradient(U, pg);
        for (int c = 0; c < Problem::ncomp; ++c) {
            for (int i = 0; i < g.n(); ++i)
                rhs[i] = g.area[i] * (U[c][i] - tau * pg[c][i]);
            double inner = std::max(1e-12, 1e-3 * rmax);
            pcg(g, A, diag, rhs, U[c].v, inner, 2000);
        }
        ++res.steps;
        rmax = detail::residual_max(p, U, pg, lap);
        res.residual_trace.push_back(rmax / scale);
        res.energy_trace.push_back(detail::total_energy(p, U));
        // stall check: < 0.1% progress across the window means the implicit
        // half cannot buy anything more at this tau
        long n = static_cast<long>(res.residual_trace.size());
        if (n > stall_window &&
            res.residual_trace[n - 1] > 0.999 * res.residual_trace[n - 1 - stall_window])
            break;
    }

    // ---- damped Newton phase ----
    if (opts.newton && rmax > tol_unscaled) {
        const int n1 = g.n();
        std::vector<ComplexField> R(Problem::ncomp, ComplexField(p.grid));
        std::vector<ComplexField> trial(Problem::ncomp, ComplexField(p.grid));

        // flat view over the stacked components so pcg can treat the coupled
        // Newton system as one SPD solve
        struct StackedDom {
            int nc, nn;
            std::vector<int> interior;
            std::vector<double> area;
            int n() const { return nc * nn; }
        } sg{Problem::ncomp, n1, {}, {}};
        sg.interior.reserve(Problem::ncomp * g.n_interior());
        sg.area.assign(sg.n(), 1.0);
        for (int c = 0; c < Problem::ncomp; ++c) {
            for (int i : g.interior) sg.interior.push_back(c * n1 + i);
            for (int i = 0; i < n1; ++i) sg.area[c * n1 + i] = g.area[i];
        }

        std::vector<ComplexField> W(Problem::ncomp, ComplexField(p.grid));
        std::vector<ComplexField> HW(Problem::ncomp, ComplexField(p.grid));
        auto hess_apply = [&](const std::vector<cplx>& w, std::vector<cplx>& out) {
            for (int c = 0; c < Problem::ncomp; ++c)
                for (int i = 0; i < n1; ++i) W[c][i] = w[c * n1 + i];
            p.hessian_apply(U, W, HW);
            std::fill(out.begin(), out.end(), cplx{});
            for (int c = 0; c < Problem::ncomp; ++c) {
                for (const Edge& e : g.edges) {
                    cplx d = W[c][e.a] - W[c][e.b];
                    out[c * n1 + e.a] += e.w * d;
                    out[c * n1 + e.b] -= e.w * d;
                }
                for (int i = 0; i < n1; ++i) {
                    int k = c * n1 + i;
                    if (g.is_interior[i]) out[k] += g.area[i] * HW[c][i];
                    else out[k] = cplx{};
                }
            }
        };

        std::vector<cplx> delta(sg.n()), nrhs(sg.n());
        std::vector<double> ndiag(sg.n(), 1.0);

        for (int it = 0; it < 60 && rmax > tol_unscaled; ++it) {
            for (int c = 0; c < Problem::ncomp; ++c) lap[c] = laplacian(U[c]);
            p.potential_gradient(U, pg);
            for (int c = 0; c < Problem::ncomp; ++c)
                for (int i : g.interior) R[c][i] = -lap[c][i] + pg[c][i];

            // Newton system  H delta = -R  in area-weighted form
            std::fill(delta.begin(), delta.end(), cplx{});
            std::fill(nrhs.begin(), nrhs.end(), cplx{});
            for (int c = 0; c < Problem::ncomp; ++c)
                for (int i : g.interior) {
                    nrhs[c * n1 + i] = -g.area[i] * R[c][i];
                    ndiag[c * n1 + i] = g.wdeg[i] + g.area[i] * p.hessian_diag(U, c, i);
                }
            pcg(sg, hess_apply, ndiag, nrhs, delta, 1e-2 * rmax, 4000);

            bool moved = false;
            for (double t = 1.0; t >= 1.0 / 4096.0; t *= 0.5) {
                for (int c = 0; c < Problem::ncomp; ++c) {
                    trial[c] = U[c];
                    for (int i : g.interior) trial[c][i] += t * delta[c * n1 + i];
                }
                double rt = detail::residual_max(p, trial, pg, lap);
                if (rt < rmax * (1.0 - 1e-4 * t)) {
                    for (int c = 0; c < Problem::ncomp; ++c) U[c] = trial[c];
                    rmax = rt;
                    moved = true;
                    break;
                }
            }
            ++res.newton_steps;
            res.residual_trace.push_back(rmax / scale);
            if (!moved) break; // line search exhausted; report what we have
        }
    }

    res.residual = rmax / scale;
    res.converged = (res.residual <= opts.residual_tol);
    return res;
}

} // namespace glab
