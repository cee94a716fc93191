#pragma once
// Matrix-free preconditioned conjugate gradients for SPD graph operators with
// Dirichlet-pinned boundary rows.  The canonical operator here is the
// area-weighted shifted Laplacian
//
//   (A x)_i = sigma * a_i * x_i + tau * sum_{e at i} w_e (x_i - x_j)
//
// restricted to interior nodes (boundary entries of x are data, not unknowns).
// sigma = 0, tau = 1 is the harmonic solve; sigma = 1, tau = dt is one
// semi-implicit flow step.  Works for real and complex fields alike -- the
// operator is real, so the real part of the Hermitian inner product is the
// right pairing and CG runs unchanged.

#include <cmath>
#include <functional>
#include <vector>

#include "glab/field.hpp"
#include "glab/operators.hpp"

namespace glab {

struct CGReport {
    int iters = 0;
    double resmax = 0.0; // max-norm of the final (area-weighted) residual / a_i
    bool converged = false;
};

// generic PCG; `apply` must fill interior rows of out (boundary rows ignored),
// `diag` is a positive preconditioner diagonal per node.  Dom is anything with
// .n(), .interior and .area -- a Grid, or a stacked multi-component view.
template <class T, class Dom, class Apply>
CGReport pcg(const Dom& g, Apply&& apply, const std::vector<double>& diag,
             const std::vector<T>& rhs, std::vector<T>& x,
             double tol_resmax_over_area, int max_iters) {
    const auto& interior = g.interior;
    std::vector<T> r(g.n(), T{}), z(g.n(), T{}), p(g.n(), T{}), Ap(g.n(), T{});

    auto resmax = [&]() {
        double m = 0.0;
        for (int i : interior) m = std::max(m, std::abs(r[i]) / g.area[i]);
        return m;
    };

    apply(x, Ap);
    for (int i : interior) r[i] = rhs[i] - Ap[i];

    CGReport rep;
    rep.resmax = resmax();
    if (rep.resmax <= tol_resmax_over_area) { rep.converged = true; return rep; }

    double rz = 0.0;
    for (int i : interior) {
        z[i] = r[i] / diag[i];
        rz += detail::redot(r[i], z[i]);
    }
    p = z;

    for (int it = 1; it <= max_iters; ++it) {
        apply(p, Ap);
        double pAp = 0.0;
        for (int i : interior) pAp += detail::redot(p[i], Ap[i]);
        if (pAp <= 0.0) break; // loss of definiteness; bail with best iterate
        double alpha = rz / pAp;
        for (int i : interior) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
        }
        rep.iters = it;
        rep.resmax = resmax();
        if (rep.resmax <= tol_resmax_over_area) { rep.converged = true; return rep; }
        double rz_new = 0.0;
        for (int i : interior) {
            z[i] = r[i] / diag[i];
            rz_new += detail::redot(r[i], z[i]);
        }
        double beta = rz_new / rz;
        rz = rz_new;
        for (int i : interior) p[i] = z[i] + beta * p[i];
    }
    return rep;
}

// apply functor for the shifted Laplacian above (interior rows only)
template <class T>
struct ShiftedLaplacian {
    const Grid& g;
    double sigma, tau;
    void operator()(const std::vector<T>& x, std::vector<T>& out) const {
        std::fill(out.begin(), out.end(), T{});
        for (const Edge& e : g.edges) {
            T d = x[e.a] - x[e.b];
            out[e.a] += e.w * d;
            out[e.b] -= e.w * d;
        }
        for (int i = 0; i < g.n(); ++i) {
            if (g.is_interior[i]) out[i] = sigma * g.area[i] * x[i] + tau * out[i];
            else out[i] = T{};
        }
    }
    std::vector<double> diagonal() const {
        std::vector<double> d(g.n(), 1.0);
        for (int i = 0; i < g.n(); ++i)
            if (g.is_interior[i]) d[i] = sigma * g.area[i] + tau * g.wdeg[i];
        return d;
    }
};

} // namespace glab
