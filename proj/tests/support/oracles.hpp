#pragma once
// Independent oracles used only by the test suites. These deliberately avoid
// the library's own solvers: different algorithm, same answer.

#include <cmath>
#include <complex>
#include <vector>

#include "glab/field.hpp"
#include "glab/grid.hpp"
#include "glab/harmonic.hpp"
#include "glab/operators.hpp"

namespace oracles {

using glab::cplx;

// Gauss-Seidel coordinate descent for the constrained pair energy: every node
// update is the exact minimizer of I over that node's values subject to
// |u_i|^2 + |v_i|^2 = 2 (align (u_i, v_i) with the weighted neighbour sums).
struct BetaDescentResult {
    double value;
    int sweeps;
};

inline BetaDescentResult beta_coordinate_descent(const glab::HarmonicLifting& a,
                                                 const glab::HarmonicLifting& b,
                                                 int max_sweeps = 50000,
                                                 double tol = 1e-13) {
    const glab::Grid& g = *a.phi.grid;
    glab::ComplexField u = a.u0, v = b.u0;

    double I = glab::dirichlet_energy(u) + glab::dirichlet_energy(v);
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        for (int i : g.interior) {
            cplx su = 0.0, sv = 0.0;
            for (int k = g.adj_off[i]; k < g.adj_off[i + 1]; ++k) {
                su += g.adj_w[k] * u[g.adj_node[k]];
                sv += g.adj_w[k] * v[g.adj_node[k]];
            }
            double nrm = std::sqrt(std::norm(su) + std::norm(sv));
            if (nrm > 1e-300) {
                double s = std::sqrt(2.0) / nrm;
                u[i] = s * su;
                v[i] = s * sv;
            }
        }
        double In = glab::dirichlet_energy(u) + glab::dirichlet_energy(v);
        bool done = std::abs(I - In) < tol * (1.0 + std::abs(In));
        I = In;
        if (done) break;
    }
    return {I, sweep};
}

// ---------------------------------------------------------------------------
// Direct minimization of the Ginzburg-Landau functionals by Polak-Ribiere
// nonlinear CG with Armijo backtracking.  Energy and gradient are assembled
// straight from the grid's edges and areas -- none of the library's operator
// or flow code is involved -- so agreement with the flow solver is a real
// cross-check, not a tautology.

enum class Functional { Single, PairSymmetric, PairNonSymmetric };

inline int functional_ncomp(Functional f) { return f == Functional::Single ? 1 : 2; }

inline double direct_energy(const glab::Grid& g, const std::vector<std::vector<cplx>>& X,
                            double eps, Functional f) {
    double e = 0.0;
    for (const auto& x : X)
        for (const glab::Edge& ed : g.edges)
            e += 0.5 * ed.w * std::norm(x[ed.a] - x[ed.b]);
    double q = 1.0 / (4.0 * eps * eps);
    for (int i = 0; i < g.n(); ++i) {
        double val = 0.0;
        if (f == Functional::Single) {
            double d = 1.0 - std::norm(X[0][i]);
            val = d * d;
        } else {
            double S = 2.0 - std::norm(X[0][i]) - std::norm(X[1][i]);
            val = S * S;
            if (f == Functional::PairNonSymmetric) {
                double d = 1.0 - std::norm(X[0][i]);
                val += d * d;
            }
        }
        e += q * g.area[i] * val;
    }
    return e;
}

// Euclidean gradient with respect to the raw interior coordinates
inline void direct_gradient(const glab::Grid& g, const std::vector<std::vector<cplx>>& X,
                            double eps, Functional f, std::vector<std::vector<cplx>>& G) {
    double ie2 = 1.0 / (eps * eps);
    for (size_t c = 0; c < X.size(); ++c) {
        std::fill(G[c].begin(), G[c].end(), cplx{});
        for (const glab::Edge& ed : g.edges) {
            cplx d = X[c][ed.a] - X[c][ed.b];
            G[c][ed.a] += ed.w * d;
            G[c][ed.b] -= ed.w * d;
        }
    }
    for (int i = 0; i < g.n(); ++i) {
        if (f == Functional::Single) {
            G[0][i] -= g.area[i] * ie2 * X[0][i] * (1.0 - std::norm(X[0][i]));
        } else {
            double S = 2.0 - std::norm(X[0][i]) - std::norm(X[1][i]);
            G[0][i] -= g.area[i] * ie2 * X[0][i] * S;
            G[1][i] -= g.area[i] * ie2 * X[1][i] * S;
            if (f == Functional::PairNonSymmetric)
                G[0][i] -= g.area[i] * ie2 * X[0][i] * (1.0 - std::norm(X[0][i]));
        }
    }
    for (size_t c = 0; c < X.size(); ++c)
        for (int i = 0; i < g.n(); ++i)
            if (!g.is_interior[i]) G[c][i] = cplx{};
}

struct DirectMinResult {
    std::vector<glab::ComplexField> fields;
    double energy = 0.0;
    int iters = 0;
};

// initial fields must carry the boundary data; only interior values move
inline DirectMinResult nlcg_minimize(const std::vector<glab::ComplexField>& init, double eps,
                                     Functional f, int max_iters = 50000,
                                     double rel_decrease_tol = 1e-13) {
    const glab::Grid& g = *init[0].grid;
    const int nc = functional_ncomp(f);
    std::vector<std::vector<cplx>> X(nc), G(nc, std::vector<cplx>(g.n())),
        Gp(nc, std::vector<cplx>(g.n())), D(nc, std::vector<cplx>(g.n())),
        T(nc, std::vector<cplx>(g.n()));
    for (int c = 0; c < nc; ++c) X[c] = init[c].v;

    auto dot = [&](const std::vector<std::vector<cplx>>& A,
                   const std::vector<std::vector<cplx>>& B) {
        double s = 0.0;
        for (int c = 0; c < nc; ++c)
            for (int i : g.interior)
                s += A[c][i].real() * B[c][i].real() + A[c][i].imag() * B[c][i].imag();
        return s;
    };

    double E = direct_energy(g, X, eps, f);
    direct_gradient(g, X, eps, f, G);
    for (int c = 0; c < nc; ++c)
        for (int i = 0; i < g.n(); ++i) D[c][i] = -G[c][i];
    double gg = dot(G, G);
    double step = 1.0;
    int it = 0;
    int since_progress = 0;

    for (; it < max_iters && gg > 0.0; ++it) {
        double gd = dot(G, D);
        if (gd >= 0.0) { // not a descent direction; restart on steepest descent
            for (int c = 0; c < nc; ++c)
                for (int i = 0; i < g.n(); ++i) D[c][i] = -G[c][i];
            gd = -gg;
        }
        double t = step;
        double Et = E;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (int c = 0; c < nc; ++c) {
                T[c] = X[c];
                for (int i : g.interior) T[c][i] += t * D[c][i];
            }
            Et = direct_energy(g, T, eps, f);
            if (Et <= E + 1e-4 * t * gd) { accepted = true; break; }
            t *= 0.5;
        }
        if (!accepted) break;
        for (int c = 0; c < nc; ++c) X[c].swap(T[c]);
        step = std::min(t * 2.0, 1e6);
        double drop = E - Et;
        E = Et;
        Gp.swap(G);
        direct_gradient(g, X, eps, f, G);
        double gg_new = dot(G, G);
        double gy = gg_new - dot(G, Gp); // Polak-Ribiere numerator
        double beta = std::max(0.0, gy / gg);
        gg = gg_new;
        for (int c = 0; c < nc; ++c)
            for (int i : g.interior) D[c][i] = -G[c][i] + beta * D[c][i];
        since_progress = (drop <= rel_decrease_tol * (1.0 + std::abs(E))) ? since_progress + 1 : 0;
        if (since_progress >= 25) break;
    }

    DirectMinResult out;
    out.energy = E;
    out.iters = it;
    for (int c = 0; c < nc; ++c) {
        glab::ComplexField fld(init[c].grid);
        fld.v = std::move(X[c]);
        out.fields.push_back(std::move(fld));
    }
    return out;
}

} // namespace oracles
