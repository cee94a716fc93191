#pragma once
// Two-component systems: coupled gradient flow on
//
//   F_eps(u, v) = (1/2) int (|grad u|^2 + |grad v|^2) + (1/(4 eps^2)) int V
//
// with V = (2 - |u|^2 - |v|^2)^2 (symmetric) or that plus (1 - |u|^2)^2
// (non-symmetric; the extra term perturbs only the u-equation).  The flow
// kernel is shared with the single-field solver; the component Laplacian
// solves within a step are independent because the coupling enters only
// through the explicit potential term.

#include <string>
#include <utility>
#include <vector>

#include "glab/boundary.hpp"
#include "glab/errors.hpp"
#include "glab/field.hpp"
#include "glab/flow.hpp"
#include "glab/gl_solver.hpp"
#include "glab/harmonic.hpp"
#include "glab/operators.hpp"
#include "glab/potentials.hpp"

namespace glab {

struct PairSolution {
    ComplexField u, v;
    double epsilon = 0.0;
    PairVariant variant = PairVariant::Symmetric;
    double residual_u = 0.0, residual_v = 0.0; // scaled per-equation max-norms
    long steps_taken = 0;
    long newton_steps = 0;
    double dirichlet_u = 0.0, dirichlet_v = 0.0; // (1/2) int |grad .|^2
    double potential_combined = 0.0;             // (1/eps^2) int (2-|u|^2-|v|^2)^2
    double potential_u = 0.0, potential_v = 0.0; // (1/eps^2) int (1-|.|^2)^2
    double f_energy = 0.0;
    double max_modulus_u = 0.0, max_modulus_v = 0.0;
    double max_sumsq = 0.0; // max node |u|^2 + |v|^2
    double identity_1_7 = 0.0;
    std::vector<double> energy_trace;   // F_eps after each flow step
    std::vector<double> residual_trace; // scaled combined residual per step
};

inline double pair_energy(const ComplexField& u, const ComplexField& v, double epsilon,
                          PairVariant variant) {
    require_same_grid(u, v);
    bool ns = (variant == PairVariant::NonSymmetric);
    double pot = 0.0;
    for (int i = 0; i < u.size(); ++i) {
        double S = 2.0 - (std::norm(u[i]) + std::norm(v[i]));
        double val = S * S;
        if (ns) {
            double d = 1.0 - std::norm(u[i]);
            val += d * d;
        }
        pot += u.grid->area[i] * val;
    }
    return dirichlet_energy(u) + dirichlet_energy(v) + pot / (4.0 * epsilon * epsilon);
}

// componentwise L2 gradient of F_eps, zero on boundary rows
inline std::pair<ComplexField, ComplexField> pair_gradient(const ComplexField& u,
                                                           const ComplexField& v,
                                                           double epsilon,
                                                           PairVariant variant) {
    require_same_grid(u, v);
    bool ns = (variant == PairVariant::NonSymmetric);
    double ie2 = 1.0 / (epsilon * epsilon);
    ComplexField gu = laplacian(u);
    ComplexField gv = laplacian(v);
    for (int i : u.grid->interior) {
        double S = 2.0 - (std::norm(u[i]) + std::norm(v[i]));
        cplx pu = -ie2 * u[i] * S;
        if (ns) pu -= ie2 * u[i] * (1.0 - std::norm(u[i]));
        gu[i] = -gu[i] + pu;
        gv[i] = -gv[i] - ie2 * v[i] * S;
    }
    return {std::move(gu), std::move(gv)};
}

// Max-norm residual of the per-component modulus balance laws (the pair
// analogue of identity_1_7_residual): for a component m with equation
// -lap m = (1/eps^2) m f,
//
//   -lap(1 - |m|^2) + (2/eps^2)|m|^2 f - 2|grad m|^2 = 0,
//
// exact on the graph up to 2|m| times the equation residual.
inline double pair_identity_residual(const ComplexField& u, const ComplexField& v,
                                     double epsilon, PairVariant variant) {
    require_same_grid(u, v);
    bool ns = (variant == PairVariant::NonSymmetric);
    double ie2 = 1.0 / (epsilon * epsilon);
    ScalarField wu(u.grid), wv(u.grid);
    for (int i = 0; i < u.size(); ++i) {
        wu[i] = 1.0 - std::norm(u[i]);
        wv[i] = 1.0 - std::norm(v[i]);
    }
    ScalarField lwu = laplacian(wu), lwv = laplacian(wv);
    ScalarField gsu = grad_sq(u), gsv = grad_sq(v);
    double m = 0.0;
    for (int i : u.grid->interior) {
        double S = 2.0 - (std::norm(u[i]) + std::norm(v[i]));
        double fu = S + (ns ? (1.0 - std::norm(u[i])) : 0.0);
        m = std::max(m, std::abs(-lwu[i] + 2.0 * ie2 * std::norm(u[i]) * fu - 2.0 * gsu[i]));
        m = std::max(m, std::abs(-lwv[i] + 2.0 * ie2 * std::norm(v[i]) * S - 2.0 * gsv[i]));
    }
    return m;
}

namespace detail {

// The coupled potential is stiffer than the single-field one: near the well
// the stacked Hessian of (1/4eps^2) S^2 reaches 4/eps^2 (6/eps^2 with the
// non-symmetric extra term), against 2/eps^2 for the single field.  The
// energy-descent guarantee needs tau <= 1/L, so the pair default is eps^2/8
// rather than the single-field eps^2/4.
inline double pair_default_tau(double epsilon) { return 0.125 * epsilon * epsilon; }

inline PairSolution finish_pair(const BoundaryData& bc1, const BoundaryData& bc2,
                                PairVariant variant, ComplexField u, ComplexField v,
                                const SolverConfig& cfg, double tau) {
    PairProblem prob{u.grid, cfg.epsilon, variant, &bc1, &bc2};
    std::vector<ComplexField> U;
    U.push_back(std::move(u));
    U.push_back(std::move(v));
    FlowOptions fo{tau, cfg.max_steps, cfg.residual_tol, cfg.newton};
    FlowResult fr = relax(prob, U, fo);
    if (!fr.converged)
        throw SolverError("two-component flow did not reach residual_tol within the step budget",
                          fr.residual_trace);

    PairSolution s;
    s.u = std::move(U[0]);
    s.v = std::move(U[1]);
    s.epsilon = cfg.epsilon;
    s.variant = variant;
    s.steps_taken = fr.steps;
    s.newton_steps = fr.newton_steps;

    auto [gu, gv] = pair_gradient(s.u, s.v, cfg.epsilon, variant);
    double scale = 1.0 + 1.0 / (cfg.epsilon * cfg.epsilon);
    for (int i : s.u.grid->interior) {
        s.residual_u = std::max(s.residual_u, std::abs(gu[i]));
        s.residual_v = std::max(s.residual_v, std::abs(gv[i]));
    }
    s.residual_u /= scale;
    s.residual_v /= scale;

    s.dirichlet_u = dirichlet_energy(s.u);
    s.dirichlet_v = dirichlet_energy(s.v);
    double ie2 = 1.0 / (cfg.epsilon * cfg.epsilon);
    double pc = 0.0, pu = 0.0, pv = 0.0;
    for (int i = 0; i < s.u.size(); ++i) {
        double a = s.u.grid->area[i];
        double S = 2.0 - (std::norm(s.u[i]) + std::norm(s.v[i]));
        double du = 1.0 - std::norm(s.u[i]);
        double dv = 1.0 - std::norm(s.v[i]);
        pc += a * S * S;
        pu += a * du * du;
        pv += a * dv * dv;
    }
    s.potential_combined = pc * ie2;
    s.potential_u = pu * ie2;
    s.potential_v = pv * ie2;
    s.f_energy = pair_energy(s.u, s.v, cfg.epsilon, variant);
    s.max_modulus_u = max_modulus(s.u);
    s.max_modulus_v = max_modulus(s.v);
    for (int i = 0; i < s.u.size(); ++i)
        s.max_sumsq = std::max(s.max_sumsq, std::norm(s.u[i]) + std::norm(s.v[i]));
    s.identity_1_7 = pair_identity_residual(s.u, s.v, cfg.epsilon, variant);
    s.energy_trace = std::move(fr.energy_trace);
    s.residual_trace = std::move(fr.residual_trace);
    return s;
}

} // namespace detail

// cold start from the harmonic liftings (u0, v0)
inline PairSolution solve_pair(const BoundaryData& bc1, const BoundaryData& bc2,
                               const std::shared_ptr<const Grid>& grid,
                               const SolverConfig& cfg, PairVariant variant) {
    double tau = validate_solver_config(cfg);
    if (cfg.tau <= 0.0) tau = detail::pair_default_tau(cfg.epsilon);
    detail::require_degree_zero(bc1);
    detail::require_degree_zero(bc2);
    if (bc1.grid.get() != grid.get() || bc2.grid.get() != grid.get())
        throw ShapeError("boundary data built for a different grid");
    HarmonicLifting a = solve_harmonic(bc1);
    HarmonicLifting b = solve_harmonic(bc2);
    return detail::finish_pair(bc1, bc2, variant, std::move(a.u0), std::move(b.u0), cfg, tau);
}

// warm start (continuation)
inline PairSolution solve_pair(const BoundaryData& bc1, const BoundaryData& bc2,
                               const ComplexField& init_u, const ComplexField& init_v,
                               const SolverConfig& cfg, PairVariant variant) {
    double tau = validate_solver_config(cfg);
    if (cfg.tau <= 0.0) tau = detail::pair_default_tau(cfg.epsilon);
    detail::require_degree_zero(bc1);
    detail::require_degree_zero(bc2);
    require_same_grid(init_u, init_v);
    if (bc1.grid.get() != init_u.grid.get() || bc2.grid.get() != init_u.grid.get())
        throw ShapeError("initial fields live on a different grid");
    return detail::finish_pair(bc1, bc2, variant, init_u, init_v, cfg, tau);
}

} // namespace glab
