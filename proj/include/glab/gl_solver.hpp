#pragma once
// Single-field solver:  -lap u = (1/eps^2) u (1 - |u|^2)  with Dirichlet data
// of winding number zero, solved as the gradient flow of
//
//   G_eps(u) = (1/2) int |grad u|^2 + (1/(4 eps^2)) int (1 - |u|^2)^2
//
// by the semi-implicit scheme in flow.hpp, started from the harmonic map
// u0 = e^{i phi} unless the caller supplies a warm start (continuation).
// Residuals are max-norm over interior nodes, scaled by (1 + eps^-2) so one
// tolerance is comparable across eps levels.

#include <string>
#include <vector>

#include "glab/boundary.hpp"
#include "glab/errors.hpp"
#include "glab/field.hpp"
#include "glab/flow.hpp"
#include "glab/harmonic.hpp"
#include "glab/operators.hpp"
#include "glab/potentials.hpp"

namespace glab {

struct SolverConfig {
    double epsilon = 0.1;
    double tau = 0.0;           // <= 0: auto-set to the stability bound
    long max_steps = 20000;
    double residual_tol = 1e-8; // on the scaled residual
    bool newton = true;
    bool continuation = true;   // sweep-level warm starting (used by the runner)
};

// the explicit potential term is Lipschitz ~ 2/eps^2, so tau beyond
// 0.25 eps^2 loses the energy-descent guarantee
inline double stable_tau_bound(double epsilon) { return 0.25 * epsilon * epsilon; }

// returns the effective tau; throws ConfigError listing every violation
inline double validate_solver_config(const SolverConfig& c) {
    std::vector<std::string> bad;
    if (!(c.epsilon > 0.0)) bad.push_back("epsilon must be > 0");
    if (!(c.residual_tol > 0.0)) bad.push_back("residual_tol must be > 0");
    if (c.max_steps <= 0) bad.push_back("max_steps must be > 0");
    double bound = stable_tau_bound(c.epsilon);
    if (c.tau > bound * (1.0 + 1e-12))
        bad.push_back("tau exceeds the stability bound 0.25*epsilon^2");
    if (!bad.empty()) throw ConfigError(bad);
    return c.tau > 0.0 ? c.tau : bound;
}

struct GLSolution {
    ComplexField u;
    double epsilon = 0.0;
    double residual = 0.0;      // scaled max-norm of the discrete equation
    long steps_taken = 0;       // accepted flow steps
    long newton_steps = 0;
    double dirichlet = 0.0;     // (1/2) int |grad u|^2
    double potential = 0.0;     // (1/eps^2) int (1 - |u|^2)^2
    double g_energy = 0.0;      // dirichlet + potential / 4
    double max_modulus = 0.0;
    double identity_1_7 = 0.0;  // see identity_1_7_residual
    std::vector<double> energy_trace;   // G_eps after each flow step
    std::vector<double> residual_trace; // scaled residual per step
};

// full energy G_eps; quadrature is the node-area sum
inline double gl_energy(const ComplexField& u, double epsilon) {
    double pot = 0.0;
    for (int i = 0; i < u.size(); ++i) {
        double d = 1.0 - std::norm(u[i]);
        pot += u.grid->area[i] * d * d;
    }
    return dirichlet_energy(u) + pot / (4.0 * epsilon * epsilon);
}

// L2 gradient of G_eps:  -lap u - (1/eps^2) u (1 - |u|^2)  on interior nodes,
// zero on boundary rows (the Dirichlet constraint removes those directions)
inline ComplexField energy_gradient(const ComplexField& u, double epsilon) {
    ComplexField g = laplacian(u);
    double ie2 = 1.0 / (epsilon * epsilon);
    for (int i : u.grid->interior)
        g[i] = -g[i] - ie2 * u[i] * (1.0 - std::norm(u[i]));
    return g;
}

// Max-norm residual of the modulus balance law satisfied by every solution:
//
//   -lap(1 - |u|^2) + (2/eps^2)|u|^2 (1 - |u|^2) - 2|grad u|^2 = 0.
//
// On the graph this is *algebraically* exact: with w = 1 - |u|^2,
//   -(L w)_i = 2 Re(conj(u_i) (L u)_i) + Gamma_i,   Gamma_i = 2 grad_sq_i,
// so the residual equals -2 Re(conj(u) * equation residual) pointwise and is
// bounded by 2 max|u| times the solver residual -- an honest convergence
// diagnostic, not a discretization estimate.
inline double identity_1_7_residual(const ComplexField& u, double epsilon) {
    ScalarField w(u.grid);
    for (int i = 0; i < u.size(); ++i) w[i] = 1.0 - std::norm(u[i]);
    ScalarField lw = laplacian(w);
    ScalarField gs = grad_sq(u);
    double ie2 = 1.0 / (epsilon * epsilon);
    double m = 0.0;
    for (int i : u.grid->interior)
        m = std::max(m, std::abs(-lw[i] + 2.0 * ie2 * std::norm(u[i]) * w[i] - 2.0 * gs[i]));
    return m;
}

namespace detail {

inline GLSolution finish_single(const BoundaryData& bc, ComplexField u,
                                const SolverConfig& cfg, double tau) {
    SingleProblem prob{u.grid, cfg.epsilon, &bc};
    std::vector<ComplexField> U;
    U.push_back(std::move(u));
    FlowOptions fo{tau, cfg.max_steps, cfg.residual_tol, cfg.newton};
    FlowResult fr = relax(prob, U, fo);
    if (!fr.converged)
        throw SolverError("Ginzburg-Landau flow did not reach residual_tol within the step budget",
                          fr.residual_trace);

    GLSolution s;
    s.u = std::move(U[0]);
    s.epsilon = cfg.epsilon;
    s.residual = fr.residual;
    s.steps_taken = fr.steps;
    s.newton_steps = fr.newton_steps;
    s.dirichlet = dirichlet_energy(s.u);
    double pot = 0.0;
    for (int i = 0; i < s.u.size(); ++i) {
        double d = 1.0 - std::norm(s.u[i]);
        pot += s.u.grid->area[i] * d * d;
    }
    s.potential = pot / (cfg.epsilon * cfg.epsilon);
    s.g_energy = s.dirichlet + 0.25 * s.potential;
    s.max_modulus = max_modulus(s.u);
    s.identity_1_7 = identity_1_7_residual(s.u, cfg.epsilon);
    s.energy_trace = std::move(fr.energy_trace);
    s.residual_trace = std::move(fr.residual_trace);
    return s;
}

inline void require_degree_zero(const BoundaryData& bc) {
    if (bc.degree != 0)
        throw DegreeError("hypothesis violated: deg(g) must be 0 (got " +
                              std::to_string(bc.degree) + ")",
                          bc.degree);
}

} // namespace detail

// cold start: initial guess is the harmonic map e^{i phi}
inline GLSolution solve_gl(const BoundaryData& bc, const std::shared_ptr<const Grid>& grid,
                           const SolverConfig& cfg) {
    double tau = validate_solver_config(cfg);
    detail::require_degree_zero(bc);
    if (bc.grid.get() != grid.get()) throw ShapeError("boundary data built for a different grid");
    HarmonicLifting ref = solve_harmonic(bc);
    return detail::finish_single(bc, std::move(ref.u0), cfg, tau);
}

// warm start (continuation): caller supplies the initial field
inline GLSolution solve_gl(const BoundaryData& bc, const ComplexField& init,
                           const SolverConfig& cfg) {
    double tau = validate_solver_config(cfg);
    detail::require_degree_zero(bc);
    if (bc.grid.get() != init.grid.get()) throw ShapeError("initial field lives on a different grid");
    return detail::finish_single(bc, init, cfg, tau);
}

} // namespace glab
