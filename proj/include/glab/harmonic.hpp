#pragma once
// Harmonic phase extension and the reference map u0 = e^{i phi}.
//
// For degree-zero boundary data the energy-minimizing S^1-valued map with
// that trace is e^{i phi} where phi solves the Dirichlet problem for the
// Laplacian with the lifted boundary phase, and its Dirichlet energy equals
// the scalar energy of phi.  That energy is the reference constant every
// sweep verdict is measured against.

#include <cmath>
#include <memory>

#include "glab/boundary.hpp"
#include "glab/cg.hpp"
#include "glab/errors.hpp"
#include "glab/field.hpp"
#include "glab/operators.hpp"

namespace glab {

struct HarmonicLifting {
    ScalarField phi;   // harmonic extension of the boundary phase
    ComplexField u0;   // e^{i phi}; boundary rows are the exact boundary samples
    double energy = 0; // (1/2) integral |grad phi|^2
    int cg_iters = 0;
};

struct HarmonicOptions {
    double tol = 1e-10; // max-norm of the discrete Laplacian residual
    int max_iters = 200000;
};

inline HarmonicLifting solve_harmonic(const BoundaryData& bc,
                                      HarmonicOptions opts = {}) {
    if (!bc.has_lifting())
        throw DegreeError("harmonic lifting requires degree-zero data, got deg(g) = " +
                          std::to_string(bc.degree), bc.degree);
    const auto& grid = bc.grid;
    const Grid& g = *grid;

    HarmonicLifting out;
    out.phi = ScalarField(grid, 0.0);

    // boundary trace + flat interior start at the mean phase
    double mean = 0.0;
    for (double p : bc.lifting) mean += p;
    mean /= bc.lifting.size();
    for (int i : g.interior) out.phi[i] = mean;
    for (int k = 0; k < g.n_boundary(); ++k) out.phi[g.boundary[k]] = bc.lifting[k];

    ShiftedLaplacian<double> A{g, 0.0, 1.0};
    std::vector<double> rhs(g.n(), 0.0);
    auto diag = A.diagonal();
    auto rep = pcg(g, A, diag, rhs, out.phi.v, opts.tol, opts.max_iters);
    if (!rep.converged)
        throw SolverError("harmonic solve stalled at residual " +
                          std::to_string(rep.resmax), {rep.resmax});
    out.cg_iters = rep.iters;

    out.energy = dirichlet_energy(out.phi);
    out.u0 = ComplexField(grid);
    for (int i = 0; i < g.n(); ++i) out.u0[i] = std::polar(1.0, out.phi[i]);
    // boundary rows must equal the data bit-for-bit (table data is normalized,
    // not re-exponentiated, so go through the samples)
    for (int k = 0; k < g.n_boundary(); ++k) out.u0[g.boundary[k]] = bc.samples[k];
    return out;
}

// alpha(g1, g2): infimum of the decoupled pair energy over unit-modulus pairs,
// attained at (u0, v0); so it is just the sum of the two harmonic energies
inline double alpha_value(const HarmonicLifting& a, const HarmonicLifting& b) {
    if (a.phi.grid.get() != b.phi.grid.get())
        throw ShapeError("alpha_value needs both liftings on one grid");
    return a.energy + b.energy;
}

} // namespace glab
