#pragma once
// Problem definitions for the gradient flows: the single-field functional and
// the two-component functionals (symmetric and non-symmetric coupling).
//
// Each problem exposes the potential part of its energy, the pointwise
// potential gradient (the full energy gradient is -laplacian + this), and the
// pointwise Hessian action used by the Newton finisher.  Conventions:
//
//   single:        G(u)   = (1/2)|grad u|^2   + (1/(4 eps^2)) (1-|u|^2)^2
//   symmetric:     F(u,v) = (1/2)(|grad u|^2+|grad v|^2)
//                           + (1/(4 eps^2)) (2-|u|^2-|v|^2)^2
//   non-symmetric: adds (1/(4 eps^2)) (1-|u|^2)^2, which perturbs only the
//                  u-equation
//
// so the Euler-Lagrange systems are
//   -lap u = (1/eps^2) u (1-|u|^2)
//   -lap u = (1/eps^2) u (2-|u|^2-|v|^2) [+ (1/eps^2) u (1-|u|^2)],
//   -lap v = (1/eps^2) v (2-|u|^2-|v|^2)

#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "glab/boundary.hpp"
#include "glab/field.hpp"
#include "glab/operators.hpp"

namespace glab {

enum class PairVariant { Symmetric, NonSymmetric };

struct SingleProblem {
    std::shared_ptr<const Grid> grid;
    double epsilon;
    const BoundaryData* bc; // one component

    static constexpr int ncomp = 1;

    const BoundaryData& boundary(int) const { return *bc; }

    double potential_energy(const std::vector<ComplexField>& U) const {
        const ComplexField& u = U[0];
        double s = 0.0;
        for (int i = 0; i < u.size(); ++i) {
            double d = 1.0 - std::norm(u[i]);
            s += grid->area[i] * d * d;
        }
        return s / (4.0 * epsilon * epsilon);
    }

    void potential_gradient(const std::vector<ComplexField>& U,
                            std::vector<ComplexField>& out) const {
        const ComplexField& u = U[0];
        double ie2 = 1.0 / (epsilon * epsilon);
        for (int i : grid->interior)
            out[0][i] = -ie2 * u[i] * (1.0 - std::norm(u[i]));
    }

    void hessian_apply(const std::vector<ComplexField>& U,
                       const std::vector<ComplexField>& W,
                       std::vector<ComplexField>& out) const {
        const ComplexField& u = U[0];
        const ComplexField& w = W[0];
        double ie2 = 1.0 / (epsilon * epsilon);
        for (int i : grid->interior) {
            double uw = detail::redot(u[i], w[i]);
            out[0][i] = -ie2 * ((1.0 - std::norm(u[i])) * w[i] - 2.0 * uw * u[i]);
        }
    }

    // nonnegative scalar proxy for the pointwise Hessian block, for Jacobi
    double hessian_diag(const std::vector<ComplexField>& U, int comp, int i) const {
        (void)comp;
        double m2 = std::norm(U[0][i]);
        return std::max(0.0, (2.0 * m2 - 1.0)) / (epsilon * epsilon);
    }
};

struct PairProblem {
    std::shared_ptr<const Grid> grid;
    double epsilon;
    PairVariant variant;
    const BoundaryData* bc_u;
    const BoundaryData* bc_v;

    static constexpr int ncomp = 2;

    const BoundaryData& boundary(int c) const { return c == 0 ? *bc_u : *bc_v; }

    double potential_energy(const std::vector<ComplexField>& U) const {
        const ComplexField& u = U[0];
        const ComplexField& v = U[1];
        bool ns = (variant == PairVariant::NonSymmetric);
        double s = 0.0;
        for (int i = 0; i < u.size(); ++i) {
            double S = 2.0 - (std::norm(u[i]) + std::norm(v[i]));
            double val = S * S;
            if (ns) {
                double d = 1.0 - std::norm(u[i]);
                val += d * d;
            }
            s += grid->area[i] * val;
        }
        return s / (4.0 * epsilon * epsilon);
    }

    void potential_gradient(const std::vector<ComplexField>& U,
                            std::vector<ComplexField>& out) const {
        const ComplexField& u = U[0];
        const ComplexField& v = U[1];
        bool ns = (variant == PairVariant::NonSymmetric);
        double ie2 = 1.0 / (epsilon * epsilon);
        for (int i : grid->interior) {
            double S = 2.0 - (std::norm(u[i]) + std::norm(v[i]));
            out[0][i] = -ie2 * u[i] * S;
            if (ns) out[0][i] -= ie2 * u[i] * (1.0 - std::norm(u[i]));
            out[1][i] = -ie2 * v[i] * S;
        }
    }

    void hessian_apply(const std::vector<ComplexField>& U,
                       const std::vector<ComplexField>& W,
                       std::vector<ComplexField>& out) const {
        const ComplexField& u = U[0];
        const ComplexField& v = U[1];
        const ComplexField& wu = W[0];
        const ComplexField& wv = W[1];
        bool ns = (variant == PairVariant::NonSymmetric);
        double ie2 = 1.0 / (epsilon * epsilon);
        for (int i : grid->interior) {
            double S = 2.0 - (std::norm(u[i]) + std::norm(v[i]));
            double dS = detail::redot(u[i], wu[i]) + detail::redot(v[i], wv[i]);
            out[0][i] = -ie2 * (S * wu[i] - 2.0 * dS * u[i]);
            out[1][i] = -ie2 * (S * wv[i] - 2.0 * dS * v[i]);
            if (ns) {
                double uw = detail::redot(u[i], wu[i]);
                out[0][i] -= ie2 * ((1.0 - std::norm(u[i])) * wu[i] - 2.0 * uw * u[i]);
            }
        }
    }

    double hessian_diag(const std::vector<ComplexField>& U, int comp, int i) const {
        double mu = std::norm(U[0][i]), mv = std::norm(U[1][i]);
        double S = 2.0 - (mu + mv);
        double ie2 = 1.0 / (epsilon * epsilon);
        double d = (comp == 0) ? (2.0 * mu - S) : (2.0 * mv - S);
        if (comp == 0 && variant == PairVariant::NonSymmetric)
            d += std::max(0.0, 2.0 * mu - (1.0 - mu));
        return std::max(0.0, d) * ie2;
    }
};

} // namespace glab
