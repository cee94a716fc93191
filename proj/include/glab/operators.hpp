#pragma once
// Discrete operators over the grid edge list: Laplacian, quadrature, Dirichlet
// form / energy, pointwise gradient-square density, and the H1 distance.
//
// All of them are different contractions of the same weighted edge set, which
// buys two exact identities used heavily by the diagnostics:
//   integrate(v * laplacian(u)) == -grad_form(u, v)   for v = 0 on boundary
//   integrate(grad_sq(u))       ==  grad_form(u, u)
// (exact up to floating-point roundoff, independent of h).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "glab/field.hpp"

namespace glab {

namespace detail {
template <class T> inline double abs2(T v) { return v * v; }
inline double abs2(cplx v) { return std::norm(v); }
template <class T> inline double redot(T a, T b) { return a * b; }
inline double redot(cplx a, cplx b) { return a.real() * b.real() + a.imag() * b.imag(); }
} // namespace detail

// graph Laplacian; interior rows only, boundary rows are set to zero
template <class T>
Field<T> laplacian(const Field<T>& u) {
    const Grid& g = *u.grid;
    Field<T> out(u.grid, T{});
    for (const Edge& e : g.edges) {
        T d = u.v[e.b] - u.v[e.a];
        out.v[e.a] += e.w * d;
        out.v[e.b] -= e.w * d;
    }
    for (int i = 0; i < g.n(); ++i) {
        if (g.is_interior[i]) out.v[i] /= g.area[i];
        else out.v[i] = T{};
    }
    return out;
}

// lumped quadrature: sum_i a_i f_i
inline double integrate(const ScalarField& f) {
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += f.grid->area[i] * f.v[i];
    return s;
}

// Dirichlet form <grad u, grad v> = sum_e w_e (du)(dv); real part for complex
template <class T>
double grad_form(const Field<T>& u, const Field<T>& w) {
    require_same_grid(u, w);
    double s = 0.0;
    for (const Edge& e : u.grid->edges)
        s += e.w * detail::redot(u.v[e.b] - u.v[e.a], w.v[e.b] - w.v[e.a]);
    return s;
}

// (1/2) integral |grad u|^2
template <class T>
double dirichlet_energy(const Field<T>& u) {
    double s = 0.0;
    for (const Edge& e : u.grid->edges) s += e.w * detail::abs2(u.v[e.b] - u.v[e.a]);
    return 0.5 * s;
}

// pointwise |grad u|^2 density, consistent with the edge form:
// integrate(grad_sq(u)) == 2 * dirichlet_energy(u) exactly
template <class T>
ScalarField grad_sq(const Field<T>& u) {
    ScalarField out(u.grid, 0.0);
    for (const Edge& e : u.grid->edges) {
        double s = e.w * detail::abs2(u.v[e.b] - u.v[e.a]);
        out.v[e.a] += 0.5 * s;
        out.v[e.b] += 0.5 * s;
    }
    for (int i = 0; i < out.size(); ++i) out.v[i] /= u.grid->area[i];
    return out;
}

// || u - w ||_{H1} = sqrt( integral |u-w|^2 + integral |grad(u-w)|^2 )
template <class T>
double h1_distance(const Field<T>& u, const Field<T>& w) {
    require_same_grid(u, w);
    const Grid& g = *u.grid;
    double l2 = 0.0;
    for (int i = 0; i < g.n(); ++i) l2 += g.area[i] * detail::abs2(u.v[i] - w.v[i]);
    double gr = 0.0;
    for (const Edge& e : g.edges)
        gr += e.w * detail::abs2((u.v[e.b] - u.v[e.a]) - (w.v[e.b] - w.v[e.a]));
    return std::sqrt(l2 + gr);
}

// max over all nodes of |1 - |u||
inline double sup_deviation(const ComplexField& u) {
    double m = 0.0;
    for (const cplx& z : u.v) m = std::max(m, std::abs(1.0 - std::abs(z)));
    return m;
}

inline double max_modulus(const ComplexField& u) {
    double m = 0.0;
    for (const cplx& z : u.v) m = std::max(m, std::abs(z));
    return m;
}

inline double min_modulus(const ComplexField& u) {
    double m = std::numeric_limits<double>::infinity();
    for (const cplx& z : u.v) m = std::min(m, std::abs(z));
    return m;
}

// area of the sublevel set { 1 - |u|^2 > delta }
inline double deviation_set_area(const ComplexField& u, double delta) {
    double s = 0.0;
    for (int i = 0; i < u.size(); ++i)
        if (1.0 - std::norm(u.v[i]) > delta) s += u.grid->area[i];
    return s;
}

} // namespace glab
