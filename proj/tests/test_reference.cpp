// Harmonic reference maps, alpha, and the constrained infimum beta.

#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "glab/constrained_pair.hpp"
#include "glab/harmonic.hpp"
#include "support/oracles.hpp"

using namespace glab;
using Catch::Approx;

namespace {
constexpr double pi = std::numbers::pi;

BoundaryData cos_data(const std::shared_ptr<const Grid>& g, double delta, int m = 1) {
    BoundarySpec s;
    s.type = BoundarySpec::Type::Cos;
    s.amplitude = delta;
    s.mode = m;
    return make_boundary(g, s);
}

BoundaryData const_data(const std::shared_ptr<const Grid>& g, double phase = 0.0) {
    BoundarySpec s;
    s.type = BoundarySpec::Type::Constant;
    s.amplitude = phase;
    return make_boundary(g, s);
}

BoundaryData sin_data(const std::shared_ptr<const Grid>& g, double delta, int k = 1) {
    BoundarySpec s;
    s.type = BoundarySpec::Type::SinArclength;
    s.amplitude = delta;
    s.mode = k;
    return make_boundary(g, s);
}
} // namespace

TEST_CASE("constant data extends to a constant phase", "[harmonic]") {
    auto g = build_grid(GridKind::UnitDisk, 12);
    auto h = solve_harmonic(const_data(g, 0.3));
    for (int i = 0; i < g->n(); ++i) CHECK(h.phi[i] == Approx(0.3).margin(1e-9));
    CHECK(h.energy <= 1e-12);
}

TEST_CASE("linear boundary phase extends to the linear function", "[harmonic]") {
    auto g = build_grid(GridKind::UnitSquare, 16);
    std::vector<cplx> s(g->n_boundary());
    for (int k = 0; k < g->n_boundary(); ++k)
        s[k] = std::polar(1.0, g->x[g->boundary[k]]);
    auto h = solve_harmonic(boundary_from_samples(g, s, "phi=x", true));
    for (int i : g->interior) CHECK(h.phi[i] == Approx(g->x[i]).margin(1e-8));
    CHECK(h.energy == Approx(0.5).epsilon(0.01));
}

TEST_CASE("disk cosine data: energy, exactness, refinement order", "[harmonic]") {
    // exact solution of the continuum problem: phi = delta * r * cos(theta)
    double err[2], hh[2];
    int idx = 0;
    for (int n : {16, 32}) {
        auto g = build_grid(GridKind::UnitDisk, n);
        auto h = solve_harmonic(cos_data(g, 0.5));
        double e = 0.0;
        for (int i : g->interior) e = std::max(e, std::abs(h.phi[i] - 0.5 * g->x[i]));
        err[idx] = e;
        hh[idx] = g->h();
        ++idx;
        CHECK(h.energy == Approx(pi / 8.0).epsilon(0.02));
        // |u0| = 1 to near machine precision; energies agree through u0
        for (const cplx& z : h.u0.v) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-12);
        CHECK(dirichlet_energy(h.u0) == Approx(h.energy).epsilon(0.01));
    }
    double rate = std::log(err[0] / err[1]) / std::log(hh[0] / hh[1]);
    INFO("harmonic max-norm errors " << err[0] << ", " << err[1] << " rate " << rate);
    CHECK(rate >= 1.8);
}

TEST_CASE("nonzero degree blocks the harmonic lifting", "[harmonic]") {
    auto g = build_grid(GridKind::UnitDisk, 12);
    auto b = boundary_from_samples(g, winding_samples(*g, 1), "deg1", true);
    CHECK_THROWS_AS(solve_harmonic(b), DegreeError);
}

TEST_CASE("alpha is the sum of the component energies", "[alpha]") {
    auto g = build_grid(GridKind::UnitDisk, 16);
    auto ha = solve_harmonic(cos_data(g, 0.5));
    auto hb = solve_harmonic(cos_data(g, 0.5));
    // two identical cos(theta) components: alpha ~ 2 * pi/8
    CHECK(alpha_value(ha, hb) == Approx(2.0 * pi / 8.0).epsilon(0.02));

    auto g2 = build_grid(GridKind::UnitDisk, 16);
    auto hc = solve_harmonic(cos_data(g2, 0.5));
    CHECK_THROWS_AS(alpha_value(ha, hc), ShapeError);
}

TEST_CASE("beta: constants give zero and an immediate stop", "[beta]") {
    auto g = build_grid(GridKind::UnitSquare, 8);
    auto ha = solve_harmonic(const_data(g));
    auto hb = solve_harmonic(const_data(g, 1.1));
    auto cp = minimize_beta(ha, hb);
    CHECK(cp.beta_value <= 1e-12);
    CHECK(cp.constraint_violation <= 1e-8);
}

TEST_CASE("beta descent is monotone and never exceeds alpha", "[beta]") {
    auto g = build_grid(GridKind::UnitDisk, 12);
    struct Pair { BoundaryData a, b; };
    std::vector<Pair> pairs = {
        {cos_data(g, 0.5), const_data(g)},
        {cos_data(g, 0.5), cos_data(g, 0.5)},
        {cos_data(g, 0.4), sin_data(g, 0.4)},
        {sin_data(g, 0.3, 2), cos_data(g, 0.2, 2)},
        {cos_data(g, 0.5, 2), cos_data(g, 0.3)},
    };
    for (const auto& p : pairs) {
        auto ha = solve_harmonic(p.a);
        auto hb = solve_harmonic(p.b);
        double alpha = alpha_value(ha, hb);
        auto cp = minimize_beta(ha, hb);
        INFO(p.a.label << " amp, " << p.b.label << ": alpha=" << alpha
                       << " beta=" << cp.beta_value);
        CHECK(cp.beta_value <= alpha + 1e-6);
        CHECK(cp.constraint_violation <= 1e-8);
        for (size_t k = 1; k < cp.energy_trace.size(); ++k)
            CHECK(cp.energy_trace[k] <=
                  cp.energy_trace[k - 1] + 1e-12 * (1.0 + std::abs(cp.energy_trace[k - 1])));
    }
}

TEST_CASE("identical components pin beta to alpha", "[beta]") {
    auto g = build_grid(GridKind::UnitDisk, 12);
    auto ha = solve_harmonic(cos_data(g, 0.5));
    auto hb = solve_harmonic(cos_data(g, 0.5));
    double alpha = alpha_value(ha, hb);
    auto cp = minimize_beta(ha, hb);
    // Equal phase gradients: trading modulus between components buys nothing
    // in the continuum, so beta == alpha there.  The discrete edge energy has
    // O(h^2) Cauchy-Schwarz slack (rho_i rho_j + sigma_i sigma_j < 2 for
    // non-parallel modulus vectors), so allow a small relative gap below.
    CHECK(cp.beta_value <= alpha + 1e-6);
    CHECK(cp.beta_value >= alpha * (1.0 - 2e-3));
}

TEST_CASE("cos against constant realizes a strict alpha-beta gap", "[beta]") {
    auto g = build_grid(GridKind::UnitDisk, 16);
    auto ha = solve_harmonic(cos_data(g, 0.5));
    auto hb = solve_harmonic(const_data(g));
    double alpha = alpha_value(ha, hb);
    auto cp = minimize_beta(ha, hb);
    INFO("alpha=" << alpha << " beta=" << cp.beta_value);
    // the second component absorbs modulus where |grad phi|^2 is largest
    CHECK(cp.beta_value < alpha - 1e-3);
}

TEST_CASE("beta matches the coordinate-descent oracle on the 8x8 square", "[beta]") {
    auto g = build_grid(GridKind::UnitSquare, 8);
    auto ha = solve_harmonic(cos_data(g, 0.5));
    auto hb = solve_harmonic(const_data(g));
    auto cp = minimize_beta(ha, hb);
    auto oracle = oracles::beta_coordinate_descent(ha, hb);
    INFO("beta=" << cp.beta_value << " oracle=" << oracle.value
                 << " sweeps=" << oracle.sweeps);
    CHECK(cp.beta_value == Approx(oracle.value).epsilon(1e-3));
}

TEST_CASE("projection singularity is reported, not glossed over", "[beta]") {
    auto g = build_grid(GridKind::UnitSquare, 8);
    auto ha = solve_harmonic(const_data(g));
    auto hb = solve_harmonic(const_data(g));
    HarmonicLifting za = ha, zb = hb;
    for (int i : g->interior) { za.u0[i] = 0.0; zb.u0[i] = 0.0; }
    CHECK_THROWS_AS(minimize_beta(za, zb), SolverError);
}
