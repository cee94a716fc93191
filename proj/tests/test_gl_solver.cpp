// Single-field Ginzburg-Landau solver: gradient correctness, flow behaviour,
// maximum principle, the modulus balance identity, and a direct-minimization
// cross-check.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "glab/gl_solver.hpp"
#include "support/oracles.hpp"

using namespace glab;
using Catch::Approx;

namespace {

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

// deterministic interior-supported direction fields
ComplexField random_direction(const std::shared_ptr<const Grid>& g, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexField w(g);
    for (int i : g->interior) w[i] = cplx(u(rng), u(rng));
    return w;
}

double weighted_pairing(const ComplexField& a, const ComplexField& b) {
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i)
        s += a.grid->area[i] * detail::redot(a[i], b[i]);
    return s;
}

} // namespace

TEST_CASE("energy gradient matches central differences", "[gradient]") {
    auto g = build_grid(GridKind::UnitSquare, 16);
    auto h = solve_harmonic(cos_data(g, 0.4));
    std::mt19937 rng(1234);

    // perturb the harmonic map so both energy terms are active
    ComplexField u = h.u0;
    for (int i : g->interior) u[i] += 0.3 * random_direction(g, rng)[i];

    const double t = 1e-5;
    for (double eps : {1.0, 0.1}) {
        ComplexField grad = energy_gradient(u, eps);
        for (int k = 0; k < 20; ++k) {
            ComplexField w = random_direction(g, rng);
            ComplexField up = u, um = u;
            for (int i : g->interior) {
                up[i] += t * w[i];
                um[i] -= t * w[i];
            }
            double fd = (gl_energy(up, eps) - gl_energy(um, eps)) / (2.0 * t);
            double ip = weighted_pairing(grad, w);
            CHECK(std::abs(ip - fd) / (std::abs(ip) + 1e-12) <= 1e-5);
        }
    }
}

TEST_CASE("gradient is zero on boundary rows and at exact solutions", "[gradient]") {
    auto g = build_grid(GridKind::UnitDisk, 16);

    ComplexField one(g, cplx(1.0, 0.0));
    ComplexField grad = energy_gradient(one, 0.3);
    for (int i = 0; i < g->n(); ++i) CHECK(std::abs(grad[i]) == 0.0);

    // at a unit-modulus field the potential term vanishes pointwise, so the
    // gradient is -lap u independent of epsilon
    auto h = solve_harmonic(cos_data(g, 0.5));
    ComplexField ga = energy_gradient(h.u0, 0.3);
    ComplexField gb = energy_gradient(h.u0, 3.0);
    ComplexField lap = laplacian(h.u0);
    for (int i : g->interior) {
        CHECK(std::abs(ga[i] - gb[i]) <= 1e-12);
        CHECK(std::abs(ga[i] + lap[i]) <= 1e-12);
    }
    for (int k = 0; k < g->n_boundary(); ++k) CHECK(std::abs(ga[g->boundary[k]]) == 0.0);
}

TEST_CASE("constant data solves exactly in zero steps", "[solver]") {
    auto g = build_grid(GridKind::UnitSquare, 12);
    SolverConfig cfg;
    cfg.epsilon = 0.3;
    GLSolution s = solve_gl(const_data(g), g, cfg);
    CHECK(s.residual == 0.0);
    CHECK(s.steps_taken == 0);
    CHECK(s.g_energy <= 1e-15);
    for (int i = 0; i < g->n(); ++i) CHECK(s.u[i] == cplx(1.0, 0.0));
}

TEST_CASE("converged solve: residual, maximum principle, exact boundary trace", "[solver]") {
    auto g = build_grid(GridKind::UnitDisk, 32);
    BoundaryData bc = cos_data(g, 0.5);
    SolverConfig cfg;
    cfg.epsilon = 0.2;
    cfg.residual_tol = 1e-9;
    GLSolution s = solve_gl(bc, g, cfg);

    CHECK(s.residual <= cfg.residual_tol);
    CHECK(s.max_modulus <= 1.0 + 10.0 * g->h() * g->h());
    for (int k = 0; k < g->n_boundary(); ++k)
        CHECK(s.u[g->boundary[k]] == bc.samples[k]); // bit-exact pin

    // the reported residual is the scaled max-norm of the energy gradient
    ComplexField grad = energy_gradient(s.u, cfg.epsilon);
    double m = 0.0;
    for (int i : g->interior) m = std::max(m, std::abs(grad[i]));
    double scale = 1.0 + 1.0 / (cfg.epsilon * cfg.epsilon);
    CHECK(s.residual == Approx(m / scale).margin(1e-15));

    // balance identity: residual bounded by 2 max|u| times the equation residual
    CHECK(s.identity_1_7 <= 3.0 * s.residual * scale + 1e-13);
}

TEST_CASE("flow energy is monotone non-increasing", "[solver]") {
    auto g = build_grid(GridKind::UnitSquare, 16);
    SolverConfig cfg;
    cfg.epsilon = 0.25;
    cfg.residual_tol = 1e-7;
    cfg.newton = false; // keep the whole trace in the flow phase
    GLSolution s = solve_gl(cos_data(g, 0.4), g, cfg);
    REQUIRE(s.energy_trace.size() >= 2);
    CHECK(static_cast<long>(s.energy_trace.size()) == s.steps_taken);
    for (size_t k = 1; k < s.energy_trace.size(); ++k)
        CHECK(s.energy_trace[k] <= s.energy_trace[k - 1] + 1e-10 * (1.0 + std::abs(s.energy_trace[k])));
    CHECK(s.energy_trace.back() < s.energy_trace.front());
}

TEST_CASE("balance identity: zero at the constant solution, large off solutions", "[identity]") {
    auto g = build_grid(GridKind::UnitSquare, 12);
    ComplexField one(g, cplx(1.0, 0.0));
    CHECK(identity_1_7_residual(one, 0.5) == 0.0);

    std::mt19937 rng(77);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ComplexField noisy(g, cplx(1.0, 0.0));
    for (int i : g->interior) noisy[i] = cplx(1.0 + 0.5 * d(rng), 0.5 * d(rng));
    CHECK(identity_1_7_residual(noisy, 0.5) > 1.0);
}

TEST_CASE("winding data is rejected as out of hypothesis", "[solver]") {
    auto g = build_grid(GridKind::UnitDisk, 16);
    BoundaryData bc = boundary_from_samples(g, winding_samples(*g, 1), "winding 1", true);
    SolverConfig cfg;
    cfg.epsilon = 0.3;
    REQUIRE_THROWS_MATCHES(solve_gl(bc, g, cfg), DegreeError,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("deg(g) must be 0")));
}

TEST_CASE("step cap raises a solver error carrying the residual history", "[solver]") {
    auto g = build_grid(GridKind::UnitSquare, 12);
    SolverConfig cfg;
    cfg.epsilon = 0.2;
    cfg.max_steps = 1;
    cfg.residual_tol = 1e-14;
    cfg.newton = false;
    try {
        solve_gl(cos_data(g, 0.5), g, cfg);
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.residual_history.size() >= 1);
        CHECK(e.residual_history.back() > cfg.residual_tol);
    }
}

TEST_CASE("tau beyond the stability bound is rejected", "[config]") {
    auto g = build_grid(GridKind::UnitSquare, 12);
    SolverConfig cfg;
    cfg.epsilon = 0.1;
    cfg.tau = 0.5; // bound is 0.0025
    REQUIRE_THROWS_MATCHES(solve_gl(const_data(g), g, cfg), ConfigError,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("stability")));
}

TEST_CASE("continuation warm start converges and verifies post hoc", "[solver]") {
    auto g = build_grid(GridKind::UnitDisk, 16);
    BoundaryData bc = cos_data(g, 0.5);
    SolverConfig cfg;
    cfg.epsilon = 0.2;
    cfg.residual_tol = 1e-9;
    GLSolution coarse = solve_gl(bc, g, cfg);

    cfg.epsilon = 0.1;
    cfg.tau = 0.0; // re-derive the bound for the new epsilon
    GLSolution fine = solve_gl(bc, coarse.u, cfg);
    CHECK(fine.residual <= cfg.residual_tol);
    CHECK(fine.max_modulus <= 1.0 + 10.0 * g->h() * g->h());

    // independent recheck of the reported residual
    ComplexField grad = energy_gradient(fine.u, cfg.epsilon);
    double m = 0.0;
    for (int i : g->interior) m = std::max(m, std::abs(grad[i]));
    CHECK(m / (1.0 + 1.0 / (cfg.epsilon * cfg.epsilon)) <= cfg.residual_tol);
}

TEST_CASE("flow solution matches direct minimization", "[solver][slow]") {
    auto g = build_grid(GridKind::UnitDisk, 64);
    BoundaryData bc = cos_data(g, 0.5);
    SolverConfig cfg;
    cfg.epsilon = 0.1;
    GLSolution s = solve_gl(bc, g, cfg);
    CHECK(s.residual <= cfg.residual_tol);

    auto h = solve_harmonic(bc);
    auto direct = oracles::nlcg_minimize({h.u0}, cfg.epsilon, oracles::Functional::Single);
    double direct_dirichlet = dirichlet_energy(direct.fields[0]);

    CHECK(s.dirichlet >= direct_dirichlet - 0.1);
    CHECK(s.dirichlet <= direct_dirichlet + 0.1);
    CHECK(s.g_energy <= direct.energy + 1e-6); // the flow+Newton end state is a true minimizer
    CHECK(s.potential <= 1.0);
}
