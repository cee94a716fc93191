#pragma once
// Boundary data g : boundary -> S^1, its winding degree, and the global phase
// lifting that exists exactly when the degree vanishes.
//
// The degree is the sum of principal-branch phase increments between
// consecutive CCW samples divided by 2*pi.  That sum is only trustworthy when
// each increment is well inside (-pi, pi); any step of magnitude >= pi/2 makes
// the branch choice ambiguous at this resolution and is reported as an error
// rather than silently mis-counted.

#include <cmath>
#include <complex>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "glab/errors.hpp"
#include "glab/field.hpp"
#include "glab/grid.hpp"

namespace glab {

struct BoundarySpec {
    enum class Type { Constant, Cos, SinArclength, Table };
    Type type = Type::Constant;
    double amplitude = 0.0;   // phase amplitude delta
    int mode = 1;             // m in cos(m theta), k in sin(2 pi k s)
    std::string table_path;   // Table only
};

struct BoundaryData {
    std::shared_ptr<const Grid> grid;
    std::vector<cplx> samples;    // one per boundary node, CCW, unit modulus
    int degree = 0;
    std::vector<double> lifting;  // phase with g = e^{i phi}; empty unless degree == 0
    bool smoothness_verified = true; // false for table-sourced data
    std::string label;

    bool has_lifting() const { return !lifting.empty(); }
};

namespace detail {
inline double principal_diff(cplx from, cplx to) {
    return std::arg(to * std::conj(from)); // in (-pi, pi]
}
} // namespace detail

// winding degree of a CCW sample loop; throws when under-resolved
inline int boundary_degree(const std::vector<cplx>& samples) {
    const int nb = static_cast<int>(samples.size());
    double total = 0.0;
    for (int k = 0; k < nb; ++k) {
        double d = detail::principal_diff(samples[k], samples[(k + 1) % nb]);
        if (std::abs(d) >= std::numbers::pi / 2.0 - 1e-12)
            throw UnderResolvedError(
                "boundary data under-resolved: adjacent phase jump of " +
                std::to_string(d) + " rad at sample " + std::to_string(k));
        total += d;
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

// continuous phase along the loop, anchored at sample 0 in (-pi, pi];
// only defined for degree-zero data
inline std::vector<double> lift_boundary(const std::vector<cplx>& samples) {
    int deg = boundary_degree(samples);
    if (deg != 0)
        throw DegreeError("no global lifting exists: deg(g) = " + std::to_string(deg), deg);
    std::vector<double> phi(samples.size());
    phi[0] = std::arg(samples[0]);
    for (size_t k = 1; k < samples.size(); ++k)
        phi[k] = phi[k - 1] + detail::principal_diff(samples[k - 1], samples[k]);
    return phi;
}

// wrap raw samples (normalizes modulus, computes degree, lifts if possible)
inline BoundaryData boundary_from_samples(std::shared_ptr<const Grid> grid,
                                          std::vector<cplx> samples,
                                          std::string label,
                                          bool smoothness_verified) {
    if (static_cast<int>(samples.size()) != grid->n_boundary())
        throw ShapeError("boundary sample count " + std::to_string(samples.size()) +
                         " does not match grid boundary size " +
                         std::to_string(grid->n_boundary()));
    for (auto& z : samples) {
        double m = std::abs(z);
        if (m < 1e-6)
            throw ConfigError({"boundary sample with near-zero modulus cannot be "
                               "normalized to the unit circle"});
        z /= m;
    }
    BoundaryData b;
    b.grid = std::move(grid);
    b.samples = std::move(samples);
    b.degree = boundary_degree(b.samples);
    if (b.degree == 0) b.lifting = lift_boundary(b.samples);
    b.smoothness_verified = smoothness_verified;
    b.label = std::move(label);
    return b;
}

// direct degree-d sample loop e^{i d theta}; used for hypothesis-violation tests
inline std::vector<cplx> winding_samples(const Grid& grid, int d) {
    std::vector<cplx> s(grid.n_boundary());
    for (int k = 0; k < grid.n_boundary(); ++k)
        s[k] = std::polar(1.0, d * grid.boundary_theta[k]);
    return s;
}

inline std::vector<cplx> read_boundary_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"boundary table not readable: " + path});
    std::vector<cplx> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (char& c : line) if (c == ',') c = ' ';
        std::istringstream ls(line);
        double re, im;
        if (!(ls >> re)) continue; // blank / comment line
        if (!(ls >> im))
            throw ConfigError({path + ":" + std::to_string(lineno) +
                               ": expected two numbers (re, im)"});
        rows.emplace_back(re, im);
    }
    return rows;
}

inline BoundaryData make_boundary(std::shared_ptr<const Grid> grid, const BoundarySpec& spec) {
    const Grid& g = *grid;
    const int nb = g.n_boundary();
    auto from_phase = [&](const std::vector<double>& phi, std::string label) {
        BoundaryData b;
        b.grid = grid;
        b.samples.resize(nb);
        for (int k = 0; k < nb; ++k) b.samples[k] = std::polar(1.0, phi[k]);
        b.degree = boundary_degree(b.samples); // validates resolvedness too
        b.lifting = phi;
        b.label = std::move(label);
        return b;
    };

    std::vector<double> phi(nb);
    switch (spec.type) {
    case BoundarySpec::Type::Constant:
        for (int k = 0; k < nb; ++k) phi[k] = spec.amplitude;
        return from_phase(phi, "constant");
    case BoundarySpec::Type::Cos:
        for (int k = 0; k < nb; ++k)
            phi[k] = spec.amplitude * std::cos(spec.mode * g.boundary_theta[k]);
        return from_phase(phi, "cos");
    case BoundarySpec::Type::SinArclength:
        for (int k = 0; k < nb; ++k)
            phi[k] = spec.amplitude *
                     std::sin(2.0 * std::numbers::pi * spec.mode * g.boundary_arc[k]);
        return from_phase(phi, "sin_arclength");
    case BoundarySpec::Type::Table:
        return boundary_from_samples(grid, read_boundary_table(spec.table_path),
                                     "table:" + spec.table_path,
                                     /*smoothness_verified=*/false);
    }
    throw ConfigError({"unknown boundary generator"});
}

} // namespace glab
