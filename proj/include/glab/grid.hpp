#pragma once
// Finite-volume grids on the unit square and the unit disk.
//
// Both grids are stored as the same structure: nodes with lumped cell areas
// plus weighted edges between neighbouring nodes, w_e = (shared face length) /
// (node distance).  Every discrete operator downstream is built from this one
// edge list, so the Laplacian, the Dirichlet form and the quadrature are
// mutually consistent by construction:
//
//   (L u)_i       = (1/a_i) sum_e w_e (u_j - u_i)        five-point stencil
//   <grad u, grad v> = sum_e w_e (u_j - u_i)(v_j - v_i)  Dirichlet form
//   integrate(f)  = sum_i a_i f_i
//
// and integrate(v . L u) = -<grad u, grad v> holds exactly for v = 0 on the
// boundary (summation by parts is an identity here, not an approximation).
//
// Square: lattice spacing h = 1/(n+1); the four corner nodes are dropped (no
// five-point stencil ever references them), and their quarter-cells are folded
// into the adjacent edge nodes so the areas still sum to exactly 1.
//
// Disk: polar tensor grid, dr = 1/(n+1), n_theta angular nodes chosen so the
// arc spacing roughly matches dr.  The axis r = 0 is a single node; its
// Laplacian row comes out of the finite-volume construction as the standard
// polar-origin closure (4/dr^2) * (mean of innermost ring - axis value).

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "glab/errors.hpp"

namespace glab {

enum class GridKind { UnitSquare, UnitDisk };

inline std::string to_string(GridKind k) {
    return k == GridKind::UnitSquare ? "unit_square" : "unit_disk";
}

struct Edge {
    int a, b;
    double w; // face length / node distance
};

class Grid {
public:
    GridKind kind;
    int resolution = 0; // interior points per axis (square), interior rings (disk)

    std::vector<double> x, y;   // node coordinates
    std::vector<double> area;   // lumped quadrature weight per node
    std::vector<Edge> edges;

    std::vector<int> interior;      // interior node ids
    std::vector<int> boundary;      // boundary node ids, CCW (traverses boundary once)
    std::vector<double> boundary_theta; // angle about domain centre, per boundary node
    std::vector<double> boundary_arc;   // normalized arclength in [0,1), per boundary node
    std::vector<int> boundary_pos;  // node id -> index into `boundary`, -1 if interior
    std::vector<char> is_interior;  // node id -> flag

    std::vector<double> wdeg;       // sum of incident edge weights, per node

    // CSR adjacency (neighbour id, edge weight) -- used by BFS phase unwrapping
    std::vector<int> adj_off;
    std::vector<int> adj_node;
    std::vector<double> adj_w;

    // disk-only extras (zero for the square)
    int ntheta = 0;
    double dr = 0.0, dtheta = 0.0;

    int n() const { return static_cast<int>(x.size()); }
    int n_interior() const { return static_cast<int>(interior.size()); }
    int n_boundary() const { return static_cast<int>(boundary.size()); }

    // coarsest node spacing; used for h^2-scaled slack in bound checks
    double h() const {
        if (kind == GridKind::UnitSquare) return 1.0 / (resolution + 1);
        return std::max(dr, dtheta);
    }

private:
    friend std::shared_ptr<const Grid> build_grid(GridKind, int);

    void finalize() {
        const int N = n();
        wdeg.assign(N, 0.0);
        for (const Edge& e : edges) {
            wdeg[e.a] += e.w;
            wdeg[e.b] += e.w;
        }
        boundary_pos.assign(N, -1);
        for (int k = 0; k < n_boundary(); ++k) boundary_pos[boundary[k]] = k;

        // CSR adjacency
        std::vector<int> cnt(N, 0);
        for (const Edge& e : edges) { ++cnt[e.a]; ++cnt[e.b]; }
        adj_off.assign(N + 1, 0);
        for (int i = 0; i < N; ++i) adj_off[i + 1] = adj_off[i] + cnt[i];
        adj_node.resize(adj_off[N]);
        adj_w.resize(adj_off[N]);
        std::vector<int> fill(adj_off.begin(), adj_off.end() - 1);
        for (const Edge& e : edges) {
            adj_node[fill[e.a]] = e.b; adj_w[fill[e.a]] = e.w; ++fill[e.a];
            adj_node[fill[e.b]] = e.a; adj_w[fill[e.b]] = e.w; ++fill[e.b];
        }
    }

    void build_square(int nres) {
        resolution = nres;
        const int m = nres + 2;            // lattice nodes per side, incl. boundary
        const double h = 1.0 / (nres + 1);

        auto corner = [&](int i, int j) {
            return (i == 0 || i == m - 1) && (j == 0 || j == m - 1);
        };
        // id table over the full lattice, corners skipped
        std::vector<int> id(m * m, -1);
        int next = 0;
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i)
                if (!corner(i, j)) id[j * m + i] = next++;
        const int N = next;
        x.resize(N); y.resize(N);
        area.assign(N, 0.0);
        is_interior.assign(N, 0);

        auto at = [&](int i, int j) { return id[j * m + i]; };

        for (int j = 0; j < m; ++j) {
            for (int i = 0; i < m; ++i) {
                int v = at(i, j);
                if (v < 0) continue;
                x[v] = i * h;
                y[v] = j * h;
                bool bi = (i == 0 || i == m - 1);
                bool bj = (j == 0 || j == m - 1);
                if (!bi && !bj) {
                    is_interior[v] = 1;
                    interior.push_back(v);
                    area[v] = h * h;
                } else {
                    area[v] = 0.5 * h * h;
                }
            }
        }
        // fold the four missing corner quarter-cells into their two edge
        // neighbours so sum(area) == 1 exactly
        const double q = h * h / 8.0;
        for (int ci : {0, m - 1}) {
            for (int cj : {0, m - 1}) {
                int ii = (ci == 0) ? 1 : m - 2;
                int jj = (cj == 0) ? 1 : m - 2;
                area[at(ii, cj)] += q;
                area[at(ci, jj)] += q;
            }
        }

        // boundary cycle, CCW: bottom, right, top, left (no corners)
        for (int i = 1; i <= nres; ++i) boundary.push_back(at(i, 0));
        for (int j = 1; j <= nres; ++j) boundary.push_back(at(m - 1, j));
        for (int i = nres; i >= 1; --i) boundary.push_back(at(i, m - 1));
        for (int j = nres; j >= 1; --j) boundary.push_back(at(0, j));

        // edges; face length h in bulk rows/columns, h/2 along the boundary
        for (int j = 0; j < m; ++j) {
            double w = (j == 0 || j == m - 1) ? 0.5 : 1.0;
            for (int i = 0; i + 1 < m; ++i) {
                int a = at(i, j), b = at(i + 1, j);
                if (a >= 0 && b >= 0) edges.push_back({a, b, w});
            }
        }
        for (int i = 0; i < m; ++i) {
            double w = (i == 0 || i == m - 1) ? 0.5 : 1.0;
            for (int j = 0; j + 1 < m; ++j) {
                int a = at(i, j), b = at(i, j + 1);
                if (a >= 0 && b >= 0) edges.push_back({a, b, w});
            }
        }

        boundary_theta.resize(boundary.size());
        boundary_arc.resize(boundary.size());
        double total = 0.0;
        std::vector<double> cum(boundary.size(), 0.0);
        for (size_t k = 0; k < boundary.size(); ++k) {
            int a = boundary[k], b = boundary[(k + 1) % boundary.size()];
            cum[k] = total;
            total += std::hypot(x[b] - x[a], y[b] - y[a]);
        }
        for (size_t k = 0; k < boundary.size(); ++k) {
            boundary_arc[k] = cum[k] / total;
            boundary_theta[k] = std::atan2(y[boundary[k]] - 0.5, x[boundary[k]] - 0.5);
        }
    }

    void build_disk(int nres) {
        resolution = nres;
        dr = 1.0 / (nres + 1);
        // arc spacing ~ dr at the rim; multiple of 4 keeps the axes symmetric
        ntheta = 4 * static_cast<int>(std::ceil(std::numbers::pi * (nres + 1) / 4.0));
        dtheta = 2.0 * std::numbers::pi / ntheta;

        const int N = 1 + (nres + 1) * ntheta; // axis + rings 1..n (interior) + rim
        x.resize(N); y.resize(N);
        area.assign(N, 0.0);
        is_interior.assign(N, 0);

        auto at = [&](int ring, int j) { return 1 + (ring - 1) * ntheta + j; };
        auto rad = [&](int ring) { return ring * dr; };

        x[0] = 0.0; y[0] = 0.0;
        is_interior[0] = 1;
        interior.push_back(0);
        area[0] = std::numbers::pi * dr * dr / 4.0;

        for (int ring = 1; ring <= nres + 1; ++ring) {
            double r = rad(ring);
            bool bdry = (ring == nres + 1);
            for (int j = 0; j < ntheta; ++j) {
                int v = at(ring, j);
                double th = j * dtheta;
                x[v] = r * std::cos(th);
                y[v] = r * std::sin(th);
                if (bdry) {
                    boundary.push_back(v);
                    // half-width annulus cell [1-dr/2, 1]
                    area[v] = 0.5 * dr * (1.0 - 0.25 * dr) * dtheta;
                } else {
                    is_interior[v] = 1;
                    interior.push_back(v);
                    area[v] = r * dr * dtheta; // exact annular sector
                }
            }
        }

        // radial edges: axis -> ring 1, then ring i -> ring i+1
        for (int j = 0; j < ntheta; ++j)
            edges.push_back({0, at(1, j), 0.5 * dtheta}); // face (dr/2)*dtheta / dr
        for (int ring = 1; ring <= nres; ++ring) {
            double w = (rad(ring) + 0.5 * dr) * dtheta / dr; // face arc at r_{i+1/2}
            for (int j = 0; j < ntheta; ++j)
                edges.push_back({at(ring, j), at(ring + 1, j), w});
        }
        // angular edges within each ring (the rim has a half-width face)
        for (int ring = 1; ring <= nres + 1; ++ring) {
            double r = rad(ring);
            double face = (ring == nres + 1) ? 0.5 * dr : dr;
            double w = face / (r * dtheta);
            for (int j = 0; j < ntheta; ++j)
                edges.push_back({at(ring, j), at(ring, (j + 1) % ntheta), w});
        }

        boundary_theta.resize(ntheta);
        boundary_arc.resize(ntheta);
        for (int j = 0; j < ntheta; ++j) {
            double th = j * dtheta;
            boundary_theta[j] = (th <= std::numbers::pi) ? th : th - 2.0 * std::numbers::pi;
            boundary_arc[j] = static_cast<double>(j) / ntheta;
        }
    }
};

// Build an immutable grid. Resolution must be at least 8 so the asymptotic
// checks downstream mean something.
inline std::shared_ptr<const Grid> build_grid(GridKind kind, int resolution) {
    if (resolution < 8)
        throw ConfigError({"domain.resolution must be >= 8, got " + std::to_string(resolution)});
    auto g = std::make_shared<Grid>();
    g->kind = kind;
    if (kind == GridKind::UnitSquare) g->build_square(resolution);
    else g->build_disk(resolution);
    g->finalize();
    return g;
}

} // namespace glab
