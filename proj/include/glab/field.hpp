#pragma once
// Node-indexed fields. A field owns its values and a handle to the grid it
// lives on; operations combining two fields require the *same* grid object
// (grids are immutable and shared, so pointer identity is the right test).

#include <complex>
#include <memory>
#include <vector>

#include "glab/errors.hpp"
#include "glab/grid.hpp"

namespace glab {

using cplx = std::complex<double>;

template <class T>
struct Field {
    std::shared_ptr<const Grid> grid;
    std::vector<T> v;

    Field() = default;
    explicit Field(std::shared_ptr<const Grid> g, T fill = T{})
        : grid(std::move(g)), v(grid->n(), fill) {}

    T& operator[](int i) { return v[i]; }
    const T& operator[](int i) const { return v[i]; }
    int size() const { return static_cast<int>(v.size()); }
};

using ScalarField = Field<double>;
using ComplexField = Field<cplx>;

template <class T, class U>
inline void require_same_grid(const Field<T>& a, const Field<U>& b) {
    if (!a.grid || !b.grid || a.grid.get() != b.grid.get())
        throw ShapeError("fields live on different grids");
}

} // namespace glab
