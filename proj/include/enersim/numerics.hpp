#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "enersim/errors.hpp"
#include "enersim/grid.hpp"

namespace enersim {

// Midpoint-rule integral of cell-centered values: h * sum(values).
inline double integrate_midpoint(std::span<const double> values, const Grid1D& grid) {
    if (static_cast<int>(values.size()) != grid.n_cells())
        throw DimensionError("integrate_midpoint: values length does not match grid");
    double s = 0.0;
    for (double v : values) s += v;
    return grid.h() * s;
}

// Discrete L1 distance: h * sum |a - b|.
inline double norm_l1_diff(std::span<const double> a, std::span<const double> b,
                           const Grid1D& grid) {
    if (a.size() != b.size() || static_cast<int>(a.size()) != grid.n_cells())
        throw DimensionError("norm_l1_diff: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return grid.h() * s;
}

}  // namespace enersim
