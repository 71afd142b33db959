#pragma once

#include <vector>

#include "enersim/errors.hpp"

namespace enersim {

// Cell-centered 1-D grid on (x_lo, x_hi) with n_cells uniform cells.
class Grid1D {
public:
    Grid1D(double x_lo, double x_hi, int n_cells)
        : x_lo_(x_lo), x_hi_(x_hi), n_cells_(n_cells) {
        if (!(x_hi > x_lo)) throw InputError("Grid1D: x_hi must exceed x_lo");
        if (n_cells < 2) throw InputError("Grid1D: need at least 2 cells");
        h_ = (x_hi - x_lo) / n_cells;
    }

    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    int n_cells() const { return n_cells_; }
    double h() const { return h_; }

    double center(int i) const { return x_lo_ + (i + 0.5) * h_; }
    double interface(int i) const { return x_lo_ + i * h_; }  // i in [0, n_cells]

    std::vector<double> centers() const {
        std::vector<double> c(n_cells_);
        for (int i = 0; i < n_cells_; ++i) c[i] = center(i);
        return c;
    }

private:
    double x_lo_, x_hi_;
    int n_cells_;
    double h_;
};

// Square 2-D grid with periodic wrap in both directions.
class Grid2DPeriodic {
public:
    Grid2DPeriodic(double side_length, int n_cells_per_side)
        : side_length_(side_length), n_(n_cells_per_side) {
        if (!(side_length > 0)) throw InputError("Grid2DPeriodic: side_length must be positive");
        if (n_ < 2) throw InputError("Grid2DPeriodic: need at least 2 cells per side");
        h_ = side_length / n_;
    }

    double side_length() const { return side_length_; }
    int n() const { return n_; }
    double h() const { return h_; }
    int size() const { return n_ * n_; }

    // Wraps any integer index (including negatives) into [0, n).
    int wrap(int i) const {
        int r = i % n_;
        return r < 0 ? r + n_ : r;
    }

    int idx(int i, int j) const { return wrap(i) * n_ + wrap(j); }

private:
    double side_length_;
    int n_;
    double h_;
};

}  // namespace enersim
