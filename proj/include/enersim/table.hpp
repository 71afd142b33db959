#pragma once

#include <string>
#include <vector>

#include "enersim/errors.hpp"
#include "enersim/rng.hpp"

namespace enersim {

// Column-major numeric table with named columns.
struct FeatureTable {
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns;  // columns[i] has n_rows entries

    int n_features() const { return static_cast<int>(columns.size()); }
    int n_rows() const { return columns.empty() ? 0 : static_cast<int>(columns[0].size()); }
    double at(int row, int col) const { return columns[col][row]; }
};

// CSV with header row; every body cell must parse as a finite real.
FeatureTable load_table(const std::string& path);
void save_table(const FeatureTable& table, const std::string& path);

// The 5-feature construction: x equidistant on [-1,1], columns
// x, 2x^2+x+r, x^2, sin(x), exp(-x) with r uniform on [0,1).
FeatureTable make_benchmark_table(int rows, std::uint64_t seed);

// Full Pearson correlation matrix, row-major N_f x N_f.
std::vector<std::vector<double>> pearson_matrix(const FeatureTable& table);

}  // namespace enersim
