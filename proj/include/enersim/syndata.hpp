#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "enersim/rng.hpp"
#include "enersim/table.hpp"

namespace enersim {

// Per-feature equispaced bin edges spanning [min, max]. Bin indices are
// 1-based: bin n covers [edge[n-1], edge[n]) and the last bin is closed.
struct BinningScheme {
    int n_bins = 0;
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> edges;  // per feature, n_bins + 1 entries

    int n_features() const { return static_cast<int>(edges.size()); }
};

struct CondDist {
    std::vector<double> p;  // length n_bins, sums to 1
    long count = 0;         // occupancy of the conditioning cell
};

// Binned marginals plus sparse pairwise and triplet conditionals.
// Keys use 1-based bin indices throughout.
struct ProbabilityTables {
    int n_bins = 0;
    int depth = 1;
    std::vector<std::vector<double>> marginals;              // n_features x n_bins
    std::vector<std::vector<long>> marginal_counts;          // raw occupancies
    std::map<std::tuple<int, int, int>, CondDist> pairs;     // (i, n, j)
    std::map<std::tuple<int, int, int, int, int>, CondDist> triplets;  // (i, n, j, m, k)
};

enum class OrderPolicy { Fixed, RandomPerRow };

BinningScheme build_bins(const FeatureTable& table, int n_bins);

// Unique n in {1..N} with value in A_i^n; the feature maximum maps to bin N.
int bin_index(double value, int feature, const BinningScheme& scheme);

ProbabilityTables fit_tables(const FeatureTable& table, const BinningScheme& scheme, int depth);

// Chain sampling: marginal -> pair conditional -> triplet conditional on the
// two most recently drawn features, with fallback triplet -> pair -> marginal
// for unseen conditioning cells. Within-bin values are uniform on the bin.
FeatureTable sample_synthetic(const ProbabilityTables& tables, const BinningScheme& scheme,
                              int rows, OrderPolicy policy, RngStream& rng);

void save_tables_json(const ProbabilityTables& tables, const BinningScheme& scheme,
                      const std::string& path);
std::pair<ProbabilityTables, BinningScheme> load_tables_json(const std::string& path);

}  // namespace enersim
