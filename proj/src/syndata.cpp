#include "enersim/syndata.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

namespace enersim {

BinningScheme build_bins(const FeatureTable& table, int n_bins) {
    if (n_bins < 1) throw InputError("build_bins: n_bins must be >= 1");
    BinningScheme s;
    s.n_bins = n_bins;
    s.column_names = table.column_names;
    s.edges.resize(table.n_features());
    for (int i = 0; i < table.n_features(); ++i) {
        auto [lo_it, hi_it] = std::minmax_element(table.columns[i].begin(), table.columns[i].end());
        double lo = *lo_it, hi = *hi_it;
        if (lo == hi)
            throw DegenerateFeatureError("build_bins: constant column " + table.column_names[i]);
        auto& e = s.edges[i];
        e.resize(n_bins + 1);
        for (int n = 0; n <= n_bins; ++n) e[n] = lo + (hi - lo) / n_bins * n;
        e[0] = lo;
        e[n_bins] = hi;
    }
    return s;
}

int bin_index(double value, int feature, const BinningScheme& scheme) {
    const auto& e = scheme.edges[feature];
    const int N = scheme.n_bins;
    if (value < e[0] || value > e[N])
        throw RangeError("bin_index: value outside feature range");
    if (value == e[N]) return N;  // closed last interval
    // upper_bound gives the first edge strictly greater than value; intervals
    // are right-open so an interior edge belongs to the bin on its right.
    auto it = std::upper_bound(e.begin(), e.end(), value);
    return static_cast<int>(it - e.begin());
}

ProbabilityTables fit_tables(const FeatureTable& table, const BinningScheme& scheme, int depth) {
    if (depth < 1 || depth > 3) throw InputError("fit_tables: depth must be 1, 2, or 3");
    const int nf = table.n_features();
    const int M = table.n_rows();
    const int N = scheme.n_bins;

    // Precompute 0-based bin assignments per row and feature.
    std::vector<std::vector<int>> bins(nf, std::vector<int>(M));
    for (int i = 0; i < nf; ++i)
        for (int s = 0; s < M; ++s) bins[i][s] = bin_index(table.at(s, i), i, scheme) - 1;

    ProbabilityTables t;
    t.n_bins = N;
    t.depth = depth;
    t.marginals.assign(nf, std::vector<double>(N, 0.0));
    t.marginal_counts.assign(nf, std::vector<long>(N, 0));
    for (int i = 0; i < nf; ++i) {
        for (int s = 0; s < M; ++s) t.marginal_counts[i][bins[i][s]]++;
        for (int n = 0; n < N; ++n) t.marginals[i][n] = double(t.marginal_counts[i][n]) / M;
    }

    if (depth >= 2) {
        std::vector<long> joint(N * N);
        for (int i = 0; i < nf; ++i)
            for (int j = 0; j < nf; ++j) {
                if (i == j) continue;
                std::fill(joint.begin(), joint.end(), 0L);
                for (int s = 0; s < M; ++s) joint[bins[i][s] * N + bins[j][s]]++;
                for (int n = 0; n < N; ++n) {
                    long ci = t.marginal_counts[i][n];
                    if (ci == 0) continue;
                    CondDist d;
                    d.count = ci;
                    d.p.resize(N);
                    for (int m = 0; m < N; ++m) d.p[m] = double(joint[n * N + m]) / ci;
                    t.pairs.emplace(std::make_tuple(i, n + 1, j), std::move(d));
                }
            }
    }

    if (depth >= 3) {
        // Ordered triples of pairwise-distinct features; conditioning on the
        // occupied (i,n),(j,m) cells only.
        std::map<std::pair<int, int>, std::vector<long>> cell;  // (n,m) -> counts over ell
        for (int i = 0; i < nf; ++i)
            for (int j = 0; j < nf; ++j) {
                if (j == i) continue;
                for (int k = 0; k < nf; ++k) {
                    if (k == i || k == j) continue;
                    cell.clear();
                    for (int s = 0; s < M; ++s) {
                        auto& v = cell[{bins[i][s], bins[j][s]}];
                        if (v.empty()) v.assign(N, 0L);
                        v[bins[k][s]]++;
                    }
                    for (auto& [nm, counts] : cell) {
                        long c = std::accumulate(counts.begin(), counts.end(), 0L);
                        CondDist d;
                        d.count = c;
                        d.p.resize(N);
                        for (int l = 0; l < N; ++l) d.p[l] = double(counts[l]) / c;
                        t.triplets.emplace(
                            std::make_tuple(i, nm.first + 1, j, nm.second + 1, k),
                            std::move(d));
                    }
                }
            }
    }
    return t;
}

namespace {

// Inverse-CDF draw from a length-N distribution; returns a 1-based bin.
int draw_bin(const std::vector<double>& p, RngStream& rng) {
    double u = rng.uniform();
    double acc = 0.0;
    const int N = static_cast<int>(p.size());
    for (int n = 0; n < N; ++n) {
        acc += p[n];
        if (u < acc) return n + 1;
    }
    // Round-off tail: fall back to the last nonzero bin.
    for (int n = N - 1; n >= 0; --n)
        if (p[n] > 0.0) return n + 1;
    return N;
}

}  // namespace

FeatureTable sample_synthetic(const ProbabilityTables& tables, const BinningScheme& scheme,
                              int rows, OrderPolicy policy, RngStream& rng) {
    if (rows < 1) throw InputError("sample_synthetic: rows must be >= 1");
    const int nf = scheme.n_features();
    FeatureTable out;
    out.column_names = scheme.column_names;
    out.columns.assign(nf, std::vector<double>(rows));

    std::vector<int> order(nf);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> drawn_bin(nf);

    for (int row = 0; row < rows; ++row) {
        if (policy == OrderPolicy::RandomPerRow) {
            std::iota(order.begin(), order.end(), 0);
            for (int a = nf - 1; a > 0; --a)
                std::swap(order[a], order[rng.uniform_int(a + 1)]);
        }
        for (int t = 0; t < nf; ++t) {
            const int feat = order[t];
            const std::vector<double>* dist = &tables.marginals[feat];
            if (t >= 2 && tables.depth >= 3) {
                auto it = tables.triplets.find(std::make_tuple(
                    order[t - 2], drawn_bin[t - 2], order[t - 1], drawn_bin[t - 1], feat));
                if (it != tables.triplets.end()) {
                    dist = &it->second.p;
                    goto have_dist;
                }
            }
            if (t >= 1 && tables.depth >= 2) {
                auto it = tables.pairs.find(std::make_tuple(order[t - 1], drawn_bin[t - 1], feat));
                if (it != tables.pairs.end()) dist = &it->second.p;
            }
        have_dist:
            int b = draw_bin(*dist, rng);
            drawn_bin[t] = b;
            out.columns[feat][row] =
                rng.uniform(scheme.edges[feat][b - 1], scheme.edges[feat][b]);
        }
    }
    return out;
}

void save_tables_json(const ProbabilityTables& tables, const BinningScheme& scheme,
                      const std::string& path) {
    nlohmann::json j;
    j["n_bins"] = tables.n_bins;
    j["depth"] = tables.depth;
    j["columns"] = scheme.column_names;
    j["edges"] = scheme.edges;
    j["marginals"] = tables.marginals;
    auto& pairs = j["pairs"] = nlohmann::json::array();
    for (const auto& [key, d] : tables.pairs) {
        auto [i, n, jj] = key;
        pairs.push_back({{"i", i}, {"n", n}, {"j", jj}, {"dist", d.p}, {"count", d.count}});
    }
    auto& trips = j["triplets"] = nlohmann::json::array();
    for (const auto& [key, d] : tables.triplets) {
        auto [i, n, jj, m, k] = key;
        trips.push_back({{"i", i}, {"n", n}, {"j", jj}, {"m", m}, {"k", k},
                         {"dist", d.p}, {"count", d.count}});
    }
    std::ofstream out(path);
    if (!out) throw InputError("save_tables_json: cannot open " + path);
    out << j.dump(1) << "\n";
}

std::pair<ProbabilityTables, BinningScheme> load_tables_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("load_tables_json: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("load_tables_json: ") + e.what());
    }
    ProbabilityTables t;
    BinningScheme s;
    t.n_bins = s.n_bins = j.at("n_bins").get<int>();
    t.depth = j.at("depth").get<int>();
    s.column_names = j.at("columns").get<std::vector<std::string>>();
    s.edges = j.at("edges").get<std::vector<std::vector<double>>>();
    t.marginals = j.at("marginals").get<std::vector<std::vector<double>>>();
    for (const auto& e : j.at("pairs")) {
        CondDist d;
        d.p = e.at("dist").get<std::vector<double>>();
        d.count = e.at("count").get<long>();
        t.pairs.emplace(std::make_tuple(e.at("i").get<int>(), e.at("n").get<int>(),
                                        e.at("j").get<int>()),
                        std::move(d));
    }
    for (const auto& e : j.at("triplets")) {
        CondDist d;
        d.p = e.at("dist").get<std::vector<double>>();
        d.count = e.at("count").get<long>();
        t.triplets.emplace(std::make_tuple(e.at("i").get<int>(), e.at("n").get<int>(),
                                           e.at("j").get<int>(), e.at("m").get<int>(),
                                           e.at("k").get<int>()),
                           std::move(d));
    }
    return {std::move(t), std::move(s)};
}

}  // namespace enersim
