#include "enersim/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "enersim/csv.hpp"

namespace enersim {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

FeatureTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("load_table: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw InputError("load_table: empty file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    FeatureTable t;
    t.column_names = split_csv_line(line);
    if (t.column_names.empty()) throw InputError("load_table: no columns in header");
    t.columns.resize(t.column_names.size());

    int row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != t.column_names.size())
            throw InputError("load_table: row " + std::to_string(row + 1) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(t.column_names.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v = 0.0;
            const char* b = cells[c].data();
            const char* e = b + cells[c].size();
            auto [ptr, ec] = std::from_chars(b, e, v);
            if (ec != std::errc() || ptr != e || !std::isfinite(v))
                throw InputError("load_table: bad value at row " + std::to_string(row + 1) +
                                 ", column " + t.column_names[c]);
            t.columns[c].push_back(v);
        }
        ++row;
    }
    if (row == 0) throw InputError("load_table: file has a header but no data rows");
    return t;
}

void save_table(const FeatureTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("save_table: cannot open " + path);
    for (int c = 0; c < table.n_features(); ++c)
        out << (c ? "," : "") << table.column_names[c];
    out << "\n";
    for (int r = 0; r < table.n_rows(); ++r) {
        for (int c = 0; c < table.n_features(); ++c)
            out << (c ? "," : "") << format_real(table.at(r, c));
        out << "\n";
    }
}

FeatureTable make_benchmark_table(int rows, std::uint64_t seed) {
    if (rows < 2) throw InputError("make_benchmark_table: need at least 2 rows");
    RngStream rng(seed);
    FeatureTable t;
    t.column_names = {"f1", "f2", "f3", "f4", "f5"};
    t.columns.assign(5, std::vector<double>(rows));
    for (int s = 0; s < rows; ++s) {
        double x = -1.0 + 2.0 * s / (rows - 1);
        double r = rng.uniform();
        t.columns[0][s] = x;
        t.columns[1][s] = 2.0 * x * x + x + r;
        t.columns[2][s] = x * x;
        t.columns[3][s] = std::sin(x);
        t.columns[4][s] = std::exp(-x);
    }
    return t;
}

std::vector<std::vector<double>> pearson_matrix(const FeatureTable& table) {
    const int nf = table.n_features();
    const int m = table.n_rows();
    std::vector<double> mean(nf, 0.0), sd(nf, 0.0);
    for (int c = 0; c < nf; ++c) {
        for (int r = 0; r < m; ++r) mean[c] += table.at(r, c);
        mean[c] /= m;
        for (int r = 0; r < m; ++r) {
            double d = table.at(r, c) - mean[c];
            sd[c] += d * d;
        }
        if (sd[c] == 0.0)
            throw DegenerateFeatureError("pearson_matrix: zero-variance column " +
                                         table.column_names[c]);
        sd[c] = std::sqrt(sd[c]);
    }
    std::vector<std::vector<double>> corr(nf, std::vector<double>(nf, 0.0));
    for (int a = 0; a < nf; ++a) {
        corr[a][a] = 1.0;
        for (int b = a + 1; b < nf; ++b) {
            double cov = 0.0;
            for (int r = 0; r < m; ++r)
                cov += (table.at(r, a) - mean[a]) * (table.at(r, b) - mean[b]);
            double v = cov / (sd[a] * sd[b]);
            corr[a][b] = corr[b][a] = v;
        }
    }
    return corr;
}

}  // namespace enersim
