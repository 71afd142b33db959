// enersim — simulation workbench CLI.
//
// Subcommands: synth (synthetic tabular data), mfg (distributed-cooling
// mean-field game), morph-mc (lattice Monte Carlo morphology), morph-pde
// (nonlocal continuum morphology). Exit codes: 0 success, 1 runtime or
// numerical failure, 2 configuration error, 3 finished without convergence.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "enersim/csv.hpp"
#include "enersim/mfg.hpp"
#include "enersim/morph_mc.hpp"
#include "enersim/morph_pde.hpp"
#include "enersim/numerics.hpp"
#include "enersim/ppm.hpp"
#include "enersim/syndata.hpp"
#include "enersim/table.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using namespace enersim;

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot digest missing output " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

void write_manifest(const std::string& prefix, const std::string& subcommand,
                    const json& config, std::uint64_t seed,
                    const std::vector<std::string>& outputs) {
    json m;
    m["subcommand"] = subcommand;
    m["config"] = config;
    m["seed"] = seed;
    m["version"] = kVersion;
    json files = json::array();
    for (const auto& f : outputs) {
        char digest[32];
        std::snprintf(digest, sizeof(digest), "%016llx",
                      static_cast<unsigned long long>(fnv1a_file(f)));
        files.push_back({{"path", f}, {"fnv1a64", digest}});
    }
    m["outputs"] = files;
    std::ofstream out(prefix + "run.json");
    out << m.dump(1) << "\n";
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw InputError(std::string("config parse error: ") + e.what());
    }
}

void write_slices_csv(const std::string& path, const std::vector<std::vector<double>>& slices,
                      double dt, const std::string& value_prefix) {
    std::ofstream out(path);
    out << "time";
    for (std::size_t i = 0; i < slices[0].size(); ++i) out << "," << value_prefix << i;
    out << "\n";
    for (std::size_t k = 0; k < slices.size(); ++k) {
        out << format_real(k * dt);
        for (double v : slices[k]) out << "," << format_real(v);
        out << "\n";
    }
}

// ---------------------------------------------------------------- synth ----

int cmd_synth(const std::string& input, int bins, int depth, int rows, std::uint64_t seed,
              const std::string& order, const std::string& prefix) {
    FeatureTable table = load_table(input);
    BinningScheme scheme = build_bins(table, bins);
    ProbabilityTables tables = fit_tables(table, scheme, depth);

    RngStream rng(seed);
    OrderPolicy policy = order == "random-per-row" ? OrderPolicy::RandomPerRow
                                                  : OrderPolicy::Fixed;
    FeatureTable synth = sample_synthetic(tables, scheme, rows, policy, rng);

    save_table(synth, prefix + "synthetic.csv");
    save_tables_json(tables, scheme, prefix + "tables.json");

    auto corr_orig = pearson_matrix(table);
    auto corr_synth = pearson_matrix(synth);
    {
        std::ofstream out(prefix + "corr_report.csv");
        out << "matrix,feature";
        for (const auto& name : table.column_names) out << "," << name;
        out << "\n";
        auto dump = [&](const char* tag, auto value) {
            for (int a = 0; a < table.n_features(); ++a) {
                out << tag << "," << table.column_names[a];
                for (int b = 0; b < table.n_features(); ++b)
                    out << "," << format_real(value(a, b));
                out << "\n";
            }
        };
        dump("original", [&](int a, int b) { return corr_orig[a][b]; });
        dump("synthetic", [&](int a, int b) { return corr_synth[a][b]; });
        dump("abs_diff",
             [&](int a, int b) { return std::abs(corr_orig[a][b] - corr_synth[a][b]); });
    }

    json cfg = {{"input", input}, {"bins", bins},   {"depth", depth},
                {"rows", rows},   {"order", order}, {"out_prefix", prefix}};
    write_manifest(prefix, "synth", cfg, seed,
                   {prefix + "synthetic.csv", prefix + "tables.json",
                    prefix + "corr_report.csv"});
    return 0;
}

// ------------------------------------------------------------------ mfg ----

int cmd_mfg(const std::string& config_path, const std::string& prefix) {
    json cfg = load_config(config_path);
    auto get = [&](const char* key, double dflt) { return cfg.value(key, dflt); };

    double x_lo = get("x_lo", -25.0), x_hi = get("x_hi", 25.0);
    int n_cells = cfg.value("n_cells", 200);
    MfgParams p;
    p.alpha = get("alpha", 0.2);
    p.r = get("r", 1.0);
    p.q = get("q", 1.0);
    p.h = get("h", 1.0);
    p.k = get("k", 1.0);
    p.grid = Grid1D(x_lo, x_hi, n_cells);
    p.T = get("T", 1.0);
    if (cfg.contains("n_time")) {
        p.n_time = cfg["n_time"].get<int>();
    } else {
        double cfl = get("cfl", 0.9);
        double dt = cfl * p.grid.h() / p.max_drift();
        p.n_time = std::max(1, static_cast<int>(std::ceil(p.T / dt)));
    }
    double mu1 = get("mu1", 10.0), mu2 = get("mu2", 10.0), sigma0 = get("sigma0", 7.0);
    double damping = get("damping", 0.5), tol = get("tol", 1e-6);
    int max_iter = cfg.value("max_iter", 200);
    p.validate();

    auto m0 = initial_density(p.grid, mu1, mu2, sigma0);
    std::vector<double> psi(p.grid.n_cells(), 0.0);
    auto [state, report] = picard_solve(p, m0, psi, damping, tol, max_iter);

    double dt = p.dt();
    write_slices_csv(prefix + "m.csv", state.m, dt, "m");
    write_slices_csv(prefix + "v.csv", state.v, dt, "v");
    write_slices_csv(prefix + "u.csv", state.u, dt, "u");
    {
        std::ofstream out(prefix + "mbar.csv");
        out << "time,mbar\n";
        for (std::size_t k = 0; k < state.mbar.size(); ++k)
            out << format_real(k * dt) << "," << format_real(state.mbar[k]) << "\n";
    }
    {
        json r = {{"iterations", report.iterations},
                  {"converged", report.converged},
                  {"damping", report.damping},
                  {"residuals", report.residuals}};
        std::ofstream out(prefix + "report.json");
        out << r.dump(1) << "\n";
    }

    json resolved = {{"alpha", p.alpha}, {"r", p.r},           {"q", p.q},
                     {"h", p.h},         {"k", p.k},           {"x_lo", x_lo},
                     {"x_hi", x_hi},     {"n_cells", n_cells}, {"T", p.T},
                     {"n_time", p.n_time}, {"mu1", mu1},       {"mu2", mu2},
                     {"sigma0", sigma0}, {"damping", damping}, {"tol", tol},
                     {"max_iter", max_iter}};
    write_manifest(prefix, "mfg", resolved, 0,
                   {prefix + "m.csv", prefix + "v.csv", prefix + "u.csv",
                    prefix + "mbar.csv", prefix + "report.json"});
    return report.converged ? 0 : 3;
}

// ------------------------------------------------------------- morph-mc ----

int cmd_morph_mc(int size, double solvent, double beta, int sweeps, int snapshot_every,
                 std::uint64_t seed, const std::string& prefix) {
    LatticeConfig cfg = init_lattice(size, solvent, seed);
    cfg.beta = beta;
    InteractionMatrix M;
    RngStream rng(seed + 1);  // placement and dynamics use separate streams
    McTrace trace = run_mc(cfg, M, sweeps, snapshot_every, rng);

    std::vector<std::string> outputs;
    {
        std::ofstream out(prefix + "energy.csv");
        out << "sweep,H,acceptance_rate\n";
        for (std::size_t s = 0; s < trace.energy.size(); ++s)
            out << (s + 1) << "," << format_real(trace.energy[s]) << ","
                << format_real(trace.acceptance_rate[s]) << "\n";
        outputs.push_back(prefix + "energy.csv");
    }
    if (sweeps == 0) {
        char name[64];
        std::snprintf(name, sizeof(name), "snap_%06d.ppm", 0);
        write_lattice_ppm(prefix + name, size, cfg.spins);
        outputs.push_back(prefix + name);
    }
    for (const auto& [sweep, spins] : trace.snapshots) {
        char name[64];
        std::snprintf(name, sizeof(name), "snap_%06d.ppm", sweep);
        write_lattice_ppm(prefix + name, size, spins);
        outputs.push_back(prefix + name);
    }

    json resolved = {{"size", size},     {"solvent", solvent},
                     {"beta", beta},     {"sweeps", sweeps},
                     {"snapshot_every", snapshot_every}, {"out_prefix", prefix}};
    write_manifest(prefix, "morph-mc", resolved, seed, outputs);
    return 0;
}

// ------------------------------------------------------------ morph-pde ----

int cmd_morph_pde(const std::string& config_path, const std::string& prefix) {
    json cfg = load_config(config_path);
    double side_length = cfg.value("side_length", 1.0);
    int n = cfg.value("n_cells_per_side", 128);
    Grid2DPeriodic grid(side_length, n);

    PdeParams p;
    p.beta = cfg.value("beta", 6.0);
    p.t_final = cfg.value("T_final", 0.01);
    p.dt = cfg.value("dt", 0.0);
    p.snapshot_every = cfg.value("snapshot_every", 100);
    double epsilon = cfg.value("epsilon", 4.0 * grid.h());
    double solvent_fraction = cfg.value("solvent_fraction", 0.8);
    double amplitude = cfg.value("amplitude", 0.05);
    std::uint64_t seed = cfg.value("seed", 1ULL);
    bool dump_fields = cfg.value("dump_fields", false);

    KernelSpec kernel = make_kernel(grid, epsilon);
    FieldPair f0 = init_random_mixture(grid, solvent_fraction, amplitude, seed);
    if (p.dt > 0 && p.dt > stable_dt(f0, kernel, p.beta))
        throw StabilityError("morph-pde: dt exceeds the admissible " +
                             std::to_string(stable_dt(f0, kernel, p.beta)));

    auto [snaps, diag] = run_pde(f0, kernel, p);

    std::vector<std::string> outputs;
    {
        std::ofstream out(prefix + "diagnostics.csv");
        out << "step,time,mass_m,mass_phi,min_m,max_m,min_phi,max_phi,max_bound_violation\n";
        for (std::size_t i = 0; i < diag.step.size(); ++i)
            out << diag.step[i] << "," << format_real(diag.time[i]) << ","
                << format_real(diag.mass_m[i]) << "," << format_real(diag.mass_phi[i]) << ","
                << format_real(diag.min_m[i]) << "," << format_real(diag.max_m[i]) << ","
                << format_real(diag.min_phi[i]) << "," << format_real(diag.max_phi[i]) << ","
                << format_real(diag.max_bound_violation[i]) << "\n";
        outputs.push_back(prefix + "diagnostics.csv");
    }
    for (const auto& [step, fields] : snaps) {
        char name[64];
        std::snprintf(name, sizeof(name), "snap_%06d.ppm", step);
        write_fields_ppm(prefix + name, fields);
        outputs.push_back(prefix + name);
        if (dump_fields) {
            std::snprintf(name, sizeof(name), "fields_%06d.csv", step);
            std::ofstream out(prefix + name);
            out << "i,j,m,phi\n";
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    out << i << "," << j << "," << format_real(fields.m[i * n + j]) << ","
                        << format_real(fields.phi[i * n + j]) << "\n";
            outputs.push_back(prefix + name);
        }
    }

    json resolved = {{"side_length", side_length},
                     {"n_cells_per_side", n},
                     {"beta", p.beta},
                     {"epsilon", epsilon},
                     {"solvent_fraction", solvent_fraction},
                     {"amplitude", amplitude},
                     {"T_final", p.t_final},
                     {"dt", p.dt},
                     {"snapshot_every", p.snapshot_every},
                     {"seed", seed}};
    write_manifest(prefix, "morph-pde", resolved, seed, outputs);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"enersim: synthetic data, mean-field-game cooling, and morphology simulators"};
    app.require_subcommand(1);

    // synth
    std::string synth_input, synth_order = "fixed", synth_prefix = "";
    int synth_bins = 8, synth_depth = 3, synth_rows = 1000;
    std::uint64_t synth_seed = 1;
    auto* synth = app.add_subcommand("synth", "fit binned distributions and sample a synthetic table");
    synth->add_option("--input", synth_input, "input CSV")->required();
    synth->add_option("--bins", synth_bins, "bins per feature (N)");
    synth->add_option("--depth", synth_depth, "conditioning depth 1|2|3");
    synth->add_option("--rows", synth_rows, "synthetic rows");
    synth->add_option("--seed", synth_seed, "RNG seed");
    synth->add_option("--order", synth_order, "fixed | random-per-row");
    synth->add_option("--out-prefix", synth_prefix, "output file prefix");

    // mfg
    std::string mfg_config, mfg_prefix = "";
    auto* mfg = app.add_subcommand("mfg", "solve the distributed-cooling mean-field game");
    mfg->add_option("--config", mfg_config, "JSON config")->required();
    mfg->add_option("--out-prefix", mfg_prefix, "output file prefix");

    // morph-mc
    int mc_size = 64, mc_sweeps = 500, mc_snap = 50;
    double mc_solvent = 0.8, mc_beta = 2.0;
    std::uint64_t mc_seed = 1;
    std::string mc_prefix = "";
    auto* mc = app.add_subcommand("morph-mc", "Kawasaki-dynamics lattice Monte Carlo");
    mc->add_option("--size", mc_size, "lattice side");
    mc->add_option("--solvent", mc_solvent, "solvent fraction in [0,1]");
    mc->add_option("--beta", mc_beta, "inverse temperature");
    mc->add_option("--sweeps", mc_sweeps, "number of sweeps");
    mc->add_option("--snapshot-every", mc_snap, "snapshot cadence in sweeps");
    mc->add_option("--seed", mc_seed, "RNG seed");
    mc->add_option("--out-prefix", mc_prefix, "output file prefix");

    // morph-pde
    std::string pde_config, pde_prefix = "";
    auto* pde = app.add_subcommand("morph-pde", "nonlocal continuum morphology integrator");
    pde->add_option("--config", pde_config, "JSON config")->required();
    pde->add_option("--out-prefix", pde_prefix, "output file prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*synth) {
            if (synth_bins < 1 || synth_depth < 1 || synth_depth > 3 || synth_rows < 1) {
                std::cerr << "enersim synth: --bins >= 1, --depth in {1,2,3}, --rows >= 1\n";
                return 2;
            }
            if (synth_order != "fixed" && synth_order != "random-per-row") {
                std::cerr << "enersim synth: --order must be fixed or random-per-row\n";
                return 2;
            }
            return cmd_synth(synth_input, synth_bins, synth_depth, synth_rows, synth_seed,
                             synth_order, synth_prefix);
        }
        if (*mfg) return cmd_mfg(mfg_config, mfg_prefix);
        if (*mc) {
            if (mc_size < 2 || mc_solvent < 0 || mc_solvent > 1 || mc_beta < 0 || mc_sweeps < 0) {
                std::cerr << "enersim morph-mc: invalid --size/--solvent/--beta/--sweeps\n";
                return 2;
            }
            return cmd_morph_mc(mc_size, mc_solvent, mc_beta, mc_sweeps, mc_snap, mc_seed,
                                mc_prefix);
        }
        if (*pde) return cmd_morph_pde(pde_config, pde_prefix);
    } catch (const InputError& e) {
        std::cerr << "enersim: " << e.what() << "\n";
        return 2;
    } catch (const StabilityError& e) {
        std::cerr << "enersim: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "enersim: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateFeatureError& e) {
        std::cerr << "enersim: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "enersim: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
