#include "enersim/morph_mc.hpp"

#include <cmath>

namespace enersim {

LatticeConfig init_lattice(int side, double solvent_fraction, std::uint64_t seed) {
    if (side < 2) throw InputError("init_lattice: side must be >= 2");
    if (solvent_fraction < 0 || solvent_fraction > 1)
        throw InputError("init_lattice: solvent_fraction must lie in [0,1]");
    const int total = side * side;
    const int n_solvent = static_cast<int>(std::lround(solvent_fraction * total));
    const int n_polymer = total - n_solvent;
    const int n_a = n_polymer / 2 + n_polymer % 2;  // counts differ by at most 1
    const int n_b = n_polymer / 2;

    LatticeConfig cfg{Grid2DPeriodic(double(side), side), {}, 1.0};
    cfg.spins.reserve(total);
    cfg.spins.assign(n_a, -1);
    cfg.spins.insert(cfg.spins.end(), n_solvent, 0);
    cfg.spins.insert(cfg.spins.end(), n_b, +1);

    RngStream rng(seed);
    for (int i = total - 1; i > 0; --i)
        std::swap(cfg.spins[i], cfg.spins[rng.uniform_int(i + 1)]);
    return cfg;
}

double hamiltonian(const LatticeConfig& config, const InteractionMatrix& M) {
    const int n = config.grid.n();
    double e = 0.0;
    // Right and down bonds enumerate every unordered nearest-neighbor pair
    // once (twice the same pair for n = 2, matching the periodic bond set).
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int s = config.spin(i, j);
            e += M.at(s, config.spin(i, j + 1));
            e += M.at(s, config.spin(i + 1, j));
        }
    return e;
}

namespace {

// Directed-bond energy around the pair {a, b}. Bonds between a and b enter
// symmetrically from both sides, so they cancel in the swap difference.
double local_energy(const LatticeConfig& cfg, int ai, int aj, int bi, int bj,
                    const InteractionMatrix& M) {
    static const int di[4] = {1, -1, 0, 0};
    static const int dj[4] = {0, 0, 1, -1};
    double e = 0.0;
    const int sa = cfg.spin(ai, aj), sb = cfg.spin(bi, bj);
    for (int d = 0; d < 4; ++d) {
        e += M.at(sa, cfg.spin(ai + di[d], aj + dj[d]));
        e += M.at(sb, cfg.spin(bi + di[d], bj + dj[d]));
    }
    return e;
}

bool adjacent(const Grid2DPeriodic& g, int ai, int aj, int bi, int bj) {
    int wi = g.wrap(ai), wj = g.wrap(aj), vi = g.wrap(bi), vj = g.wrap(bj);
    int ddi = std::abs(wi - vi);
    int ddj = std::abs(wj - vj);
    if (ddi == g.n() - 1) ddi = 1;
    if (ddj == g.n() - 1) ddj = 1;
    return ddi + ddj == 1;
}

}  // namespace

double delta_energy(LatticeConfig& config, int ai, int aj, int bi, int bj,
                    const InteractionMatrix& M) {
    if (!adjacent(config.grid, ai, aj, bi, bj))
        throw InputError("delta_energy: sites are not nearest neighbors");
    int& sa = config.spins[config.grid.idx(ai, aj)];
    int& sb = config.spins[config.grid.idx(bi, bj)];
    if (sa == sb) return 0.0;
    double before = local_energy(config, ai, aj, bi, bj, M);
    std::swap(sa, sb);
    double after = local_energy(config, ai, aj, bi, bj, M);
    std::swap(sa, sb);
    return after - before;
}

SweepResult kawasaki_sweep(LatticeConfig& config, const InteractionMatrix& M, RngStream& rng) {
    static const int di[4] = {1, -1, 0, 0};
    static const int dj[4] = {0, 0, 1, -1};
    const int n = config.grid.n();
    SweepResult res;
    res.proposed = long(n) * n;
    for (long p = 0; p < res.proposed; ++p) {
        int site = static_cast<int>(rng.uniform_int(config.grid.size()));
        int d = static_cast<int>(rng.uniform_int(4));
        int ai = site / n, aj = site % n;
        int bi = config.grid.wrap(ai + di[d]), bj = config.grid.wrap(aj + dj[d]);
        double dh = delta_energy(config, ai, aj, bi, bj, M);
        if (dh <= 0.0 || rng.uniform() < std::exp(-config.beta * dh)) {
            std::swap(config.spins[config.grid.idx(ai, aj)],
                      config.spins[config.grid.idx(bi, bj)]);
            res.accepted++;
            res.energy_change += dh;
        }
    }
    return res;
}

McTrace run_mc(LatticeConfig& config, const InteractionMatrix& M, int sweeps,
               int snapshot_every, RngStream& rng) {
    if (sweeps < 0) throw InputError("run_mc: sweeps must be >= 0");
    if (snapshot_every < 1) throw InputError("run_mc: snapshot_every must be >= 1");
    McTrace trace;
    double energy = hamiltonian(config, M);
    for (int s = 1; s <= sweeps; ++s) {
        SweepResult r = kawasaki_sweep(config, M, rng);
        energy += r.energy_change;
        trace.energy.push_back(energy);
        trace.acceptance_rate.push_back(double(r.accepted) / double(r.proposed));
        if (s % snapshot_every == 0) trace.snapshots.emplace_back(s, config.spins);
    }
    return trace;
}

}  // namespace enersim
