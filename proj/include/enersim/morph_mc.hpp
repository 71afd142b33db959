#pragma once

#include <array>
#include <vector>

#include "enersim/grid.hpp"
#include "enersim/rng.hpp"

namespace enersim {

// Symmetric repulsion matrix indexed by spin values -1, 0, +1.
struct InteractionMatrix {
    // Rows/columns ordered (-1, 0, +1): A, solvent, B.
    std::array<std::array<double, 3>, 3> m{{{0, 1, 4}, {1, 0, 1}, {4, 1, 0}}};

    double at(int spin_a, int spin_b) const { return m[spin_a + 1][spin_b + 1]; }
};

// 2-D periodic spin field with values in {-1, 0, +1}: polymer A, solvent S,
// polymer B. Species counts are conserved by Kawasaki exchanges.
struct LatticeConfig {
    Grid2DPeriodic grid;
    std::vector<int> spins;  // row-major, grid.size() entries
    double beta = 1.0;

    int spin(int i, int j) const { return spins[grid.idx(i, j)]; }
};

struct SweepResult {
    long accepted = 0;
    long proposed = 0;
    double energy_change = 0.0;
};

LatticeConfig init_lattice(int side, double solvent_fraction, std::uint64_t seed);

// Sum of interaction entries over unordered nearest-neighbor bonds.
double hamiltonian(const LatticeConfig& config, const InteractionMatrix& M);

// Energy change of swapping the spins at two adjacent sites; equals the
// full-recompute difference.
double delta_energy(LatticeConfig& config, int ai, int aj, int bi, int bj,
                    const InteractionMatrix& M);

// side^2 Metropolis proposals: uniform site, uniform neighbor direction,
// accept with probability min(1, exp(-beta * dH)).
SweepResult kawasaki_sweep(LatticeConfig& config, const InteractionMatrix& M, RngStream& rng);

struct McTrace {
    std::vector<double> energy;            // H after each sweep
    std::vector<double> acceptance_rate;   // per sweep
    std::vector<std::pair<int, std::vector<int>>> snapshots;  // (sweep, spins)
};

McTrace run_mc(LatticeConfig& config, const InteractionMatrix& M, int sweeps,
               int snapshot_every, RngStream& rng);

}  // namespace enersim
