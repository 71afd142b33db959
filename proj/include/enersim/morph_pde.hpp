#pragma once

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "enersim/grid.hpp"
#include "enersim/rng.hpp"

namespace enersim {

using Field2D = std::vector<double>;  // row-major on a Grid2DPeriodic

// Magnetization m and polymer concentration phi; 1 - phi is the solvent
// fraction. phi in [0,1] and m^2 <= phi are monitored, not enforced.
struct FieldPair {
    Grid2DPeriodic grid;
    Field2D m;
    Field2D phi;
};

// Compactly supported radial bump kernel sampled on the periodic grid,
// normalized to unit discrete mass.
struct KernelSpec {
    double epsilon = 0.0;
    Field2D samples;  // J at displacement (i*h, j*h), min-image wrapped
    // Nonzero offsets of the centered-difference gradient of J, for the
    // truncated-support fast convolution path.
    std::vector<std::tuple<int, int, double, double>> grad_offsets;  // (di, dj, gx, gy)
};

struct PdeParams {
    double beta = 1.0;
    double t_final = 1.0;
    double dt = 0.0;  // 0 = pick automatically from the stability bound
    int snapshot_every = 100;
};

struct PdeDiagnostics {
    std::vector<int> step;
    std::vector<double> time, mass_m, mass_phi;
    std::vector<double> min_m, max_m, min_phi, max_phi, max_bound_violation;
};

KernelSpec make_kernel(const Grid2DPeriodic& grid, double epsilon);

// Circular convolution of the field with the two components of grad J.
std::pair<Field2D, Field2D> conv_grad(const Field2D& field, const KernelSpec& kernel,
                                      const Grid2DPeriodic& grid);

// Admissible explicit step for the current state: min(h^2/8, h/(2 max|w|))
// with w = 2*beta*(grad J * m).
double stable_dt(const FieldPair& fields, const KernelSpec& kernel, double beta);

// One conservative Euler step: central diffusion, advective face flux
// upwinded by the face velocity sign with the nonlinear coefficient from the
// upwind cell. Both fields see the convolution of the pre-step m.
void step_explicit(FieldPair& fields, const KernelSpec& kernel, const PdeParams& params,
                   double dt);

std::pair<std::vector<std::pair<int, FieldPair>>, PdeDiagnostics> run_pde(
    const FieldPair& fields0, const KernelSpec& kernel, const PdeParams& params);

FieldPair init_random_mixture(const Grid2DPeriodic& grid, double solvent_fraction,
                              double amplitude, std::uint64_t seed);

}  // namespace enersim
