#pragma once

#include <vector>

#include "enersim/grid.hpp"

namespace enersim {

// Model parameters for the distributed-cooling game. The drift is
// f(x,u) = -alpha*x + sigma*u + c with sigma = -alpha*(x_hi - x_lo) and
// c = alpha*x_hi, so f(x_hi, 0) = f(x_lo, 1) = 0 identically.
struct MfgParams {
    double alpha = 0.2;
    double r = 1.0, q = 1.0, h = 1.0, k = 1.0;
    Grid1D grid{-25.0, 25.0, 200};
    double T = 1.0;
    int n_time = 1000;

    double sigma() const { return -alpha * (grid.x_hi() - grid.x_lo()); }
    double c() const { return alpha * grid.x_hi(); }
    double dt() const { return T / n_time; }
    double max_drift() const { return alpha * (grid.x_hi() - grid.x_lo()); }
    void validate() const;
};

// Space-time solution on n_time+1 slices. u holds the bang-bang control from
// the final backward solve; m is the density driven by the damped control.
struct MfgState {
    std::vector<std::vector<double>> m;  // (n_time+1) x n_cells
    std::vector<std::vector<double>> v;
    std::vector<std::vector<double>> u;
    std::vector<double> mbar;            // first moment per slice
};

struct PicardReport {
    int iterations = 0;
    std::vector<double> residuals;  // L1 distance of successive m trajectories
    bool converged = false;
    double damping = 0.5;
};

double drift(double x, double u, const MfgParams& params);
double running_cost(double x, double u, double mbar, const MfgParams& params);

// First moment h * sum(x_i * m_i); requires unit mass within 1e-6.
double mean_temperature(const std::vector<double>& m_slice, const Grid1D& grid);

// Bang-bang maximizer of -f(x,s)*dv_dx - g(x,s,mbar) over s in [0,1].
// Ties resolve to 0.
double optimal_control(double dv_dx, double mbar, const MfgParams& params);

// Renormalized two-bump Gaussian initial datum.
std::vector<double> initial_density(const Grid1D& grid, double mu1, double mu2, double sigma0);

// Explicit conservative upwind transport with zero boundary fluxes.
// u has n_time+1 slices; slice t drives the step t -> t+1.
std::pair<std::vector<std::vector<double>>, std::vector<double>> kfp_forward(
    const std::vector<std::vector<double>>& u, const std::vector<double>& m0,
    const MfgParams& params);

// Explicit backward march of the HJB equation; returns (v, u) with the
// selected control per slice.
std::pair<std::vector<std::vector<double>>, std::vector<std::vector<double>>> hjb_backward(
    const std::vector<double>& mbar, const MfgParams& params, const std::vector<double>& psi);

std::pair<MfgState, PicardReport> picard_solve(const MfgParams& params,
                                               const std::vector<double>& m0,
                                               const std::vector<double>& psi, double damping,
                                               double tol, int max_iter);

}  // namespace enersim
