#include "enersim/mfg.hpp"

#include <cmath>
#include <string>

#include "enersim/numerics.hpp"

namespace enersim {

void MfgParams::validate() const {
    if (alpha <= 0 || r <= 0)
        throw InputError("MfgParams: alpha and r must be positive");
    if (q < 0 || h < 0 || k < 0)
        throw InputError("MfgParams: cost weights must be nonnegative");
    if (T <= 0 || n_time < 1) throw InputError("MfgParams: need T > 0 and n_time >= 1");
    double dt_max = grid.h() / max_drift();
    if (dt() > dt_max)
        throw StabilityError("MfgParams: CFL violated, dt = " + std::to_string(dt()) +
                             " exceeds admissible " + std::to_string(dt_max));
}

double drift(double x, double u, const MfgParams& params) {
    return -params.alpha * x + params.sigma() * u + params.c();
}

double running_cost(double x, double u, double mbar, const MfgParams& params) {
    double mbar_pos = (mbar + std::abs(mbar)) / 2.0;
    double mbar_neg = (mbar - std::abs(mbar)) / 2.0;
    return params.r * u + params.q * x * x + params.h * mbar_pos * u +
           params.k * mbar_neg * (1.0 - u);
}

double mean_temperature(const std::vector<double>& m_slice, const Grid1D& grid) {
    double mass = integrate_midpoint(m_slice, grid);
    if (std::abs(mass - 1.0) > 1e-6)
        throw ConsistencyError("mean_temperature: density mass deviates from 1 by " +
                               std::to_string(mass - 1.0));
    double s = 0.0;
    for (int i = 0; i < grid.n_cells(); ++i) s += grid.center(i) * m_slice[i];
    return grid.h() * s;
}

double optimal_control(double dv_dx, double mbar, const MfgParams& params) {
    // The maximand is affine in s; only the s-coefficient decides the argmax.
    double mbar_pos = (mbar + std::abs(mbar)) / 2.0;
    double mbar_neg = (mbar - std::abs(mbar)) / 2.0;
    double a = -params.sigma() * dv_dx - params.r - params.h * mbar_pos + params.k * mbar_neg;
    return a > 0.0 ? 1.0 : 0.0;
}

std::vector<double> initial_density(const Grid1D& grid, double mu1, double mu2, double sigma0) {
    if (sigma0 <= 0) throw InputError("initial_density: sigma0 must be positive");
    std::vector<double> m(grid.n_cells());
    double pref = 1.0 / std::sqrt(2.0 * M_PI * sigma0 * sigma0);
    for (int i = 0; i < grid.n_cells(); ++i) {
        double x = grid.center(i);
        double a = (x + mu1) / sigma0;
        double b = (x - mu2) / sigma0;
        m[i] = pref * (std::exp(-a * a) + std::exp(-b * b));
    }
    double mass = integrate_midpoint(m, grid);
    if (mass < 1e-30)
        throw InputError("initial_density: bumps lie entirely outside the domain");
    for (double& v : m) v /= mass;
    return m;
}

std::pair<std::vector<std::vector<double>>, std::vector<double>> kfp_forward(
    const std::vector<std::vector<double>>& u, const std::vector<double>& m0,
    const MfgParams& params) {
    params.validate();
    const Grid1D& g = params.grid;
    const int n = g.n_cells();
    const int K = params.n_time;
    const double dt = params.dt();
    const double h = g.h();

    std::vector<std::vector<double>> m(K + 1, std::vector<double>(n));
    std::vector<double> mbar(K + 1);
    m[0] = m0;
    mbar[0] = mean_temperature(m0, g);

    std::vector<double> flux(n + 1, 0.0);  // flux[0] = flux[n] = 0
    for (int t = 0; t < K; ++t) {
        const auto& mt = m[t];
        const auto& ut = u[t];
        for (int i = 1; i < n; ++i) {
            double u_face = 0.5 * (ut[i - 1] + ut[i]);
            double f = drift(g.interface(i), u_face, params);
            flux[i] = f > 0 ? f * mt[i - 1] : f * mt[i];
        }
        for (int i = 0; i < n; ++i)
            m[t + 1][i] = mt[i] - dt / h * (flux[i + 1] - flux[i]);
        mbar[t + 1] = mean_temperature(m[t + 1], g);
    }
    return {std::move(m), std::move(mbar)};
}

namespace {

// One-sided gradient of a v-slice at cell i, upwinded against the drift sign:
// drift >= 0 takes the backward difference, drift < 0 the forward one, with
// the only available side used at the domain ends.
double upwind_gradient(const std::vector<double>& v, int i, double f, double h) {
    const int n = static_cast<int>(v.size());
    bool backward = f >= 0.0;
    if (i == 0) backward = false;
    if (i == n - 1) backward = true;
    return backward ? (v[i] - v[i - 1]) / h : (v[i + 1] - v[i]) / h;
}

}  // namespace

std::pair<std::vector<std::vector<double>>, std::vector<std::vector<double>>> hjb_backward(
    const std::vector<double>& mbar, const MfgParams& params, const std::vector<double>& psi) {
    params.validate();
    const Grid1D& g = params.grid;
    const int n = g.n_cells();
    const int K = params.n_time;
    const double dt = params.dt();
    const double h = g.h();

    std::vector<std::vector<double>> v(K + 1, std::vector<double>(n));
    std::vector<std::vector<double>> u(K + 1, std::vector<double>(n));
    v[K] = psi;

    auto select = [&](const std::vector<double>& vk, int i, double mb, double& best_val) {
        double x = g.center(i);
        double f0 = drift(x, 0.0, params);
        double f1 = drift(x, 1.0, params);
        double val0 = -f0 * upwind_gradient(vk, i, f0, h) - running_cost(x, 0.0, mb, params);
        double val1 = -f1 * upwind_gradient(vk, i, f1, h) - running_cost(x, 1.0, mb, params);
        if (val1 > val0) {
            best_val = val1;
            return 1.0;
        }
        best_val = val0;
        return 0.0;  // tie-break: off
    };

    for (int k = K; k >= 1; --k) {
        for (int i = 0; i < n; ++i) {
            double hval;
            u[k][i] = select(v[k], i, mbar[k], hval);
            v[k - 1][i] = v[k][i] + dt * hval;
        }
    }
    for (int i = 0; i < n; ++i) {
        double hval;
        u[0][i] = select(v[0], i, mbar[0], hval);
    }
    return {std::move(v), std::move(u)};
}

std::pair<MfgState, PicardReport> picard_solve(const MfgParams& params,
                                               const std::vector<double>& m0,
                                               const std::vector<double>& psi, double damping,
                                               double tol, int max_iter) {
    params.validate();
    if (damping <= 0 || damping > 1) throw InputError("picard_solve: damping must be in (0,1]");
    if (tol <= 0 || max_iter < 1) throw InputError("picard_solve: bad tol or max_iter");

    const Grid1D& g = params.grid;
    const int n = g.n_cells();
    const int K = params.n_time;

    std::vector<std::vector<double>> u_damped(K + 1, std::vector<double>(n, 0.0));
    auto [m_prev, mbar] = kfp_forward(u_damped, m0, params);

    PicardReport report;
    report.damping = damping;
    MfgState state;

    for (int it = 0; it < max_iter; ++it) {
        auto [v, u_raw] = hjb_backward(mbar, params, psi);
        for (int k = 0; k <= K; ++k)
            for (int i = 0; i < n; ++i)
                u_damped[k][i] = (1.0 - damping) * u_damped[k][i] + damping * u_raw[k][i];
        auto [m_next, mbar_next] = kfp_forward(u_damped, m0, params);

        double resid = 0.0;
        for (int k = 0; k <= K; ++k)
            resid = std::max(resid, norm_l1_diff(m_next[k], m_prev[k], g));
        if (!std::isfinite(resid))
            throw NumericalError("picard_solve: NaN in iterate " + std::to_string(it + 1));
        report.residuals.push_back(resid);
        report.iterations = it + 1;

        state.m = std::move(m_next);
        state.v = std::move(v);
        state.u = std::move(u_raw);
        state.mbar = mbar_next;
        m_prev = state.m;
        mbar = std::move(mbar_next);

        if (resid <= tol) {
            report.converged = true;
            break;
        }
    }
    return {std::move(state), std::move(report)};
}

}  // namespace enersim
