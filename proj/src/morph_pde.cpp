#include "enersim/morph_pde.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "enersim/errors.hpp"

namespace enersim {

KernelSpec make_kernel(const Grid2DPeriodic& grid, double epsilon) {
    if (!(epsilon > 0) || epsilon >= grid.side_length() / 2)
        throw InputError("make_kernel: need 0 < epsilon < side_length/2");
    const int n = grid.n();
    const double h = grid.h();
    KernelSpec k;
    k.epsilon = epsilon;
    k.samples.assign(grid.size(), 0.0);

    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double dx = h * std::min(i, n - i);
            double dy = h * std::min(j, n - j);
            double rho = std::hypot(dx, dy);
            if (rho < epsilon) {
                double t = rho / epsilon;
                k.samples[i * n + j] = std::exp(-1.0 / (1.0 - t * t));
                sum += k.samples[i * n + j];
            }
        }
    const double mass = sum * h * h;
    for (double& v : k.samples) v /= mass;

    // Centered-difference gradient; nonzero offsets stored as signed
    // min-image displacements for the truncated convolution.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double gx = (k.samples[grid.idx(i + 1, j)] - k.samples[grid.idx(i - 1, j)]) / (2 * h);
            double gy = (k.samples[grid.idx(i, j + 1)] - k.samples[grid.idx(i, j - 1)]) / (2 * h);
            if (gx != 0.0 || gy != 0.0) {
                int si = i <= n / 2 ? i : i - n;
                int sj = j <= n / 2 ? j : j - n;
                k.grad_offsets.emplace_back(si, sj, gx, gy);
            }
        }
    return k;
}

std::pair<Field2D, Field2D> conv_grad(const Field2D& field, const KernelSpec& kernel,
                                      const Grid2DPeriodic& grid) {
    if (field.size() != static_cast<std::size_t>(grid.size()) ||
        kernel.samples.size() != field.size())
        throw DimensionError("conv_grad: field does not match the kernel grid");
    const int n = grid.n();
    const double cell = grid.h() * grid.h();
    Field2D outx(grid.size(), 0.0), outy(grid.size(), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double sx = 0.0, sy = 0.0;
            for (const auto& [di, dj, gx, gy] : kernel.grad_offsets) {
                double f = field[grid.idx(i - di, j - dj)];
                sx += gx * f;
                sy += gy * f;
            }
            outx[i * n + j] = cell * sx;
            outy[i * n + j] = cell * sy;
        }
    return {std::move(outx), std::move(outy)};
}

namespace {

double max_velocity(const Field2D& wx, const Field2D& wy) {
    double m = 0.0;
    for (std::size_t i = 0; i < wx.size(); ++i)
        m = std::max(m, std::max(std::abs(wx[i]), std::abs(wy[i])));
    return m;
}

}  // namespace

double stable_dt(const FieldPair& fields, const KernelSpec& kernel, double beta) {
    const double h = fields.grid.h();
    double dt = h * h / 8.0;
    if (beta == 0.0) return dt;
    auto [cx, cy] = conv_grad(fields.m, kernel, fields.grid);
    double wmax = 2.0 * beta * max_velocity(cx, cy);
    if (wmax > 0) dt = std::min(dt, h / (2.0 * wmax));
    return dt;
}

void step_explicit(FieldPair& fields, const KernelSpec& kernel, const PdeParams& params,
                   double dt) {
    const Grid2DPeriodic& g = fields.grid;
    const int n = g.n();
    const double h = g.h();

    Field2D cx, cy;
    if (params.beta != 0.0) {
        std::tie(cx, cy) = conv_grad(fields.m, kernel, g);
        for (double& v : cx) v *= 2.0 * params.beta;
        for (double& v : cy) v *= 2.0 * params.beta;
    } else {
        cx.assign(g.size(), 0.0);
        cy.assign(g.size(), 0.0);
    }

    double wmax = max_velocity(cx, cy);
    double dt_max = h * h / 8.0;
    if (wmax > 0) dt_max = std::min(dt_max, h / (2.0 * wmax));
    if (dt > dt_max)
        throw StabilityError("step_explicit: dt = " + std::to_string(dt) +
                             " exceeds admissible " + std::to_string(dt_max));

    const Field2D& m = fields.m;
    const Field2D& phi = fields.phi;
    Field2D fx_m(g.size()), fx_p(g.size()), fy_m(g.size()), fy_p(g.size());

    // Face fluxes: fx_* at the face between (i,j) and (i+1,j), fy_* between
    // (i,j) and (i,j+1). Flux vector is grad(field) - coeff * w.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int a = i * n + j;
            {
                const int b = g.idx(i + 1, j);
                double wf = 0.5 * (cx[a] + cx[b]);
                int up = wf > 0 ? a : b;
                fx_m[a] = (m[b] - m[a]) / h - (phi[up] - m[up] * m[up]) * wf;
                fx_p[a] = (phi[b] - phi[a]) / h - m[up] * (1.0 - phi[up]) * wf;
            }
            {
                const int b = g.idx(i, j + 1);
                double wf = 0.5 * (cy[a] + cy[b]);
                int up = wf > 0 ? a : b;
                fy_m[a] = (m[b] - m[a]) / h - (phi[up] - m[up] * m[up]) * wf;
                fy_p[a] = (phi[b] - phi[a]) / h - m[up] * (1.0 - phi[up]) * wf;
            }
        }

    Field2D m_new(g.size()), p_new(g.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int a = i * n + j;
            const int lx = g.idx(i - 1, j);
            const int ly = g.idx(i, j - 1);
            m_new[a] = m[a] + dt / h * (fx_m[a] - fx_m[lx] + fy_m[a] - fy_m[ly]);
            p_new[a] = phi[a] + dt / h * (fx_p[a] - fx_p[lx] + fy_p[a] - fy_p[ly]);
        }
    fields.m = std::move(m_new);
    fields.phi = std::move(p_new);
}

std::pair<std::vector<std::pair<int, FieldPair>>, PdeDiagnostics> run_pde(
    const FieldPair& fields0, const KernelSpec& kernel, const PdeParams& params) {
    if (params.t_final <= 0) throw InputError("run_pde: t_final must be positive");
    FieldPair f = fields0;
    const double cell = f.grid.h() * f.grid.h();

    // Fixed dt when given; otherwise re-pick the admissible step every step,
    // since the advective velocity evolves with m. The factor 1/2 keeps the
    // step strictly inside the marginal bound.
    const bool adaptive = !(params.dt > 0);
    const double safety = 0.5;
    double dt = adaptive ? safety * stable_dt(f, kernel, params.beta) : params.dt;
    long n_steps = adaptive ? -1 : static_cast<long>(std::ceil(params.t_final / dt - 1e-12));

    std::vector<std::pair<int, FieldPair>> snaps;
    PdeDiagnostics diag;

    auto record = [&](int step, double time) {
        double mm = 0, mp = 0;
        double min_m = f.m[0], max_m = f.m[0], min_p = f.phi[0], max_p = f.phi[0];
        double viol = 0.0;
        for (std::size_t i = 0; i < f.m.size(); ++i) {
            mm += f.m[i];
            mp += f.phi[i];
            min_m = std::min(min_m, f.m[i]);
            max_m = std::max(max_m, f.m[i]);
            min_p = std::min(min_p, f.phi[i]);
            max_p = std::max(max_p, f.phi[i]);
            double b = f.m[i] * f.m[i] - f.phi[i];
            if (b > viol) viol = b;
            double outside = std::max(f.phi[i] - 1.0, -f.phi[i]);
            if (outside > viol) viol = outside;
        }
        diag.step.push_back(step);
        diag.time.push_back(time);
        diag.mass_m.push_back(mm * cell);
        diag.mass_phi.push_back(mp * cell);
        diag.min_m.push_back(min_m);
        diag.max_m.push_back(max_m);
        diag.min_phi.push_back(min_p);
        diag.max_phi.push_back(max_p);
        diag.max_bound_violation.push_back(viol);
        snaps.emplace_back(step, f);
    };

    record(0, 0.0);
    double t = 0.0;
    const double t_end = params.t_final * (1.0 - 1e-12);
    for (long s = 1; n_steps < 0 ? t < t_end : s <= n_steps; ++s) {
        if (adaptive) dt = safety * stable_dt(f, kernel, params.beta);
        double step_dt = std::min(dt, params.t_final - t);
        step_explicit(f, kernel, params, step_dt);
        t += step_dt;
        double probe = 0.0;
        for (double v : f.m) probe += v;
        for (double v : f.phi) probe += v;
        if (!std::isfinite(probe))
            throw NumericalError("run_pde: non-finite field at step " + std::to_string(s));
        bool last = n_steps < 0 ? t >= t_end : s == n_steps;
        if (s % params.snapshot_every == 0 || last) record(static_cast<int>(s), t);
    }
    return {std::move(snaps), std::move(diag)};
}

FieldPair init_random_mixture(const Grid2DPeriodic& grid, double solvent_fraction,
                              double amplitude, std::uint64_t seed) {
    if (solvent_fraction < 0 || solvent_fraction > 1)
        throw InputError("init_random_mixture: solvent_fraction must lie in [0,1]");
    const double phi_bar = 1.0 - solvent_fraction;
    if (amplitude < 0 || amplitude > std::min(phi_bar, 1.0 - phi_bar) / 2.0)
        throw InputError("init_random_mixture: amplitude must lie in [0, min(phi_bar,1-phi_bar)/2]");

    FieldPair f{grid, Field2D(grid.size(), 0.0), Field2D(grid.size(), phi_bar)};
    if (amplitude == 0.0) return f;

    RngStream rng(seed);
    const int sz = grid.size();
    double mean_p = 0.0, mean_m = 0.0;
    for (int i = 0; i < sz; ++i) {
        f.phi[i] = rng.uniform(-amplitude, amplitude);
        mean_p += f.phi[i];
    }
    for (int i = 0; i < sz; ++i) {
        f.m[i] = rng.uniform(-amplitude, amplitude);
        mean_m += f.m[i];
    }
    mean_p /= sz;
    mean_m /= sz;
    for (int i = 0; i < sz; ++i) {
        f.phi[i] += phi_bar - mean_p;
        f.m[i] -= mean_m;
        if (f.m[i] * f.m[i] >= f.phi[i])
            throw InputError("init_random_mixture: m^2 < phi violated; lower the amplitude");
    }
    return f;
}

}  // namespace enersim
