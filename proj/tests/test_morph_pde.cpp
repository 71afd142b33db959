#include <doctest.h>

#include <cmath>
#include <vector>

#include "enersim/morph_pde.hpp"

using namespace enersim;

namespace {

// Full O(n^4) circular convolution with the centered-difference kernel
// gradient, used as the oracle for the truncated fast path.
std::pair<Field2D, Field2D> conv_grad_direct(const Field2D& field, const KernelSpec& kernel,
                                             const Grid2DPeriodic& g) {
    const int n = g.n();
    const double h = g.h();
    Field2D gx(g.size()), gy(g.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            gx[i * n + j] =
                (kernel.samples[g.idx(i + 1, j)] - kernel.samples[g.idx(i - 1, j)]) / (2 * h);
            gy[i * n + j] =
                (kernel.samples[g.idx(i, j + 1)] - kernel.samples[g.idx(i, j - 1)]) / (2 * h);
        }
    Field2D ox(g.size(), 0.0), oy(g.size(), 0.0);
    for (int xi = 0; xi < n; ++xi)
        for (int xj = 0; xj < n; ++xj)
            for (int yi = 0; yi < n; ++yi)
                for (int yj = 0; yj < n; ++yj) {
                    double f = field[yi * n + yj];
                    ox[xi * n + xj] += gx[g.idx(xi - yi, xj - yj)] * f * h * h;
                    oy[xi * n + xj] += gy[g.idx(xi - yi, xj - yj)] * f * h * h;
                }
    return {ox, oy};
}

}  // namespace

TEST_CASE("kernel construction") {
    Grid2DPeriodic g(1.0, 32);
    KernelSpec k = make_kernel(g, 4.0 * g.h());
    double mass = 0.0;
    for (double v : k.samples) mass += v;
    CHECK(std::abs(mass * g.h() * g.h() - 1.0) < 1e-10);
    for (double v : k.samples) CHECK(v >= 0.0);

    // Reflection symmetry under periodic index negation.
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j)
            CHECK(k.samples[g.idx(i, j)] == k.samples[g.idx(-i, -j)]);

    // Sub-cell range degenerates to a single-cell delta of mass 1.
    KernelSpec d = make_kernel(g, 0.5 * g.h());
    CHECK(d.samples[0] == doctest::Approx(1.0 / (g.h() * g.h())));
    for (int i = 1; i < g.size(); ++i) CHECK(d.samples[i] == 0.0);

    CHECK_THROWS_AS(make_kernel(g, 0.6), InputError);
    CHECK_THROWS_AS(make_kernel(g, 0.0), InputError);
}

TEST_CASE("conv_grad of a constant vanishes") {
    Grid2DPeriodic g(2.0, 24);
    KernelSpec k = make_kernel(g, 5.0 * g.h());
    Field2D c(g.size(), 3.7);
    auto [gx, gy] = conv_grad(c, k, g);
    for (int i = 0; i < g.size(); ++i) {
        CHECK(std::abs(gx[i]) < 1e-12);
        CHECK(std::abs(gy[i]) < 1e-12);
    }
}

TEST_CASE("conv_grad of a delta reproduces the kernel gradient") {
    Grid2DPeriodic g(1.0, 16);
    KernelSpec k = make_kernel(g, 3.0 * g.h());
    Field2D delta(g.size(), 0.0);
    const int ci = 5, cj = 9;
    delta[ci * 16 + cj] = 1.0;
    auto [gx, gy] = conv_grad(delta, k, g);
    const double h2 = g.h() * g.h();
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            double ex =
                (k.samples[g.idx(i - ci + 1, j - cj)] - k.samples[g.idx(i - ci - 1, j - cj)]) /
                (2 * g.h()) * h2;
            CHECK(gx[i * 16 + j] == doctest::Approx(ex).epsilon(1e-12));
        }
}

TEST_CASE("fast convolution equals the direct double sum") {
    Grid2DPeriodic g(1.0, 16);
    KernelSpec k = make_kernel(g, 4.0 * g.h());
    RngStream rng(41);
    Field2D f(g.size());
    for (double& v : f) v = rng.uniform(-1, 1);
    auto [fx, fy] = conv_grad(f, k, g);
    auto [ox, oy] = conv_grad_direct(f, k, g);
    for (int i = 0; i < g.size(); ++i) {
        CHECK(std::abs(fx[i] - ox[i]) < 1e-10);
        CHECK(std::abs(fy[i] - oy[i]) < 1e-10);
    }
    Field2D wrong(10, 0.0);
    CHECK_THROWS_AS(conv_grad(wrong, k, g), DimensionError);
}

TEST_CASE("beta = 0 reduces to the 5-point heat step") {
    Grid2DPeriodic g(1.0, 32);
    KernelSpec k = make_kernel(g, 4.0 * g.h());
    PdeParams p;
    p.beta = 0.0;
    RngStream rng(3);
    FieldPair f{g, Field2D(g.size()), Field2D(g.size())};
    for (double& v : f.m) v = rng.uniform(-1, 1);
    for (double& v : f.phi) v = rng.uniform(0, 1);
    FieldPair before = f;
    const double dt = g.h() * g.h() / 8.0;
    step_explicit(f, k, p, dt);
    const int n = g.n();
    const double r = dt / (g.h() * g.h());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double lap_m = before.m[g.idx(i + 1, j)] + before.m[g.idx(i - 1, j)] +
                           before.m[g.idx(i, j + 1)] + before.m[g.idx(i, j - 1)] -
                           4 * before.m[i * n + j];
            CHECK(f.m[i * n + j] == doctest::Approx(before.m[i * n + j] + r * lap_m).epsilon(1e-12));
        }
}

TEST_CASE("constant magnetization stays constant") {
    Grid2DPeriodic g(1.0, 24);
    KernelSpec k = make_kernel(g, 4.0 * g.h());
    PdeParams p;
    p.beta = 3.0;
    FieldPair f{g, Field2D(g.size(), 0.25), Field2D(g.size())};
    RngStream rng(4);
    for (double& v : f.phi) v = rng.uniform(0.3, 0.7);
    for (int s = 0; s < 20; ++s) step_explicit(f, k, p, stable_dt(f, k, p.beta));
    for (double v : f.m) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("phi = 1 sector is invariant") {
    Grid2DPeriodic g(1.0, 32);
    KernelSpec k = make_kernel(g, 4.0 * g.h());
    PdeParams p;
    p.beta = 5.0;
    p.t_final = 0.002;
    p.snapshot_every = 50;
    FieldPair f{g, Field2D(g.size()), Field2D(g.size(), 1.0)};
    RngStream rng(6);
    for (double& v : f.m) v = rng.uniform(-0.3, 0.3);
    auto [snaps, diag] = run_pde(f, k, p);
    for (const auto& [step, fields] : snaps)
        for (double v : fields.phi) CHECK(std::abs(v - 1.0) <= 1e-12);
}

TEST_CASE("run_pde conserves both masses") {
    Grid2DPeriodic g(1.0, 48);
    KernelSpec k = make_kernel(g, 4.0 * g.h());
    PdeParams p;
    p.beta = 6.0;
    p.t_final = 0.001;
    p.snapshot_every = 20;
    FieldPair f = init_random_mixture(g, 0.8, 0.05, 31);
    auto [snaps, diag] = run_pde(f, k, p);
    for (std::size_t i = 0; i < diag.step.size(); ++i) {
        CHECK(std::abs(diag.mass_m[i] - diag.mass_m[0]) <=
              1e-10 * std::max(1.0, std::abs(diag.mass_m[0])));
        CHECK(std::abs(diag.mass_phi[i] - diag.mass_phi[0]) <= 1e-10 * diag.mass_phi[0]);
    }
}

TEST_CASE("heat-mode decay at beta = 0") {
    const int n = 64;
    Grid2DPeriodic g(1.0, n);
    KernelSpec k = make_kernel(g, 4.0 * g.h());
    PdeParams p;
    p.beta = 0.0;
    const double rate = (2 * M_PI) * (2 * M_PI);  // L = 1
    p.t_final = std::log(2.0) / rate;             // amplitude halves
    p.snapshot_every = 1 << 20;                   // only first and last
    FieldPair f{g, Field2D(g.size()), Field2D(g.size(), 0.5)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            f.m[i * n + j] = std::sin(2 * M_PI * g.h() * (i + 0.5));
    auto [snaps, diag] = run_pde(f, k, p);
    double amp = 0.0;
    for (double v : snaps.back().second.m) amp = std::max(amp, std::abs(v));
    CHECK(amp == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("stability guard") {
    Grid2DPeriodic g(1.0, 16);
    KernelSpec k = make_kernel(g, 4.0 * g.h());
    PdeParams p;
    p.beta = 2.0;
    FieldPair f = init_random_mixture(g, 0.5, 0.1, 2);
    CHECK_THROWS_AS(step_explicit(f, k, p, 10.0 * g.h() * g.h()), StabilityError);
}

TEST_CASE("random mixture initial data") {
    Grid2DPeriodic g(1.0, 32);
    FieldPair f = init_random_mixture(g, 0.8, 0.05, 9);
    double mean_phi = 0.0;
    for (double v : f.phi) mean_phi += v;
    mean_phi /= g.size();
    CHECK(std::abs(mean_phi - 0.2) < 1e-12);
    for (int i = 0; i < g.size(); ++i) CHECK(f.m[i] * f.m[i] < f.phi[i]);

    FieldPair a = init_random_mixture(g, 0.6, 0.1, 7);
    FieldPair b = init_random_mixture(g, 0.6, 0.1, 7);
    CHECK(a.m == b.m);
    CHECK(a.phi == b.phi);

    FieldPair flat = init_random_mixture(g, 0.7, 0.0, 1);
    for (double v : flat.m) CHECK(v == 0.0);
    for (double v : flat.phi) CHECK(v == doctest::Approx(0.3));

    CHECK_THROWS_AS(init_random_mixture(g, 0.8, 0.3, 1), InputError);
}
