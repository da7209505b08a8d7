#include "gstrand/dynamics.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using namespace gstrand;

namespace {

// Smooth low-mode trigonometric fields, deterministic per seed.
void fill_smooth(StrandState& s, oracles::Rng& rng, double amp = 0.3, int max_mode = 2) {
    for (int d = 0; d < s.dim(); ++d) {
        for (int which = 0; which < 2; ++which) {
            std::vector<double> ak(max_mode + 1), bk(max_mode + 1);
            for (int k = 0; k <= max_mode; ++k) {
                ak[k] = amp * rng();
                bk[k] = amp * rng();
            }
            for (int j = 0; j < s.n; ++j) {
                double x = 2.0 * M_PI * s.grid_s(j) / s.length;
                double v = 0.0;
                for (int k = 0; k <= max_mode; ++k) v += ak[k] * std::cos(k * x) + bk[k] * std::sin(k * x);
                (which == 0 ? s.mu_at(j) : s.gamma_at(j))[d] += v;
            }
        }
    }
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("spatial derivative: constant, trig accuracy, seam behavior") {
    AlgebraTable tbl = build_algebra(AlgebraId::so3);

    SUBCASE("constant field differentiates to zero") {
        StrandState s = make_state(tbl, 32, 2.0 * M_PI);
        for (int j = 0; j < s.n; ++j) s.mu_at(j)[0] = 3.75;
        std::vector<double> out(s.mu.size());
        spatial_derivative_raw(s.mu.data(), s.n, 3, s.ds, out.data());
        for (double v : out) CHECK(std::abs(v) < 1e-13);
    }

    SUBCASE("sin mode converges at 4th order") {
        double err[2];
        for (int lvl = 0; lvl < 2; ++lvl) {
            int n = lvl == 0 ? 32 : 64;
            double L = 2.0 * M_PI;
            std::vector<double> f(n), out(n);
            for (int j = 0; j < n; ++j) f[j] = std::sin(2.0 * M_PI * (L * j / n) / L);
            spatial_derivative_raw(f.data(), n, 1, L / n, out.data());
            double worst = 0.0;
            for (int j = 0; j < n; ++j)
                worst = std::max(worst, std::abs(out[j] - (2.0 * M_PI / L) * std::cos(L * j / n)));
            err[lvl] = worst;
        }
        CHECK(err[0] / err[1] >= 14.0);
    }

    SUBCASE("non-periodic sawtooth concentrates error at the wrap seam") {
        int n = 64;
        std::vector<double> f(n), out(n);
        for (int j = 0; j < n; ++j) f[j] = static_cast<double>(j);
        spatial_derivative_raw(f.data(), n, 1, 1.0, out.data());
        double interior = 0.0, seam = 0.0;
        for (int j = 4; j < n - 4; ++j) interior = std::max(interior, std::abs(out[j] - 1.0));
        for (int j : {0, 1, n - 2, n - 1}) seam = std::max(seam, std::abs(out[j] - 1.0));
        CHECK(interior < 1e-12);
        CHECK(seam > 1.0);
    }

    SUBCASE("fewer than 5 points is rejected") {
        std::vector<double> f(4, 0.0), out(4);
        CHECK_THROWS_AS(spatial_derivative_raw(f.data(), 4, 1, 0.1, out.data()), std::invalid_argument);
    }
}

TEST_CASE("sl2r normal-form right-hand side matches the componentwise equations") {
    AlgebraTable tbl = build_algebra(AlgebraId::sl2r);
    double A = 1.3, C = -0.8, r = 0.45;
    ModelSpec model = make_model_normal(tbl, r, {A}, {C});

    StrandState s = make_state(tbl, 64, 2.0 * M_PI);
    oracles::Rng rng(31);
    fill_smooth(s, rng);

    std::vector<double> dmu, dgamma;
    rhs_normal(tbl, model, s, dmu, dgamma);

    std::vector<double> dsm(s.mu.size()), dsg(s.gamma.size());
    spatial_derivative_raw(s.mu.data(), s.n, 3, s.ds, dsm.data());
    spatial_derivative_raw(s.gamma.data(), s.n, 3, s.ds, dsg.data());

    for (int j = 0; j < s.n; ++j) {
        const double* mu = s.mu_at(j);
        const double* ga = s.gamma_at(j);
        const double* dm = &dsm[3 * static_cast<std::size_t>(j)];
        const double* dg = &dsg[3 * static_cast<std::size_t>(j)];
        // coordinates: (c, +alpha, -alpha)
        double emu0 = r * dm[0];
        double emu1 = r * dm[1] - (2.0 * C / A) * mu[0] * mu[1] - 2.0 * C * ga[1];
        double emu2 = r * dm[2] + (2.0 * C / A) * mu[0] * mu[2] + 2.0 * C * ga[2];
        double ega0 = r * dg[0] + (C / A) * (mu[1] * ga[2] - mu[2] * ga[1]);
        double ega1 = r * dg[1] - (C / A) * dm[1] + (2.0 * C / A) * mu[1] * ga[0];
        double ega2 = r * dg[2] - (C / A) * dm[2] + (2.0 * C / A) * mu[2] * ga[0];
        CHECK(dmu[3 * j + 0] == doctest::Approx(emu0).epsilon(1e-12));
        CHECK(dmu[3 * j + 1] == doctest::Approx(emu1).epsilon(1e-12));
        CHECK(dmu[3 * j + 2] == doctest::Approx(emu2).epsilon(1e-12));
        CHECK(dgamma[3 * j + 0] == doctest::Approx(ega0).epsilon(1e-12));
        CHECK(dgamma[3 * j + 1] == doctest::Approx(ega1).epsilon(1e-12));
        CHECK(dgamma[3 * j + 2] == doctest::Approx(ega2).epsilon(1e-12));
    }
}

TEST_CASE("normal form fixed point: constant Cartan mu, zero gamma") {
    for (auto id : {AlgebraId::sl2r, AlgebraId::g2r}) {
        AlgebraTable tbl = build_algebra(id);
        std::vector<double> a(tbl.cartan_indices.size(), 1.0), c(tbl.cartan_indices.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = 2.0 + static_cast<double>(i);
        a.back() = 1.5;
        ModelSpec model = make_model_normal(tbl, 0.7, a, c);
        StrandState s = make_state(tbl, 16, 2.0 * M_PI);
        AlgebraElement h = cartan_element(tbl, c);  // any Cartan constant
        for (int j = 0; j < s.n; ++j) s.set_mu(j, h);
        std::vector<double> dmu, dgamma;
        rhs_normal(tbl, model, s, dmu, dgamma);
        CHECK(max_abs_diff(dmu, std::vector<double>(dmu.size(), 0.0)) == 0.0);
        CHECK(max_abs_diff(dgamma, std::vector<double>(dgamma.size(), 0.0)) == 0.0);
    }
}

TEST_CASE("spatially constant fields reduce to pure bracket terms") {
    AlgebraTable tbl = build_algebra(AlgebraId::g2r);
    std::vector<double> ac{1.0, 0.4}, cc{-0.3, 1.9};
    ModelSpec model = make_model_normal(tbl, 1.1, ac, cc);
    oracles::Rng rng(8);
    AlgebraElement mu0 = oracles::random_element(tbl, rng);
    AlgebraElement ga0 = oracles::random_element(tbl, rng);
    StrandState s = make_state(tbl, 16, 2.0 * M_PI);
    for (int j = 0; j < s.n; ++j) {
        s.set_mu(j, mu0);
        s.set_gamma(j, ga0);
    }
    std::vector<double> dmu, dgamma;
    rhs_normal(tbl, model, s, dmu, dgamma);
    AlgebraElement phi_mu = apply_phi(model, tbl, mu0);
    AlgebraElement want_mu = add(bracket(phi_mu, mu0, tbl), bracket(ga0, model.c, tbl));
    AlgebraElement want_ga = bracket(phi_mu, ga0, tbl);
    for (int j = 0; j < s.n; ++j)
        for (int d = 0; d < tbl.dim; ++d) {
            CHECK(dmu[j * tbl.dim + d] == doctest::Approx(want_mu.coeffs[d]).epsilon(1e-13));
            CHECK(dgamma[j * tbl.dim + d] == doctest::Approx(want_ga.coeffs[d]).epsilon(1e-13));
        }
}

TEST_CASE("so3 compact: equilibrium is a fixed point and paths agree") {
    AlgebraTable tbl = build_algebra(AlgebraId::so3);

    SUBCASE("equilibrium gives identically zero RHS") {
        ModelSpec model = make_model_so3(0.5, 1.2, 0.8, Vec3{0.0, 0.0, 1.0});
        StrandState s = equilibrium_state(0.9, -0.4, Vec3{0.0, 0.0, 1.0}, 32, 2.0 * M_PI);
        std::vector<double> dmu, dgamma;
        rhs_compact(tbl, model, s, dmu, dgamma);
        for (double v : dmu) CHECK(v == 0.0);
        for (double v : dgamma) CHECK(v == 0.0);
    }

    SUBCASE("closed-form and root-space paths agree on generic states") {
        double a = 1.7, c = -0.6, r = 0.35;
        ModelSpec closed = make_model_so3(r, a, c, Vec3{0.0, 0.0, 1.0});
        ModelSpec generic = make_model_compact(tbl, r, {a}, {c});
        StrandState s = make_state(tbl, 64, 2.0 * M_PI);
        oracles::Rng rng(44);
        fill_smooth(s, rng, 0.5);
        std::vector<double> d1m, d1g, d2m, d2g;
        rhs_compact(tbl, closed, s, d1m, d1g);
        rhs_compact(tbl, generic, s, d2m, d2g);
        CHECK(max_abs_diff(d1m, d2m) <= 1e-12);
        CHECK(max_abs_diff(d1g, d2g) <= 1e-12);
    }

    SUBCASE("off-axis equilibrium also sits still") {
        Vec3 axis{1.0, 2.0, -0.5};
        ModelSpec model = make_model_so3(0.2, 0.9, 1.1, axis);
        StrandState s = equilibrium_state(1.3, 0.7, axis, 32, 2.0 * M_PI);
        std::vector<double> dmu, dgamma;
        rhs_compact(tbl, model, s, dmu, dgamma);
        for (double v : dmu) CHECK(std::abs(v) < 1e-15);
        for (double v : dgamma) CHECK(std::abs(v) < 1e-15);
    }
}

TEST_CASE("so4 right-hand side decouples into two so3 evaluations") {
    AlgebraTable so4 = build_algebra(AlgebraId::so4);
    AlgebraTable so3 = build_algebra(AlgebraId::so3);
    double a1 = 1.2, a2 = -0.7, c1 = 0.9, c2 = 1.6, r = 0.25;
    ModelSpec m4 = make_model_compact(so4, r, {a1, a2}, {c1, c2});
    ModelSpec m31 = make_model_compact(so3, r, {a1}, {c1});
    ModelSpec m32 = make_model_compact(so3, r, {a2}, {c2});

    StrandState s1 = make_state(so3, 48, 2.0 * M_PI);
    StrandState s2 = make_state(so3, 48, 2.0 * M_PI);
    oracles::Rng rng(55);
    fill_smooth(s1, rng);
    fill_smooth(s2, rng);

    StrandState s4 = make_state(so4, 48, 2.0 * M_PI);
    for (int j = 0; j < 48; ++j) {
        s4.set_mu(j, so4_join(s1.mu_element(j), s2.mu_element(j)));
        s4.set_gamma(j, so4_join(s1.gamma_element(j), s2.gamma_element(j)));
    }

    std::vector<double> d4m, d4g, d1m, d1g, d2m, d2g;
    rhs_compact(so4, m4, s4, d4m, d4g);
    rhs_compact(so3, m31, s1, d1m, d1g);
    rhs_compact(so3, m32, s2, d2m, d2g);

    for (int j = 0; j < 48; ++j)
        for (int d = 0; d < 3; ++d) {
            CHECK(d4m[6 * j + d] == doctest::Approx(d1m[3 * j + d]).epsilon(1e-14));
            CHECK(d4m[6 * j + 3 + d] == doctest::Approx(d2m[3 * j + d]).epsilon(1e-14));
            CHECK(d4g[6 * j + d] == doctest::Approx(d1g[3 * j + d]).epsilon(1e-14));
            CHECK(d4g[6 * j + 3 + d] == doctest::Approx(d2g[3 * j + d]).epsilon(1e-14));
        }
}

TEST_CASE("chiral system") {
    SUBCASE("constant commuting pair is steady") {
        AlgebraTable tbl = build_algebra(AlgebraId::so3);
        ModelSpec model = make_model_chiral(tbl);
        StrandState s = make_state(tbl, 32, 2.0 * M_PI);
        for (int j = 0; j < s.n; ++j) {
            s.mu_at(j)[2] = 1.4;    // xi  = 1.4 e3
            s.gamma_at(j)[2] = -2.0;  // gamma = -2 e3, [xi, gamma] = 0
        }
        std::vector<double> dxi, dgamma;
        rhs_chiral(tbl, model, s, dxi, dgamma);
        for (double v : dxi) CHECK(std::abs(v) < 1e-13);
        for (double v : dgamma) CHECK(std::abs(v) < 1e-13);
    }

    SUBCASE("light-cone variables satisfy the first-order system") {
        // With u = (xi+gamma)/2, v = (gamma-xi)/2 and d_x = (d_t + d_s)/2,
        // d_y = (d_s - d_t)/2, the evolution must satisfy
        // d_y u - d_x v - [u,v] = 0 and d_y u + d_x v = 0.
        AlgebraTable tbl = build_algebra(AlgebraId::se3);
        ModelSpec model = make_model_chiral(tbl);
        StrandState s = make_state(tbl, 64, 2.0 * M_PI);
        oracles::Rng rng(71);
        fill_smooth(s, rng);
        std::vector<double> dxi, dgamma;
        rhs_chiral(tbl, model, s, dxi, dgamma);
        std::vector<double> dsx(s.mu.size()), dsg(s.gamma.size());
        spatial_derivative_raw(s.mu.data(), s.n, tbl.dim, s.ds, dsx.data());
        spatial_derivative_raw(s.gamma.data(), s.n, tbl.dim, s.ds, dsg.data());
        for (int j = 0; j < s.n; ++j) {
            AlgebraElement xi = s.mu_element(j), ga = s.gamma_element(j);
            AlgebraElement u = scale(0.5, add(xi, ga));
            AlgebraElement v = scale(0.5, sub(ga, xi));
            for (int d = 0; d < tbl.dim; ++d) {
                double dt_xi = dxi[j * tbl.dim + d], dt_ga = dgamma[j * tbl.dim + d];
                double ds_xi = dsx[j * tbl.dim + d], ds_ga = dsg[j * tbl.dim + d];
                double dyu = 0.5 * (0.5 * (ds_xi + ds_ga) - 0.5 * (dt_xi + dt_ga));
                double dxv = 0.5 * (0.5 * (dt_ga - dt_xi) + 0.5 * (ds_ga - ds_xi));
                double uv = bracket(u, v, tbl).coeffs[d];
                CHECK(std::abs(dyu - dxv - uv) <= 1e-12);
                CHECK(std::abs(dyu + dxv) <= 1e-12);
            }
        }
    }

    SUBCASE("se3 componentwise cross-product system") {
        AlgebraTable tbl = build_algebra(AlgebraId::se3);
        ModelSpec model = make_model_chiral(tbl);
        StrandState s = make_state(tbl, 64, 2.0 * M_PI);
        oracles::Rng rng(72);
        fill_smooth(s, rng);
        std::vector<double> dxi, dgamma;
        rhs_chiral(tbl, model, s, dxi, dgamma);
        std::vector<double> dsx(s.mu.size()), dsg(s.gamma.size());
        spatial_derivative_raw(s.mu.data(), s.n, 6, s.ds, dsx.data());
        spatial_derivative_raw(s.gamma.data(), s.n, 6, s.ds, dsg.data());
        for (int j = 0; j < s.n; ++j) {
            const double* xi = s.mu_at(j);
            const double* ga = s.gamma_at(j);
            Vec3 xi1{xi[0], xi[1], xi[2]}, xi2{xi[3], xi[4], xi[5]};
            Vec3 ga1{ga[0], ga[1], ga[2]}, ga2{ga[3], ga[4], ga[5]};
            Vec3 want_g1 = cross(xi1, ga1);  // d_t gamma_1 = d_s xi_1 - xi_1 x gamma_1
            Vec3 want_g2 = cross(xi1, ga2) - cross(ga1, xi2);
            for (int d = 0; d < 3; ++d) {
                CHECK(dxi[6 * j + d] == doctest::Approx(dsg[6 * j + d]).epsilon(1e-13));
                CHECK(dxi[6 * j + 3 + d] == doctest::Approx(dsg[6 * j + 3 + d]).epsilon(1e-13));
                CHECK(dgamma[6 * j + d] ==
                      doctest::Approx(dsx[6 * j + d] - want_g1[d]).epsilon(1e-12));
                CHECK(dgamma[6 * j + 3 + d] ==
                      doctest::Approx(dsx[6 * j + 3 + d] - want_g2[d]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("rk4 stepping") {
    AlgebraTable tbl = build_algebra(AlgebraId::so3);

    SUBCASE("a fixed point stays put") {
        ModelSpec model = make_model_so3(0.4, 1.0, 1.0, Vec3{0.0, 0.0, 1.0});
        StrandState s = equilibrium_state(0.8, 0.2, Vec3{0.0, 0.0, 1.0}, 32, 2.0 * M_PI);
        StrandState before = s;
        for (int i = 0; i < 10; ++i) step_rk4(tbl, model, s, 0.01);
        CHECK(max_abs_diff(s.mu, before.mu) == 0.0);
        CHECK(max_abs_diff(s.gamma, before.gamma) == 0.0);
        CHECK(s.t == doctest::Approx(0.1));
    }

    SUBCASE("self-convergence under combined ds, dt halving") {
        ModelSpec model = make_model_so3(0.3, 1.0, 1.0, Vec3{0.0, 0.0, 1.0});
        const double T = 0.5;
        auto run = [&](int n, int level) {
            StrandState s = equilibrium_state(1.0, 0.3, Vec3{0.0, 0.0, 1.0}, n, 2.0 * M_PI);
            perturb(s, FieldSelect::both, 1, 0.25, {1.0, 0.0, 0.0});
            perturb(s, FieldSelect::mu, 2, 0.1, {0.0, 1.0, 0.0});
            double dt = 0.2 * s.ds;
            int steps = static_cast<int>(std::lround(T / dt));
            (void)level;
            for (int i = 0; i < steps; ++i) step_rk4(tbl, model, s, T / steps);
            return s;
        };
        StrandState coarse = run(32, 0);
        StrandState mid = run(64, 1);
        StrandState fine = run(256, 2);
        auto err_vs_fine = [&](const StrandState& s) {
            int skip = fine.n / s.n;
            double worst = 0.0;
            for (int j = 0; j < s.n; ++j)
                for (int d = 0; d < 3; ++d) {
                    worst = std::max(worst, std::abs(s.mu_at(j)[d] - fine.mu_at(j * skip)[d]));
                    worst = std::max(worst, std::abs(s.gamma_at(j)[d] - fine.gamma_at(j * skip)[d]));
                }
            return worst;
        };
        double e_coarse = err_vs_fine(coarse);
        double e_mid = err_vs_fine(mid);
        CHECK(e_coarse / e_mid >= 8.0);
    }

    SUBCASE("Galilean frame shift matches the r = 0 run") {
        const double r = 0.7, T = 0.5;
        auto init = [&](int n) {
            StrandState s = equilibrium_state(1.0, 0.2, Vec3{0.0, 0.0, 1.0}, n, 2.0 * M_PI);
            perturb(s, FieldSelect::both, 1, 0.2, {1.0, 0.0, 0.0});
            perturb(s, FieldSelect::gamma, 2, 0.15, {0.0, 1.0, 0.0});
            return s;
        };
        int n = 128;
        StrandState moving = init(n), still = init(n);
        ModelSpec m_r = make_model_so3(r, 1.0, 1.0, Vec3{0.0, 0.0, 1.0});
        ModelSpec m_0 = make_model_so3(0.0, 1.0, 1.0, Vec3{0.0, 0.0, 1.0});
        double dt = 1e-3;
        int steps = static_cast<int>(std::lround(T / dt));
        for (int i = 0; i < steps; ++i) {
            step_rk4(tbl, m_r, moving, dt);
            step_rk4(tbl, m_0, still, dt);
        }
        // moving(T, s) should equal still(T, s + r T) up to discretization error
        double worst = 0.0;
        for (int j = 0; j < n; ++j)
            for (int d = 0; d < 3; ++d) {
                double x = moving.grid_s(j) + r * T;
                double ref = periodic_cubic_interp(still.mu.data() + d, n, 3, still.length, x);
                worst = std::max(worst, std::abs(moving.mu_at(j)[d] - ref));
                ref = periodic_cubic_interp(still.gamma.data() + d, n, 3, still.length, x);
                worst = std::max(worst, std::abs(moving.gamma_at(j)[d] - ref));
            }
        CHECK(worst < 2e-6);
    }

    SUBCASE("blow-up is reported with the failure time") {
        AlgebraTable sl2 = build_algebra(AlgebraId::sl2r);
        ModelSpec model = make_model_normal(sl2, 0.0, {1.0}, {1.0});
        StrandState s = make_state(sl2, 16, 2.0 * M_PI);
        for (int j = 0; j < s.n; ++j) {
            s.mu_at(j)[1] = 1e160;
            s.mu_at(j)[2] = 1e160;
        }
        CHECK_THROWS_AS(
            [&] {
                for (int i = 0; i < 50; ++i) step_rk4(sl2, model, s, 0.1);
            }(),
            BlowupError);
    }
}

TEST_CASE("perturb guards and identity") {
    StrandState s = equilibrium_state(1.0, 0.0, Vec3{0.0, 0.0, 1.0}, 32, 2.0 * M_PI);
    StrandState before = s;
    perturb(s, FieldSelect::mu, 3, 0.0, {1.0, 0.0, 0.0});
    CHECK(max_abs_diff(s.mu, before.mu) == 0.0);
    CHECK_THROWS_AS(perturb(s, FieldSelect::mu, 17, 0.1, {1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(perturb(s, FieldSelect::mu, -1, 0.1, {1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(perturb(s, FieldSelect::mu, 2, 0.1, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("parallel RHS evaluation is bit-identical to sequential") {
    AlgebraTable tbl = build_algebra(AlgebraId::so4);
    ModelSpec model = make_model_compact(tbl, 0.3, {1.0, 1.4}, {0.8, -1.1});
    StrandState s = make_state(tbl, 64, 2.0 * M_PI);
    oracles::Rng rng(90);
    fill_smooth(s, rng);
    std::vector<double> am, ag, bm, bg;
    eval_rhs(tbl, model, s, am, ag, 1);
    eval_rhs(tbl, model, s, bm, bg, 3);
    CHECK(am == bm);
    CHECK(ag == bg);

    StrandState s1 = s, s2 = s;
    for (int i = 0; i < 20; ++i) {
        step_rk4(tbl, model, s1, 5e-3, 1);
        step_rk4(tbl, model, s2, 5e-3, 3);
    }
    CHECK(s1.mu == s2.mu);
    CHECK(s1.gamma == s2.gamma);
}
