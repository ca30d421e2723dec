#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "besovlab/solver.hpp"
#include "test_util.hpp"

using namespace besovlab;
using namespace besovlab::test;

namespace {

SolverConfig make_config(double eps, double T, double dt, int n, int stride = 1) {
    SolverConfig cfg;
    cfg.epsilon = eps;
    cfg.horizon = T;
    cfg.dt = dt;
    cfg.grid_n = n;
    cfg.snapshot_stride = stride;
    return cfg;
}

}  // namespace

TEST_CASE("taylor green closed forms") {
    Grid grid(32);
    SpectralField tg0 = taylor_green(grid, 0.0, 0.5);
    CHECK(max_pointwise_magnitude(tg0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(relative_divergence(tg0) < 1e-14);

    // epsilon = 0: time independent
    SpectralField a = taylor_green(grid, 0.0, 0.0);
    SpectralField b = taylor_green(grid, 3.0, 0.0);
    CHECK((a - b).max_abs_coeff() == 0.0);

    // L2 ratio between t=1 and t=0 at eps=0.5 is e^{-1}
    const double r = lp_norm(taylor_green(grid, 1.0, 0.5), 2.0) /
                     lp_norm(taylor_green(grid, 0.0, 0.5), 2.0);
    CHECK(r == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("pressure gradient of taylor green matches the classical closed form") {
    Grid grid(64);
    SpectralField tg = taylor_green(grid, 0.0, 0.0);
    SpectralField gp = pressure_gradient(tg);
    // P = (cos 2x + cos 2y)/4, so grad P = (-sin 2x / 2, -sin 2y / 2)
    SpectralField expected =
        sample_vector(grid, [](double x, double) { return -0.5 * std::sin(2 * x); },
                      [](double, double y) { return -0.5 * std::sin(2 * y); });
    CHECK(rel_l2_diff(gp, expected) < 1e-12);

    // u . grad u + grad P is divergence-free (here it is exactly zero: the
    // Taylor-Green advection is a pure gradient and the pressure cancels it)
    SpectralField residual = advect(tg, tg) + gp;
    CHECK(std::sqrt(coefficient_energy(residual)) < 1e-13);
}

TEST_CASE("pressure gradient edge cases") {
    Grid grid(32);
    // steady shear: u . grad u = 0, so grad P = 0
    SpectralField shear = sample_vector(grid, [](double, double y) { return std::sin(y); },
                                        [](double, double) { return 0.0; });
    CHECK(pressure_gradient(shear).max_abs_coeff() < 1e-14);

    // grad P is a gradient: Leray projection kills it
    Rng rng(71);
    SpectralField u = random_divfree(grid, 8, rng);
    SpectralField gp = pressure_gradient(u);
    CHECK(std::sqrt(coefficient_energy(leray_project(gp))) <
          1e-10 * std::max(1e-30, std::sqrt(coefficient_energy(gp))));

    // non-solenoidal input violates the contract
    SpectralField bad(grid, 2);
    bad.at_freq(0, 1, 0) = Complex(0.0, 0.5);
    bad.at_freq(0, -1, 0) = Complex(0.0, -0.5);
    CHECK_THROWS_AS(pressure_gradient(bad), ContractViolation);
}

TEST_CASE("navier-stokes reproduces taylor green decay") {
    SolverConfig cfg = make_config(0.1, 0.25, 1e-3, 64, 50);
    Grid grid = cfg.grid();
    DiagnosticsSpec diag(BesovIndex(2.0, 2.0, 1.0));
    Trajectory traj = solve_ns(taylor_green(grid, 0.0, cfg.epsilon), cfg, diag);

    double worst = 0.0;
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        SpectralField exact = taylor_green(grid, traj.times[i], cfg.epsilon);
        worst = std::max(worst, rel_l2_diff(traj.snapshots[i], exact));
    }
    CHECK(worst < 1e-10);  // the projected nonlinearity vanishes, so only roundoff remains
    CHECK(worst < 1e-6);   // the stated anchor tolerance, with margin
}

TEST_CASE("single-mode shear is a steady euler solution") {
    SolverConfig cfg = make_config(0.0, 0.2, 1e-3, 32, 40);
    Grid grid = cfg.grid();
    SpectralField shear = sample_vector(grid, [](double, double y) { return std::sin(y); },
                                        [](double, double) { return 0.0; });
    DiagnosticsSpec diag(BesovIndex(2.0, 2.0, 1.0));
    Trajectory traj = solve_ns(shear, cfg, diag);
    for (const SpectralField& snap : traj.snapshots)
        CHECK(rel_l2_diff(snap, shear) < 1e-10);
}

TEST_CASE("euler conserves energy and mean momentum") {
    SolverConfig cfg = make_config(0.0, 0.5, 1e-3, 64, 100);
    Grid grid = cfg.grid();
    Rng rng(73);
    SpectralField u0 = random_divfree(grid, 10, rng);
    u0 *= 1.0 / max_pointwise_magnitude(u0);
    u0.at_freq(0, 0, 0) = Complex(0.125, 0.0);  // nonzero mean to watch it conserved
    DiagnosticsSpec diag(BesovIndex(2.0, 2.0, 1.0));
    diag.store_fields = true;
    Trajectory traj = solve_ns(u0, cfg, diag);

    const double e0 = traj.diagnostics.l2.front();
    for (double e : traj.diagnostics.l2) CHECK(std::abs(e - e0) / e0 < 1e-8);

    for (const SpectralField& snap : traj.snapshots) {
        CHECK(std::abs(snap.at_freq(0, 0, 0) - Complex(0.125, 0.0)) < 1e-12);
        CHECK(std::abs(snap.at_freq(1, 0, 0)) < 1e-12);
        CHECK(relative_divergence(snap) < 1e-10);
    }
}

TEST_CASE("viscous energy law holds with trapezoid quadrature") {
    // the 1e-6 tolerance needs the quadrature at the solver's own dt
    SolverConfig cfg = make_config(0.05, 0.4, 1e-3, 64, 1);
    Grid grid = cfg.grid();
    Rng rng(79);
    SpectralField u0 = random_divfree(grid, 8, rng);
    u0 *= 1.0 / max_pointwise_magnitude(u0);
    DiagnosticsSpec diag(BesovIndex(2.0, 2.0, 1.0));
    diag.with_vp = false;
    Trajectory traj = solve_ns(u0, cfg, diag);

    // 2 eps int ||grad u||_2^2 dt via trapezoid on snapshots
    std::vector<double> grad_sq;
    for (const SpectralField& snap : traj.snapshots)
        grad_sq.push_back(coefficient_energy(gradient(snap)));
    double integral = 0.0;
    for (std::size_t i = 1; i < grad_sq.size(); ++i)
        integral += 0.5 * (grad_sq[i] + grad_sq[i - 1]) * (traj.times[i] - traj.times[i - 1]);

    const double e_start = traj.diagnostics.l2.front() * traj.diagnostics.l2.front();
    const double e_end = traj.diagnostics.l2.back() * traj.diagnostics.l2.back();
    CHECK(std::abs(e_end - e_start + 2.0 * cfg.epsilon * integral) < 1e-6 * e_start);
}

TEST_CASE("taylor green error is bounded uniformly in epsilon") {
    DiagnosticsSpec diag(BesovIndex(2.0, 2.0, 1.0));
    for (double eps : {0.0, 1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
        SolverConfig cfg = make_config(eps, 0.1, 1e-3, 32, 100);
        Trajectory traj = solve_ns(taylor_green(cfg.grid(), 0.0, eps), cfg, diag);
        SpectralField exact = taylor_green(cfg.grid(), traj.times.back(), eps);
        CHECK(rel_l2_diff(traj.snapshots.back(), exact) < 1e-10);
    }
}

TEST_CASE("time stepping is fourth order on generic data") {
    Grid grid(32);
    Rng rng(83);
    SpectralField u0 = random_divfree(grid, 8, rng);
    u0 *= 1.0 / max_pointwise_magnitude(u0);
    DiagnosticsSpec diag(BesovIndex(2.0, 2.0, 1.0));
    diag.store_fields = false;

    auto final_state = [&](double dt) {
        SolverConfig cfg = make_config(0.01, 0.1, dt, 32, 1 << 20);
        NsStepper stepper(u0, cfg);
        for (int k = 0; k < cfg.steps(); ++k) stepper.step();
        return stepper.state();
    };
    SpectralField ref = final_state(2.5e-4);
    SpectralField coarse = final_state(2e-3);
    SpectralField fine = final_state(1e-3);
    const double e_coarse = rel_l2_diff(coarse, ref);
    const double e_fine = rel_l2_diff(fine, ref);
    CHECK(e_coarse / e_fine >= 12.0);
    MESSAGE("dt-halving error ratio (expect ~16): " << e_coarse / e_fine);
}

TEST_CASE("solver aborts on cfl violation and non-finite data") {
    Grid grid(32);
    SpectralField big = taylor_green(grid, 0.0, 0.0) * 50.0;  // max speed 50
    SolverConfig cfg = make_config(0.0, 0.1, 1e-2, 32, 1);    // dt far beyond the limit
    DiagnosticsSpec diag(BesovIndex(2.0, 2.0, 1.0));
    CHECK_THROWS_AS(solve_ns(big, cfg, diag), SolverAbort);

    SpectralField nan_field = taylor_green(grid, 0.0, 0.0);
    nan_field.at_freq(0, 1, 1) = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(solve_ns(nan_field, make_config(0.0, 0.1, 1e-3, 32), diag), SolverAbort);
}

TEST_CASE("blow-up guard reports leaving the ball") {
    Grid grid(32);
    Rng rng(89);
    SpectralField u0 = random_divfree(grid, 6, rng);
    u0 *= 0.5 / max_pointwise_magnitude(u0);
    SolverConfig cfg = make_config(0.0, 0.05, 1e-3, 32, 1);
    cfg.blowup_factor = 0.9;  // guard below the initial value fires immediately
    DiagnosticsSpec diag(BesovIndex(2.0, 2.0, 1.0));
    try {
        solve_ns(u0, cfg, diag);
        FAIL("expected SolverAbort");
    } catch (const SolverAbort& abort) {
        CHECK(abort.reason() == SolverAbort::Reason::LeftBall);
    }
}

TEST_CASE("transport-diffusion: pure heat flow is exact") {
    SolverConfig cfg = make_config(1.0, 0.25, 5e-3, 32, 50);
    Grid grid = cfg.grid();
    SpectralField f0 = cosine_mode(grid, 3, 2) + cosine_mode(grid, 1, 0) * 0.5;
    DiagnosticsSpec diag(BesovIndex(1.0, 2.0, 1.0));
    SpectralField zero_v(grid, 2);
    Trajectory traj = solve_transport_diffusion(f0, steady_velocity(zero_v), nullptr, cfg, diag);

    SpectralField expected(grid, 1);
    const double t = traj.times.back();
    expected.at_freq(0, 3, 2) = 0.5 * std::exp(-13.0 * t);
    expected.at_freq(0, -3, -2) = 0.5 * std::exp(-13.0 * t);
    expected.at_freq(0, 1, 0) = 0.25 * std::exp(-1.0 * t);
    expected.at_freq(0, -1, 0) = 0.25 * std::exp(-1.0 * t);
    CHECK(rel_l2_diff(traj.snapshots.back(), expected) < 1e-12);
}

TEST_CASE("transport-diffusion: constant-velocity translation") {
    SolverConfig cfg = make_config(0.0, 1.0, 2e-3, 64, 100);
    Grid grid = cfg.grid();
    SpectralField v(grid, 2);
    v.at_freq(0, 0, 0) = Complex(1.0, 0.0);  // v = (1, 0)
    SpectralField f0 = sample_scalar(grid, [](double x, double y) {
        return std::cos(2 * x + y) + 0.3 * std::sin(x);
    });
    DiagnosticsSpec diag(BesovIndex(1.0, 2.0, 1.0));
    Trajectory traj = solve_transport_diffusion(f0, steady_velocity(v), nullptr, cfg, diag);

    const double T = traj.times.back();
    SpectralField expected = sample_scalar(grid, [T](double x, double y) {
        return std::cos(2 * (x - T) + y) + 0.3 * std::sin(x - T);
    });
    CHECK(rel_l2_diff(traj.snapshots.back(), expected) < 1e-8);
}

TEST_CASE("transport-diffusion: manufactured forcing") {
    SolverConfig cfg = make_config(0.0, 1.0, 2e-3, 32, 100);
    Grid grid = cfg.grid();
    SpectralField f0 = cosine_mode(grid, 1, 0);
    // f*(t, x) = e^t cos x solves df/dt = g with g = f*, v = 0, eps = 0
    ForcingFn g = [&grid](double t) { return cosine_mode(grid, 1, 0) * std::exp(t); };
    DiagnosticsSpec diag(BesovIndex(1.0, 2.0, 1.0));
    SpectralField zero_v(grid, 2);
    Trajectory traj = solve_transport_diffusion(f0, steady_velocity(zero_v), g, cfg, diag);

    SpectralField expected = cosine_mode(grid, 1, 0) * std::exp(traj.times.back());
    CHECK(rel_l2_diff(traj.snapshots.back(), expected) < 1e-6);
}

TEST_CASE("trajectory velocity interpolation matches the closed form") {
    // drive a passive scalar with a stored taylor-green trajectory and with
    // its closed form; the two solutions must agree to interpolation accuracy
    const double eps = 0.3;
    SolverConfig ns_cfg = make_config(eps, 0.2, 2e-3, 32, 4);  // spacing 8e-3
    Grid grid = ns_cfg.grid();
    DiagnosticsSpec ns_diag(BesovIndex(2.0, 2.0, 1.0));
    Trajectory ns_traj = solve_ns(taylor_green(grid, 0.0, eps), ns_cfg, ns_diag);

    SolverConfig td_cfg = make_config(0.0, 0.2, 1e-3, 32, 200);
    SpectralField f0 = cosine_mode(grid, 2, 1);
    DiagnosticsSpec diag(BesovIndex(1.0, 2.0, 1.0));

    Trajectory via_snapshots = solve_transport_diffusion(
        f0, trajectory_velocity(ns_traj), nullptr, td_cfg, diag);
    VelocitySource closed{[&grid, eps](double t) { return taylor_green(grid, t, eps); }, 0.0};
    Trajectory via_closed = solve_transport_diffusion(f0, closed, nullptr, td_cfg, diag);

    CHECK(rel_l2_diff(via_snapshots.snapshots.back(), via_closed.snapshots.back()) < 1e-7);
}

TEST_CASE("trajectory velocity rejects a stride too coarse for dt") {
    SolverConfig ns_cfg = make_config(0.0, 0.2, 2e-3, 32, 25);  // spacing 5e-2
    Grid grid = ns_cfg.grid();
    DiagnosticsSpec diag(BesovIndex(2.0, 2.0, 1.0));
    Trajectory ns_traj = solve_ns(taylor_green(grid, 0.0, 0.0), ns_cfg, diag);

    SolverConfig td_cfg = make_config(0.0, 0.2, 1e-3, 32, 10);  // 5e-2 > 10 * 1e-3
    SpectralField f0 = cosine_mode(grid, 1, 0);
    CHECK_THROWS_AS(solve_transport_diffusion(f0, trajectory_velocity(ns_traj), nullptr,
                                              td_cfg, diag),
                    ConfigError);
}

TEST_CASE("diagnostics accumulate monotone vp integrals") {
    SolverConfig cfg = make_config(0.0, 0.2, 2e-3, 32, 10);
    Grid grid = cfg.grid();
    Rng rng(97);
    SpectralField u0 = random_divfree(grid, 6, rng);
    u0 *= 0.8 / max_pointwise_magnitude(u0);
    DiagnosticsSpec diag(BesovIndex(2.0, 2.0, 1.0));
    Trajectory traj = solve_ns(u0, cfg, diag);
    REQUIRE(traj.diagnostics.vp_linf.size() == traj.diagnostics.times.size());
    for (std::size_t i = 1; i < traj.diagnostics.vp_linf.size(); ++i) {
        CHECK(traj.diagnostics.vp_linf[i] >= traj.diagnostics.vp_linf[i - 1]);
        CHECK(traj.diagnostics.vp_besov[i] >= traj.diagnostics.vp_besov[i - 1]);
        CHECK(traj.diagnostics.vp_besov[i] >= traj.diagnostics.vp_linf[i] - 1e-12);
    }
}

TEST_CASE("trajectory persistence round trip") {
    SolverConfig cfg = make_config(0.02, 0.1, 2e-3, 32, 10);
    Grid grid = cfg.grid();
    DiagnosticsSpec diag(BesovIndex(2.0, 2.0, 1.0));
    Trajectory traj = solve_ns(taylor_green(grid, 0.0, cfg.epsilon), cfg, diag);

    auto dir = std::filesystem::temp_directory_path() / "besovlab_traj_test";
    std::filesystem::remove_all(dir);
    save_trajectory(traj, dir);
    Trajectory back = load_trajectory(dir);

    CHECK(back.config.epsilon == cfg.epsilon);
    CHECK(back.config.dt == cfg.dt);
    REQUIRE(back.snapshots.size() == traj.snapshots.size());
    for (std::size_t i = 0; i < back.snapshots.size(); ++i) {
        CHECK(back.times[i] == traj.times[i]);
        for (std::size_t m = 0; m < back.snapshots[i].raw().size(); ++m)
            CHECK(back.snapshots[i].raw()[m] == traj.snapshots[i].raw()[m]);
    }
    CHECK(back.diagnostics.besov_s == traj.diagnostics.besov_s);
    std::filesystem::remove_all(dir);
}
