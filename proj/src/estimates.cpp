#include "besovlab/estimates.hpp"

#include <algorithm>
#include <cmath>

#include "besovlab/bony.hpp"
#include "besovlab/ops.hpp"
#include "besovlab/parallel.hpp"
#include "besovlab/rng.hpp"

namespace besovlab {

namespace {

// Sample pairs cycle through the profile family; extremal single-block fields
// are where the paraproduct estimates are tight, so they stay in the mix.
// top_ring caps block placement to what the band supports (the same value on
// every grid sharing the band, which keeps samples grid-independent).
DataSpec sample_spec(const EstimateLabConfig& cfg, std::uint64_t ordinal, int top_ring) {
    const std::uint64_t seed = Rng::for_job(cfg.seed, ordinal).next_u64();
    switch (ordinal % 4) {
        case 0:
            return DataSpec{SpectralProfile::Smooth, 0, -1, cfg.band_limit, 0.0, seed};
        case 1:
            return DataSpec{SpectralProfile::Borderline, 0, -1, cfg.band_limit, 0.0, seed};
        case 2:
            return DataSpec{SpectralProfile::SingleBlock,
                            std::min(1 + static_cast<int>(ordinal % 2), top_ring), -1,
                            cfg.band_limit, 0.0, seed};
        default:
            return DataSpec{SpectralProfile::SingleBlock, std::min(3, top_ring), -1,
                            cfg.band_limit, 0.0, seed};
    }
}

bool refinement_pass(const std::vector<std::pair<int, double>>& per_grid, double factor) {
    for (const auto& [n, worst] : per_grid)
        if (!std::isfinite(worst)) return false;
    for (std::size_t i = 1; i < per_grid.size(); ++i)
        if (per_grid[i].second > factor * per_grid[i - 1].second) return false;
    return true;
}

}  // namespace

ConstantReport check_product_estimate(const EstimateLabConfig& cfg) {
    if (!cfg.idx.admissible())
        throw ConfigError("inadmissible Besov index for the product estimate");
    ConstantReport report;
    report.estimate_id = "product";
    report.samples = cfg.sample_count;

    for (int n : cfg.grids) {
        Grid grid(n);
        const int top_ring = highest_feasible_ring(grid, cfg.band_limit);
        std::vector<double> ratios(cfg.sample_count, 0.0);
        parallel_for(cfg.sample_count, cfg.threads, [&](std::size_t i) {
            SpectralField u =
                synthesize_besov_data(grid, cfg.idx, sample_spec(cfg, 2 * i, top_ring));
            SpectralField f =
                synthesize_besov_data(grid, cfg.idx, sample_spec(cfg, 2 * i + 1, top_ring));
            const double lhs = besov_norm(advect(u, f), cfg.idx.shifted(-1.0));
            const double rhs =
                besov_norm(u, cfg.idx.shifted(-1.0)) * besov_norm(f, cfg.idx);
            ratios[i] = rhs == 0.0 ? 0.0 : lhs / rhs;
        });
        const double worst = *std::max_element(ratios.begin(), ratios.end());
        report.per_grid.emplace_back(n, worst);
        report.worst_ratio = std::max(report.worst_ratio, worst);
    }
    report.pass = refinement_pass(report.per_grid, cfg.stability_factor);
    return report;
}

std::pair<ConstantReport, ConstantReport> check_pressure_estimate(const EstimateLabConfig& cfg) {
    if (!cfg.idx.admissible())
        throw ConfigError("inadmissible Besov index for the pressure estimate");
    ConstantReport strong;  // B^s bound against Lipschitz norms
    strong.estimate_id = "pressure_bs";
    strong.samples = cfg.sample_count;
    ConstantReport weak;  // B^{s-1} bound against min of crossed products
    weak.estimate_id = "pressure_bs_minus_1";
    weak.samples = cfg.sample_count;

    for (int n : cfg.grids) {
        Grid grid(n);
        const int top_ring = highest_feasible_ring(grid, cfg.band_limit);
        std::vector<double> strong_ratios(cfg.sample_count, 0.0);
        std::vector<double> weak_ratios(cfg.sample_count, 0.0);
        parallel_for(cfg.sample_count, cfg.threads, [&](std::size_t i) {
            SpectralField u =
                synthesize_besov_data(grid, cfg.idx, sample_spec(cfg, 2 * i, top_ring));
            SpectralField v =
                synthesize_besov_data(grid, cfg.idx, sample_spec(cfg, 2 * i + 1, top_ring));
            SpectralField gp = pressure_gradient_pair(u, v);
            std::vector<double> profile = block_lp_profile(gp, cfg.idx.p);

            const double lhs_s = aggregate_besov(profile, cfg.idx.s, cfg.idx.r);
            const double rhs_s = lipschitz_norm(u) * besov_norm(v, cfg.idx) +
                                 lipschitz_norm(v) * besov_norm(u, cfg.idx);
            strong_ratios[i] = rhs_s == 0.0 ? 0.0 : lhs_s / rhs_s;

            const double lhs_w = aggregate_besov(profile, cfg.idx.s - 1.0, cfg.idx.r);
            const double rhs_w =
                std::min(besov_norm(u, cfg.idx.shifted(-1.0)) * besov_norm(v, cfg.idx),
                         besov_norm(v, cfg.idx.shifted(-1.0)) * besov_norm(u, cfg.idx));
            weak_ratios[i] = rhs_w == 0.0 ? 0.0 : lhs_w / rhs_w;
        });
        const double worst_s = *std::max_element(strong_ratios.begin(), strong_ratios.end());
        const double worst_w = *std::max_element(weak_ratios.begin(), weak_ratios.end());
        strong.per_grid.emplace_back(n, worst_s);
        weak.per_grid.emplace_back(n, worst_w);
        strong.worst_ratio = std::max(strong.worst_ratio, worst_s);
        weak.worst_ratio = std::max(weak.worst_ratio, worst_w);
    }
    strong.pass = refinement_pass(strong.per_grid, cfg.stability_factor);
    weak.pass = refinement_pass(weak.per_grid, cfg.stability_factor);
    return {strong, weak};
}

ConstantReport check_interpolation(const EstimateLabConfig& cfg) {
    ConstantReport report;
    report.estimate_id = "interpolation";
    report.samples = cfg.sample_count;

    Grid grid(cfg.grids.front());
    const int top_ring = highest_feasible_ring(grid, cfg.band_limit);
    std::vector<double> ratios(cfg.sample_count, 0.0);
    parallel_for(cfg.sample_count, cfg.threads, [&](std::size_t i) {
        SpectralField u = synthesize_besov_data(grid, cfg.idx, sample_spec(cfg, i, top_ring));
        std::vector<double> profile = block_lp_profile(u, cfg.idx.p);
        const double mid = aggregate_besov(profile, cfg.idx.s, cfg.idx.r);
        const double lo = aggregate_besov(profile, cfg.idx.s - 1.0, cfg.idx.r);
        const double hi = aggregate_besov(profile, cfg.idx.s + 1.0, cfg.idx.r);
        const double bound = std::sqrt(lo * hi);
        ratios[i] = bound == 0.0 ? 0.0 : mid / bound;
    });
    report.worst_ratio = *std::max_element(ratios.begin(), ratios.end());
    report.per_grid.emplace_back(grid.n(), report.worst_ratio);
    report.pass = report.worst_ratio <= 1.0 + 1e-10;
    return report;
}

// ---------------------------------------------------------------------------
// Transport-diffusion estimate

std::vector<TransportScenario> default_transport_scenarios(int grid_n, std::uint64_t seed) {
    Grid grid(grid_n);
    std::vector<TransportScenario> scenarios;

    auto scalar_data = [&grid](std::initializer_list<std::tuple<int, int, double>> modes) {
        SpectralField f(grid, 1);
        for (const auto& [k1, k2, amp] : modes) {
            f.at_freq(0, k1, k2) += Complex(0.5 * amp, 0.0);
            f.at_freq(0, -k1, -k2) += Complex(0.5 * amp, 0.0);
        }
        return f;
    };

    {
        TransportScenario s(grid);
        s.name = "diffusion";
        s.f0 = scalar_data({{1, 0, 1.0}, {2, 1, 0.6}, {3, 2, 0.3}});
        s.velocity = steady_velocity(SpectralField(grid, 2));
        scenarios.push_back(std::move(s));
    }
    {
        TransportScenario s(grid);
        s.name = "translation";
        s.f0 = scalar_data({{2, 1, 1.0}, {1, 0, 0.3}});
        SpectralField v(grid, 2);
        v.at_freq(0, 0, 0) = Complex(1.0, 0.0);
        s.velocity = steady_velocity(std::move(v));
        scenarios.push_back(std::move(s));
    }
    {
        TransportScenario s(grid);
        s.name = "weak_shear";
        s.f0 = scalar_data({{1, 0, 1.0}, {2, 1, 0.4}});
        SpectralField v(grid, 2);
        v.at_freq(0, 0, 1) = Complex(0.25, 0.0);  // (0.5 cos y, 0)
        v.at_freq(0, 0, -1) = Complex(0.25, 0.0);
        s.velocity = steady_velocity(std::move(v));
        scenarios.push_back(std::move(s));
    }
    {
        TransportScenario s(grid);
        s.name = "forced_shear";
        s.f0 = scalar_data({{1, 1, 0.8}});
        SpectralField v(grid, 2);
        v.at_freq(0, 0, 1) = Complex(0.25, 0.0);
        v.at_freq(0, 0, -1) = Complex(0.25, 0.0);
        s.velocity = steady_velocity(std::move(v));
        SpectralField gshape = scalar_data({{2, 0, 1.0}, {0, 3, 0.5}});
        auto holder = std::make_shared<SpectralField>(std::move(gshape));
        s.forcing = [holder](double t) { return *holder * std::exp(-t); };
        scenarios.push_back(std::move(s));
    }
    {
        TransportScenario s(grid);
        s.name = "self_transport";
        s.self_transport = true;
        DataSpec spec = DataSpec::smooth(seed);
        spec.j_top = 2;
        SpectralField u0 = synthesize_besov_data(grid, BesovIndex(2.0, 2.0, 1.0), spec);
        u0 *= 0.7 / max_pointwise_magnitude(u0);
        s.ns_data = std::move(u0);
        scenarios.push_back(std::move(s));
    }
    return scenarios;
}

namespace {

TransportScenarioResult run_transport_scenario(const TransportScenario& scenario,
                                               const TransportCheckConfig& cfg) {
    TransportScenarioResult result;
    result.name = scenario.name;
    result.epsilons = cfg.epsilons;
    result.ratios.resize(cfg.epsilons.size(), 0.0);
    result.vp_linf.resize(cfg.epsilons.size(), 0.0);
    result.vp_besov.resize(cfg.epsilons.size(), 0.0);

    for (std::size_t e = 0; e < cfg.epsilons.size(); ++e) {
        SolverConfig solver;
        solver.epsilon = cfg.epsilons[e];
        solver.horizon = scenario.horizon;
        solver.dt = scenario.dt;
        solver.grid_n = scenario.grid_n;
        solver.snapshot_stride = 5;

        if (scenario.self_transport) {
            DiagnosticsSpec diag(cfg.sigma);
            diag.with_pressure = true;
            diag.store_fields = false;
            Trajectory traj = solve_ns(scenario.ns_data, solver, diag);
            const auto& d = traj.diagnostics;
            double ratio = 0.0;
            double g_integral = 0.0;
            for (std::size_t i = 0; i < d.times.size(); ++i) {
                if (i > 0)
                    g_integral += 0.5 * (d.pressure_besov[i] + d.pressure_besov[i - 1]) *
                                  (d.times[i] - d.times[i - 1]);
                ratio = std::max(ratio, d.besov_s[i] / (d.besov_s.front() + g_integral));
            }
            result.ratios[e] = ratio;
            result.vp_linf[e] = d.vp_linf.back();
            result.vp_besov[e] = d.vp_besov.back();
            continue;
        }

        DiagnosticsSpec diag(cfg.sigma);
        diag.store_fields = false;
        Trajectory traj =
            solve_transport_diffusion(scenario.f0, scenario.velocity, scenario.forcing,
                                      solver, diag);
        const auto& d = traj.diagnostics;
        double ratio = 0.0;
        double g_integral = 0.0;
        double g_prev = scenario.forcing
                            ? besov_norm(dealias(scenario.forcing(0.0)), cfg.sigma)
                            : 0.0;
        for (std::size_t i = 0; i < d.times.size(); ++i) {
            if (i > 0) {
                const double g_now =
                    scenario.forcing
                        ? besov_norm(dealias(scenario.forcing(d.times[i])), cfg.sigma)
                        : 0.0;
                g_integral += 0.5 * (g_now + g_prev) * (d.times[i] - d.times[i - 1]);
                g_prev = g_now;
            }
            ratio = std::max(ratio, d.besov_s[i] / (d.besov_s.front() + g_integral));
        }
        result.ratios[e] = ratio;

        // V_p of a steady velocity is just T times the gradient norm
        SpectralField v0 = scenario.velocity.eval(0.0);
        SpectralField grad_v = gradient(v0);
        const double grad_inf = lp_norm(grad_v, LpExponent::inf());
        const double inter = std::max(
            grad_inf,
            besov_norm(grad_v, BesovIndex(Grid::kDim / cfg.sigma.p.p, cfg.sigma.p,
                                          LpExponent::inf())));
        result.vp_linf[e] = grad_inf * scenario.horizon;
        result.vp_besov[e] = inter * scenario.horizon;
    }

    const double lo = *std::min_element(result.ratios.begin(), result.ratios.end());
    const double hi = *std::max_element(result.ratios.begin(), result.ratios.end());
    result.spread = lo == 0.0 ? 0.0 : (hi - lo) / lo;
    result.pass = std::isfinite(hi) && result.spread <= cfg.uniformity_tolerance;
    return result;
}

}  // namespace

TransportReport check_transport_estimate(const TransportCheckConfig& cfg,
                                         std::vector<TransportScenario> scenarios) {
    const double critical = 1.0 + Grid::kDim / cfg.sigma.p.p;
    if (cfg.sigma.s >= critical && !(cfg.sigma.s > critical) && cfg.sigma.r.p != 1.0)
        throw ConfigError("sigma at the critical line needs r = 1");

    TransportReport report;
    report.summary.estimate_id = "transport";
    report.summary.samples = static_cast<int>(scenarios.size());
    report.scenarios.resize(scenarios.size());

    parallel_for(scenarios.size(), cfg.threads, [&](std::size_t i) {
        report.scenarios[i] = run_transport_scenario(scenarios[i], cfg);
    });

    bool all_pass = true;
    double worst = 0.0;
    for (const auto& s : report.scenarios) {
        all_pass = all_pass && s.pass;
        for (double r : s.ratios) worst = std::max(worst, r);
    }
    report.summary.worst_ratio = worst;
    report.summary.pass = all_pass;
    report.summary.note = "ratio spread across epsilon within " +
                          std::to_string(cfg.uniformity_tolerance);
    return report;
}

}  // namespace besovlab
