#pragma once

#include <map>
#include <string>
#include <vector>

#include "besovlab/solver.hpp"
#include "besovlab/synthesis.hpp"

namespace besovlab {

/// Empirical stand-in for a non-constructive inequality constant: the worst
/// LHS/RHS ratio over a seeded sample family, plus the same number on refined
/// grids. The verdict is stability under refinement, not an absolute value.
struct ConstantReport {
    std::string estimate_id;
    int samples = 0;
    double worst_ratio = 0.0;
    std::vector<std::pair<int, double>> per_grid;  // (grid n, worst ratio)
    bool pass = false;
    std::string note;
};

struct EstimateLabConfig {
    BesovIndex idx{2.0, 2.0, 1.0};
    int sample_count = 200;
    std::uint64_t seed = 1;
    std::vector<int> grids = {64, 128};
    // Synthesis band, pinned so samples are the same continuum fields on
    // every grid and their products stay fully resolved everywhere.
    int band_limit = 10;
    double stability_factor = 1.25;  // worst(2n) <= factor * worst(n)
    int threads = 0;
};

/// ||u . grad f||_{B^{s-1}} <= C ||u||_{B^{s-1}} ||f||_{B^s}, div u = 0.
ConstantReport check_product_estimate(const EstimateLabConfig& cfg);

/// The two pressure bounds: in B^s against Lipschitz norms, and in B^{s-1}
/// against the min of the crossed Besov products.
std::pair<ConstantReport, ConstantReport> check_pressure_estimate(const EstimateLabConfig& cfg);

/// Per-sample interpolation inequality
/// ||u||_{B^s} <= ||u||_{B^{s-1}}^{1/2} ||u||_{B^{s+1}}^{1/2}; exact, so the
/// worst ratio must not exceed 1 + 1e-10.
ConstantReport check_interpolation(const EstimateLabConfig& cfg);

// ---------------------------------------------------------------------------
// Transport-diffusion estimate

struct TransportScenario {
    explicit TransportScenario(const Grid& grid)
        : f0(grid, 1), ns_data(grid, 2), grid_n(grid.n()) {}

    std::string name;
    SpectralField f0;
    VelocitySource velocity;      // ignored for the self-transport scenario
    ForcingFn forcing;            // may be null
    bool self_transport = false;  // f = v: run the flow itself
    SpectralField ns_data;        // initial datum when self_transport
    double horizon = 0.2;
    double dt = 2e-3;
    int grid_n = 64;
};

struct TransportScenarioResult {
    std::string name;
    std::vector<double> epsilons;
    std::vector<double> ratios;    // sup_t ||f||_sigma / (||f0||_sigma + int ||g||_sigma)
    std::vector<double> vp_linf;   // V_p(v, T), both variants
    std::vector<double> vp_besov;
    double spread = 0.0;  // (max - min) / min across epsilon
    bool pass = false;
};

struct TransportReport {
    ConstantReport summary;
    std::vector<TransportScenarioResult> scenarios;
};

struct TransportCheckConfig {
    BesovIndex sigma{1.0, 2.0, 1.0};
    std::vector<double> epsilons = {0.0, 1e-3, 1e-2, 1e-1};
    double uniformity_tolerance = 0.10;
    int threads = 0;
};

/// Built-in scenario family: diffusion, translation, weak shear, forced
/// transport, and the self-transport flow itself.
std::vector<TransportScenario> default_transport_scenarios(int grid_n, std::uint64_t seed);

TransportReport check_transport_estimate(const TransportCheckConfig& cfg,
                                         std::vector<TransportScenario> scenarios);

}  // namespace besovlab
