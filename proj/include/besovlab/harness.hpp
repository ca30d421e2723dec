#pragma once

#include <nlohmann/json.hpp>

#include "besovlab/config.hpp"
#include "besovlab/estimates.hpp"
#include "besovlab/solver.hpp"
#include "besovlab/synthesis.hpp"

namespace besovlab {

/// Least-squares line in log-log coordinates over the points whose abscissa
/// falls inside [window_lo, window_hi]. residual is the RMS deviation of
/// log10(y) from the fit.
struct RateFit {
    std::vector<double> xs;
    std::vector<double> ys;
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    int points_used = 0;
};

RateFit fit_rate(const std::vector<std::pair<double, double>>& points, double window_lo,
                 double window_hi);

// ---------------------------------------------------------------------------

struct SweepConfig {
    BesovIndex idx{2.0, 2.0, 1.0};
    double radius = 1.5;  // data ball: every datum rescaled to this B^s norm
    std::vector<double> epsilon_grid = {0.0, 1e-3, 1e-2, 1e-1};  // must contain 0
    std::vector<int> n_grid = {2, 3, 4};
    std::vector<double> delta_grid = {1e-1, 1e-2, 1e-3};
    DataSpec data = DataSpec::borderline(1);
    int grid_n = 64;
    double horizon = 0.0;   // 0: probe the slowest datum at eps = 0, cap at 1
    double dt = 0.0;        // 0: CFL estimate with safety margin + accuracy cap
    int snapshot_stride = 0;  // 0: about 48 diagnostic times per run
    double cfl_margin = 0.5;
    double accuracy_theta = 0.12;  // dt <= theta / (band * umax)
    std::uint64_t master_seed = 1;
    int threads = 0;
    bool emit_svg = true;

    // verdict windows
    double slope_lo = 0.9, slope_hi = 1.1, slope_residual = 0.1;
    double ratio_b_lo = 1.5, ratio_b_hi = 2.5;  // 2^N consistency
    double ratio_c_lo = 3.0, ratio_c_hi = 5.0;  // 2^{2N} consistency
    double uniformity = 0.25;

    void validate() const;
};

SweepConfig sweep_config_from_file(const ConfigFile& file);
ConfigFile sweep_config_to_file(const SweepConfig& cfg);

struct Verdict {
    std::string name;
    bool pass = false;
    double value = 0.0;
    std::string detail;
};

struct ExperimentReport {
    std::string experiment;
    std::string config_text;    // canonical echo of the resolved config
    std::uint64_t config_hash;  // FNV-1a of config_text
    nlohmann::ordered_json payload;
    std::vector<Verdict> verdicts;
    bool pass = false;

    std::string stem() const;  // "<experiment>__<hash16>"
};

/// (UB1)+(UB2): sup-in-time norms uniform over the viscosity grid, and the
/// higher-norm bound proportional to the higher norm of the data.
ExperimentReport run_uniform_bounds(const SweepConfig& cfg);

/// (UB3): weak-norm Lipschitz bound, mollified-data comparison, and the full
/// continuity modulus with its truncation budget.
ExperimentReport run_continuous_dependence(const SweepConfig& cfg);

/// (UB4): the viscous/inviscid gap, its mollified version at each truncation
/// level with the epsilon and 2^N / 2^{2N} consistency tests, and the
/// triangulated budget.
ExperimentReport run_inviscid_limit(const SweepConfig& cfg);

ExperimentReport run_experiment(const std::string& kind, const SweepConfig& cfg);

}  // namespace besovlab
