#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "besovlab/besov.hpp"
#include "besovlab/field.hpp"

namespace besovlab {

struct SolverConfig {
    double epsilon = 0.0;   // viscosity, in [0, 1]
    double horizon = 1.0;   // final time T
    double dt = 1e-3;
    int grid_n = 64;
    bool dealias_products = true;
    int snapshot_stride = 1;     // steps between stored snapshots/diagnostics
    double cfl_margin = 0.5;     // dt <= margin * dx / max|u|, checked every step
    double blowup_factor = 1e3;  // abort once besov_s exceeds this times its initial value

    void validate() const;
    int steps() const;
    Grid grid() const { return Grid(grid_n); }
};

/// Per-snapshot norms plus the accumulated transport quantities
/// V(t) = int_0^t ||grad u|| dtau (trapezoid rule), in both the L^inf and the
/// B^{d/p}_{p,inf} cap L^inf variants.
struct TrajectoryDiagnostics {
    std::vector<double> times;
    std::vector<double> besov_s;
    std::vector<double> besov_s_minus_1;
    std::vector<double> l2;
    std::vector<double> lipschitz;
    std::vector<double> vp_linf;
    std::vector<double> vp_besov;
    std::vector<double> pressure_besov;  // ||grad P(u)||_{B^s}, when requested
};

struct DiagnosticsSpec {
    BesovIndex idx;
    bool with_vp = true;
    bool with_pressure = false;
    bool store_fields = true;

    explicit DiagnosticsSpec(BesovIndex i) : idx(i) {}
};

struct Trajectory {
    SolverConfig config;
    std::vector<double> times;            // snapshot times
    std::vector<SpectralField> snapshots; // empty unless store_fields
    TrajectoryDiagnostics diagnostics;

    double snapshot_spacing() const;
    const SpectralField& at_time_index(std::size_t i) const { return snapshots.at(i); }
};

/// One explicit time step holder for the incompressible equations in velocity
/// form: du/dt = -Leray[(u.grad)u] - eps |k|^2 u, advanced by RK4 on the
/// nonlinearity with the viscous factor exp(-eps |k|^2 dt) applied exactly.
/// Distinct steppers share nothing and may run on different threads.
class NsStepper {
  public:
    NsStepper(SpectralField u0, const SolverConfig& cfg);

    void step();
    const SpectralField& state() const { return state_; }
    double time() const { return time_; }
    double last_umax() const { return last_umax_; }
    const SolverConfig& config() const { return config_; }

  private:
    SpectralField nonlinearity(const SpectralField& u, bool record_umax);
    void check_health(double umax) const;

    SolverConfig config_;
    SpectralField state_;
    std::vector<double> factor_full_;  // exp(-eps |k|^2 dt)
    std::vector<double> factor_half_;
    double time_ = 0.0;
    double last_umax_ = 0.0;
};

/// Time-dependent velocity for the transport-diffusion problem.
/// sample_spacing = 0 marks an exact closed form; a positive value marks
/// snapshot data interpolated in time (cubic), and the solver rejects
/// spacings too coarse for its own dt.
struct VelocitySource {
    std::function<SpectralField(double)> eval;
    double sample_spacing = 0.0;
};

VelocitySource steady_velocity(SpectralField v);
VelocitySource trajectory_velocity(const Trajectory& trajectory);

using ForcingFn = std::function<SpectralField(double)>;

/// Transport-diffusion stepper for df/dt + v.grad f - eps Lap f = g, same
/// integrating-factor RK4 scheme without the Leray projection.
class TransportStepper {
  public:
    TransportStepper(SpectralField f0, VelocitySource velocity, ForcingFn forcing,
                     const SolverConfig& cfg);

    void step();
    const SpectralField& state() const { return state_; }
    double time() const { return time_; }

  private:
    SpectralField rhs(const SpectralField& f, const SpectralField& velocity, double t);

    SolverConfig config_;
    SpectralField state_;
    VelocitySource velocity_;
    ForcingFn forcing_;
    std::vector<double> factor_full_;
    std::vector<double> factor_half_;
    double time_ = 0.0;
};

/// Integrate the Navier-Stokes/Euler flow from divergence-free data.
Trajectory solve_ns(const SpectralField& u0, const SolverConfig& cfg,
                    const DiagnosticsSpec& diag);

/// Integrate the transport-diffusion problem; f may have any component count.
Trajectory solve_transport_diffusion(const SpectralField& f0, const VelocitySource& velocity,
                                     const ForcingFn& forcing, const SolverConfig& cfg,
                                     const DiagnosticsSpec& diag);

/// The Taylor-Green vortex (sin x cos y, -cos x sin y) e^{-2 eps t}, exact.
SpectralField taylor_green(const Grid& grid, double t, double epsilon);

/// Persist a trajectory as a directory of BNSL snapshots plus manifest.json.
void save_trajectory(const Trajectory& trajectory, const std::filesystem::path& dir);
Trajectory load_trajectory(const std::filesystem::path& dir);

}  // namespace besovlab
