#include "besovlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>

#include <nlohmann/json.hpp>

#include "besovlab/fft.hpp"
#include "besovlab/ops.hpp"
#include "besovlab/snapshot_io.hpp"

namespace besovlab {

namespace {

using json = nlohmann::ordered_json;

std::vector<double> viscous_factor(const Grid& grid, double epsilon, double dt) {
    const int n = grid.n();
    std::vector<double> factor(grid.size());
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = grid.freq(i1);
        for (int i2 = 0; i2 < n; ++i2, ++idx) {
            const double k2 = grid.freq(i2);
            factor[idx] = std::exp(-epsilon * (k1 * k1 + k2 * k2) * dt);
        }
    }
    return factor;
}

void apply_factor(SpectralField& field, const std::vector<double>& factor) {
    for (int c = 0; c < field.components(); ++c) {
        auto comp = field.component(c);
        for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= factor[i];
    }
}

SpectralField scaled_by(const SpectralField& field, const std::vector<double>& factor) {
    SpectralField out = field;
    apply_factor(out, factor);
    return out;
}

// u_{n+1} = E u_n + (dt/6) (E a + 2 E2 (b + c) + d), the IF-RK4 update.
SpectralField rk4_combine(const SpectralField& u0, const SpectralField& a,
                          const SpectralField& b, const SpectralField& c,
                          const SpectralField& d, double dt,
                          const std::vector<double>& e_full,
                          const std::vector<double>& e_half) {
    SpectralField out = scaled_by(u0, e_full);
    out += scaled_by(a, e_full) * (dt / 6.0);
    out += scaled_by(b + c, e_half) * (dt / 3.0);
    out += d * (dt / 6.0);
    return out;
}

}  // namespace

void SolverConfig::validate() const {
    if (epsilon < 0.0 || epsilon > 1.0)
        throw ConfigError("viscosity must lie in [0, 1], got " + std::to_string(epsilon));
    if (!(dt > 0.0) || !(horizon > 0.0)) throw ConfigError("dt and horizon must be positive");
    if (snapshot_stride < 1) throw ConfigError("snapshot_stride must be >= 1");
    Grid check(grid_n);
    (void)check;
    if (steps() < 1) throw ConfigError("horizon shorter than a single step");
}

int SolverConfig::steps() const {
    const double raw = horizon / dt;
    const int n = static_cast<int>(std::llround(raw));
    if (n < 1 || std::abs(raw - n) > 1e-9 * std::max(1.0, raw))
        throw ConfigError("horizon must be a positive integral number of steps");
    return n;
}

double Trajectory::snapshot_spacing() const { return config.dt * config.snapshot_stride; }

// ---------------------------------------------------------------------------
// Navier-Stokes stepper

NsStepper::NsStepper(SpectralField u0, const SolverConfig& cfg)
    : config_(cfg), state_(std::move(u0)),
      factor_full_(viscous_factor(cfg.grid(), cfg.epsilon, cfg.dt)),
      factor_half_(viscous_factor(cfg.grid(), cfg.epsilon, cfg.dt / 2.0)) {
    config_.validate();
    if (state_.components() != 2)
        throw ContractViolation("velocity field must have 2 components");
    if (state_.grid() != config_.grid()) throw ContractViolation("initial data grid mismatch");
    if (relative_divergence(state_) > 1e-10)
        throw ContractViolation("solve_ns requires divergence-free initial data");
    if (config_.dealias_products) dealias_in_place(state_);
}

SpectralField NsStepper::nonlinearity(const SpectralField& u, bool record_umax) {
    const Grid& grid = u.grid();
    const std::size_t npts = grid.size();

    std::vector<Complex> u1 = component_values(u, 0);
    std::vector<Complex> u2 = component_values(u, 1);
    if (record_umax) {
        double umax_sq = 0.0;
        double total = 0.0;  // NaN/Inf survive summation, unlike max
        for (std::size_t i = 0; i < npts; ++i) {
            const double a = u1[i].real();
            const double b = u2[i].real();
            umax_sq = std::max(umax_sq, a * a + b * b);
            total += a * a + b * b;
        }
        last_umax_ = std::isfinite(total) ? std::sqrt(umax_sq)
                                          : std::numeric_limits<double>::quiet_NaN();
        check_health(last_umax_);
    }

    SpectralField grad_u = gradient(u);
    SpectralField adv(grid, 2);
    std::vector<Complex> buffer(npts);
    for (int c = 0; c < 2; ++c) {
        std::vector<Complex> d1 = component_values(grad_u, c * 2 + 0);
        std::vector<Complex> d2 = component_values(grad_u, c * 2 + 1);
        for (std::size_t i = 0; i < npts; ++i)
            buffer[i] = Complex(u1[i].real() * d1[i].real() + u2[i].real() * d2[i].real(), 0.0);
        component_from_values(adv, c, buffer);
    }
    if (config_.dealias_products) dealias_in_place(adv);
    return leray_project(adv) * (-1.0);
}

void NsStepper::check_health(double umax) const {
    if (!std::isfinite(umax))
        throw SolverAbort(SolverAbort::Reason::NonFinite, time_,
                          "solution lost finiteness at t = " + std::to_string(time_));
    if (umax > 0.0) {
        // dt is chosen as cfl_margin * dx / umax(0); the runtime guard fires
        // only when the full CFL estimate dx / umax(t) is exceeded, so the
        // margin is headroom for velocity growth along the trajectory.
        const double dt_limit = config_.grid().spacing() / umax;
        if (config_.dt > dt_limit)
            throw SolverAbort(SolverAbort::Reason::CflViolation, time_,
                              "CFL violation at t = " + std::to_string(time_) + ": dt = " +
                                  std::to_string(config_.dt) + " exceeds limit " +
                                  std::to_string(dt_limit));
    }
}

void NsStepper::step() {
    const double dt = config_.dt;
    SpectralField a = nonlinearity(state_, true);
    SpectralField b = nonlinearity(scaled_by(state_ + a * (dt / 2.0), factor_half_), false);
    SpectralField c = nonlinearity(scaled_by(state_, factor_half_) + b * (dt / 2.0), false);
    SpectralField d = nonlinearity(
        scaled_by(state_, factor_full_) + scaled_by(c, factor_half_) * dt, false);
    state_ = rk4_combine(state_, a, b, c, d, dt, factor_full_, factor_half_);
    time_ += dt;
}

// ---------------------------------------------------------------------------
// Transport-diffusion stepper

VelocitySource steady_velocity(SpectralField v) {
    auto holder = std::make_shared<SpectralField>(std::move(v));
    return VelocitySource{[holder](double) { return *holder; }, 0.0};
}

VelocitySource trajectory_velocity(const Trajectory& trajectory) {
    if (trajectory.snapshots.size() < 4)
        throw ConfigError("trajectory velocity needs at least 4 stored snapshots");
    auto fields = std::make_shared<std::vector<SpectralField>>(trajectory.snapshots);
    auto times = std::make_shared<std::vector<double>>(trajectory.times);
    const double h = trajectory.snapshot_spacing();

    auto eval = [fields, times, h](double t) {
        const auto& snaps = *fields;
        const int count = static_cast<int>(snaps.size());
        // cubic Lagrange through the 4 snapshots around t, clamped at the ends
        int base = static_cast<int>(std::floor(t / h)) - 1;
        base = std::clamp(base, 0, count - 4);
        double w[4];
        for (int m = 0; m < 4; ++m) {
            w[m] = 1.0;
            const double tm = (*times)[base + m];
            for (int l = 0; l < 4; ++l) {
                if (l == m) continue;
                w[m] *= (t - (*times)[base + l]) / (tm - (*times)[base + l]);
            }
        }
        SpectralField out = snaps[base] * w[0];
        for (int m = 1; m < 4; ++m) out += snaps[base + m] * w[m];
        return out;
    };
    return VelocitySource{eval, h};
}

TransportStepper::TransportStepper(SpectralField f0, VelocitySource velocity, ForcingFn forcing,
                                   const SolverConfig& cfg)
    : config_(cfg), state_(std::move(f0)), velocity_(std::move(velocity)),
      forcing_(std::move(forcing)),
      factor_full_(viscous_factor(cfg.grid(), cfg.epsilon, cfg.dt)),
      factor_half_(viscous_factor(cfg.grid(), cfg.epsilon, cfg.dt / 2.0)) {
    config_.validate();
    if (state_.grid() != config_.grid()) throw ContractViolation("initial data grid mismatch");
    if (velocity_.sample_spacing > 0.0 &&
        velocity_.sample_spacing > 10.0 * config_.dt * (1.0 + 1e-9))
        throw ConfigError("velocity snapshot spacing too coarse for dt: " +
                          std::to_string(velocity_.sample_spacing) + " vs dt " +
                          std::to_string(config_.dt));
    if (config_.dealias_products) dealias_in_place(state_);
}

SpectralField TransportStepper::rhs(const SpectralField& f, const SpectralField& velocity,
                                    double t) {
    SpectralField out = advect(velocity, f) * (-1.0);
    if (forcing_) {
        SpectralField g = forcing_(t);
        if (config_.dealias_products) dealias_in_place(g);
        out += g;
    }
    if (!std::isfinite(out.max_abs_coeff()))
        throw SolverAbort(SolverAbort::Reason::NonFinite, time_,
                          "transport solution lost finiteness at t = " + std::to_string(time_));
    return out;
}

void TransportStepper::step() {
    const double dt = config_.dt;
    const SpectralField v0 = velocity_.eval(time_);
    const SpectralField vh = velocity_.eval(time_ + dt / 2.0);
    const SpectralField v1 = velocity_.eval(time_ + dt);

    const double vmax = max_pointwise_magnitude(v0);
    if (!std::isfinite(vmax))
        throw SolverAbort(SolverAbort::Reason::NonFinite, time_,
                          "velocity lost finiteness at t = " + std::to_string(time_));
    if (vmax > 0.0 && config_.dt > config_.grid().spacing() / vmax)
        throw SolverAbort(SolverAbort::Reason::CflViolation, time_,
                          "CFL violation in transport solve at t = " + std::to_string(time_));

    SpectralField a = rhs(state_, v0, time_);
    SpectralField b = rhs(scaled_by(state_ + a * (dt / 2.0), factor_half_), vh,
                          time_ + dt / 2.0);
    SpectralField c = rhs(scaled_by(state_, factor_half_) + b * (dt / 2.0), vh,
                          time_ + dt / 2.0);
    SpectralField d = rhs(scaled_by(state_, factor_full_) + scaled_by(c, factor_half_) * dt, v1,
                          time_ + dt);
    state_ = rk4_combine(state_, a, b, c, d, dt, factor_full_, factor_half_);
    time_ += dt;
}

// ---------------------------------------------------------------------------
// Drivers

namespace {

struct VpState {
    double grad_inf = 0.0;
    double intersection = 0.0;
    double t = 0.0;
    bool primed = false;
};

void record_diagnostics(Trajectory& trajectory, const SpectralField& u, double t,
                        const DiagnosticsSpec& diag, VpState& vp) {
    TrajectoryDiagnostics& d = trajectory.diagnostics;
    std::vector<double> profile = block_lp_profile(u, diag.idx.p);
    d.times.push_back(t);
    d.besov_s.push_back(aggregate_besov(profile, diag.idx.s, diag.idx.r));
    d.besov_s_minus_1.push_back(aggregate_besov(profile, diag.idx.s - 1.0, diag.idx.r));
    d.l2.push_back(lp_norm(u, 2.0));

    if (diag.with_vp) {
        SpectralField grad_u = gradient(u);
        const double grad_inf = lp_norm(grad_u, LpExponent::inf());
        const double intersection = std::max(
            grad_inf, besov_norm(grad_u, BesovIndex(Grid::kDim / diag.idx.p.p, diag.idx.p,
                                                    LpExponent::inf())));
        d.lipschitz.push_back(lp_norm(u, LpExponent::inf()) + grad_inf);
        if (!vp.primed) {
            d.vp_linf.push_back(0.0);
            d.vp_besov.push_back(0.0);
        } else {
            const double h = t - vp.t;
            d.vp_linf.push_back(d.vp_linf.back() + 0.5 * h * (grad_inf + vp.grad_inf));
            d.vp_besov.push_back(d.vp_besov.back() +
                                 0.5 * h * (intersection + vp.intersection));
        }
        vp = VpState{grad_inf, intersection, t, true};
    }
    if (diag.with_pressure && u.components() == 2)
        d.pressure_besov.push_back(besov_norm(pressure_gradient_pair(u, u), diag.idx));

    trajectory.times.push_back(t);
    if (diag.store_fields) {
        SpectralField copy = u;
        copy.set_time_tag(t);
        trajectory.snapshots.push_back(std::move(copy));
    }
}

}  // namespace

Trajectory solve_ns(const SpectralField& u0, const SolverConfig& cfg,
                    const DiagnosticsSpec& diag) {
    NsStepper stepper(u0, cfg);
    Trajectory trajectory;
    trajectory.config = cfg;
    VpState vp;
    record_diagnostics(trajectory, stepper.state(), 0.0, diag, vp);
    const double initial_besov = trajectory.diagnostics.besov_s.front();

    const int steps = cfg.steps();
    for (int k = 1; k <= steps; ++k) {
        stepper.step();
        if (k % cfg.snapshot_stride == 0 || k == steps) {
            record_diagnostics(trajectory, stepper.state(), stepper.time(), diag, vp);
            if (trajectory.diagnostics.besov_s.back() > cfg.blowup_factor * initial_besov)
                throw SolverAbort(SolverAbort::Reason::LeftBall, stepper.time(),
                                  "left the data ball B_R at t = " +
                                      std::to_string(stepper.time()));
        }
    }
    return trajectory;
}

Trajectory solve_transport_diffusion(const SpectralField& f0, const VelocitySource& velocity,
                                     const ForcingFn& forcing, const SolverConfig& cfg,
                                     const DiagnosticsSpec& diag) {
    TransportStepper stepper(f0, velocity, forcing, cfg);
    Trajectory trajectory;
    trajectory.config = cfg;
    DiagnosticsSpec local = diag;
    local.with_vp = false;  // V_p belongs to the driving velocity, not to f
    local.with_pressure = false;
    VpState vp;
    record_diagnostics(trajectory, stepper.state(), 0.0, local, vp);

    const int steps = cfg.steps();
    for (int k = 1; k <= steps; ++k) {
        stepper.step();
        if (k % cfg.snapshot_stride == 0 || k == steps)
            record_diagnostics(trajectory, stepper.state(), stepper.time(), local, vp);
    }
    return trajectory;
}

SpectralField taylor_green(const Grid& grid, double t, double epsilon) {
    SpectralField u(grid, 2);
    const double amp = 0.25 * std::exp(-2.0 * epsilon * t);
    // sin x cos y and -cos x sin y as four modes per component
    u.at_freq(0, 1, 1) = Complex(0.0, -amp);
    u.at_freq(0, 1, -1) = Complex(0.0, -amp);
    u.at_freq(0, -1, 1) = Complex(0.0, amp);
    u.at_freq(0, -1, -1) = Complex(0.0, amp);
    u.at_freq(1, 1, 1) = Complex(0.0, amp);
    u.at_freq(1, 1, -1) = Complex(0.0, -amp);
    u.at_freq(1, -1, 1) = Complex(0.0, amp);
    u.at_freq(1, -1, -1) = Complex(0.0, -amp);
    u.set_time_tag(t);
    return u;
}

// ---------------------------------------------------------------------------
// Persistence

void save_trajectory(const Trajectory& trajectory, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    json manifest;
    manifest["schema"] = 1;
    manifest["config"] = {{"epsilon", trajectory.config.epsilon},
                          {"horizon", trajectory.config.horizon},
                          {"dt", trajectory.config.dt},
                          {"grid_n", trajectory.config.grid_n},
                          {"dealias", trajectory.config.dealias_products},
                          {"snapshot_stride", trajectory.config.snapshot_stride},
                          {"cfl_margin", trajectory.config.cfl_margin},
                          {"blowup_factor", trajectory.config.blowup_factor}};
    const TrajectoryDiagnostics& d = trajectory.diagnostics;
    manifest["diagnostics"] = {{"times", d.times},
                               {"besov_s", d.besov_s},
                               {"besov_s_minus_1", d.besov_s_minus_1},
                               {"l2", d.l2},
                               {"lipschitz", d.lipschitz},
                               {"vp_linf", d.vp_linf},
                               {"vp_besov", d.vp_besov},
                               {"pressure_besov", d.pressure_besov}};
    json files = json::array();
    for (std::size_t i = 0; i < trajectory.snapshots.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "snap_%06zu.bnsl", i);
        write_snapshot(dir / name, trajectory.snapshots[i], trajectory.config.epsilon);
        files.push_back(name);
    }
    manifest["snapshots"] = files;
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << "\n";
    if (!out) throw ConfigError("cannot write trajectory manifest in " + dir.string());
}

Trajectory load_trajectory(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw ConfigError("no trajectory manifest in " + dir.string());
    json manifest = json::parse(in, nullptr, false);
    if (manifest.is_discarded()) throw ConfigError("malformed trajectory manifest");

    Trajectory trajectory;
    const json& c = manifest.at("config");
    trajectory.config.epsilon = c.at("epsilon").get<double>();
    trajectory.config.horizon = c.at("horizon").get<double>();
    trajectory.config.dt = c.at("dt").get<double>();
    trajectory.config.grid_n = c.at("grid_n").get<int>();
    trajectory.config.dealias_products = c.at("dealias").get<bool>();
    trajectory.config.snapshot_stride = c.at("snapshot_stride").get<int>();
    trajectory.config.cfl_margin = c.at("cfl_margin").get<double>();
    trajectory.config.blowup_factor = c.at("blowup_factor").get<double>();

    const json& d = manifest.at("diagnostics");
    TrajectoryDiagnostics& diag = trajectory.diagnostics;
    d.at("times").get_to(diag.times);
    d.at("besov_s").get_to(diag.besov_s);
    d.at("besov_s_minus_1").get_to(diag.besov_s_minus_1);
    d.at("l2").get_to(diag.l2);
    d.at("lipschitz").get_to(diag.lipschitz);
    d.at("vp_linf").get_to(diag.vp_linf);
    d.at("vp_besov").get_to(diag.vp_besov);
    d.at("pressure_besov").get_to(diag.pressure_besov);

    trajectory.times.clear();
    for (const auto& name : manifest.at("snapshots")) {
        SnapshotHeader header;
        trajectory.snapshots.push_back(read_snapshot(dir / name.get<std::string>(), &header));
        trajectory.times.push_back(header.time);
    }
    return trajectory;
}

}  // namespace besovlab
