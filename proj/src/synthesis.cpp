#include "besovlab/synthesis.hpp"

#include <cmath>

#include "besovlab/ops.hpp"
#include "besovlab/rng.hpp"

namespace besovlab {

namespace {

struct Mode {
    int k1;
    int k2;
};

// Half-lattice modes on the plateau of ring j (where only profile_j is
// nonzero and equals 1), within the band.
std::vector<Mode> plateau_modes(const Grid& grid, int j, int band) {
    const double lo = (4.0 / 3.0) * std::pow(2.0, j);
    const double hi = 2.5 * std::pow(2.0, j);
    std::vector<Mode> modes;
    for (int k1 = 0; k1 <= band; ++k1) {
        for (int k2 = -band; k2 <= band; ++k2) {
            if (k1 == 0 && k2 <= 0) continue;  // half lattice, no mean
            const double r = std::hypot(double(k1), double(k2));
            if (r >= lo && r <= hi) modes.push_back({k1, k2});
        }
    }
    (void)grid;
    return modes;
}

double ring_weight(SpectralProfile profile, int j, int single_j) {
    switch (profile) {
        case SpectralProfile::Smooth:
            return std::pow(2.0, -2.0 * j);
        case SpectralProfile::Borderline:
            return 1.0 / ((1.0 + j) * (1.0 + j));
        case SpectralProfile::SingleBlock:
            return j == single_j ? 1.0 : 0.0;
    }
    return 0.0;
}

}  // namespace

int highest_feasible_ring(const Grid& grid, int band_limit) {
    const int band = band_limit > 0 ? std::min(band_limit, grid.dealias_limit())
                                    : grid.dealias_limit();
    int top = -1;
    for (int j = 0;; ++j) {
        if (plateau_modes(grid, j, band).empty()) break;
        top = j;
    }
    return top;
}

SpectralField synthesize_besov_data(const Grid& grid, const BesovIndex& idx,
                                    const DataSpec& spec) {
    const int band = spec.band_limit > 0 ? std::min(spec.band_limit, grid.dealias_limit())
                                         : grid.dealias_limit();
    const int feasible = highest_feasible_ring(grid, band);
    int j_top = spec.j_top >= 0 ? std::min(spec.j_top, feasible) : feasible;
    if (spec.j_top >= 0 && spec.j_top > feasible)
        throw ConfigError("requested ring " + std::to_string(spec.j_top) +
                          " has no lattice modes inside band " + std::to_string(band));
    if (spec.profile == SpectralProfile::SingleBlock && spec.single_block_j > feasible)
        throw ConfigError("single_block ring " + std::to_string(spec.single_block_j) +
                          " is infeasible on this grid");

    Rng rng(spec.seed);
    SpectralField u(grid, 2);
    for (int j = 0; j <= j_top; ++j) {
        const double weight = ring_weight(spec.profile, j, spec.single_block_j);
        if (weight == 0.0) continue;
        auto modes = plateau_modes(grid, j, band);

        SpectralField ring(grid, 2);
        for (const Mode& m : modes) {
            const double kmag = std::hypot(double(m.k1), double(m.k2));
            const double amp = 0.5 + rng.uniform();
            const Complex z = 0.5 * amp * std::polar(1.0, rng.uniform(0.0, kTwoPi));
            const double d1 = -m.k2 / kmag;  // k-perp: divergence-free direction
            const double d2 = m.k1 / kmag;
            ring.at_freq(0, m.k1, m.k2) += d1 * z;
            ring.at_freq(1, m.k1, m.k2) += d2 * z;
            ring.at_freq(0, -m.k1, -m.k2) += d1 * std::conj(z);
            ring.at_freq(1, -m.k1, -m.k2) += d2 * std::conj(z);
        }
        // the ring sits on the plateau, so Delta_j ring == ring and the block
        // norm can be pinned exactly
        const double norm = lp_norm(ring, idx.p);
        if (norm == 0.0) continue;
        const double scale = weight / (std::pow(2.0, j * idx.s) * norm);
        u += ring * scale;
    }

    u = leray_project(u);  // already solenoidal; this is a cheap invariant pin
    if (spec.target_norm > 0.0) {
        const double norm = besov_norm(u, idx);
        if (norm == 0.0) throw ConfigError("cannot normalize a zero synthesis");
        u *= spec.target_norm / norm;
    }
    return u;
}

}  // namespace besovlab
