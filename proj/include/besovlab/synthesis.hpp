#pragma once

#include <cstdint>

#include "besovlab/besov.hpp"

namespace besovlab {

/// Dyadic spectral profiles for synthesized data: the target of
/// 2^{js} ||Delta_j u||_p per ring is
///   smooth      2^{-2j}        (data lies in B^{s+2})
///   borderline  (1+j)^{-2}     (slowly summable tails, the hard regime)
///   single_block  one ring only
enum class SpectralProfile { Smooth, Borderline, SingleBlock };

struct DataSpec {
    SpectralProfile profile = SpectralProfile::Smooth;
    int single_block_j = 3;  // ring for SingleBlock
    int j_top = -1;          // highest populated ring; -1 = highest feasible
    int band_limit = 0;      // |k|_inf cap; 0 = the grid's dealias limit.
                             // Pin it to the coarsest grid's limit when the
                             // same continuum field must exist on two grids.
    double target_norm = 0.0;  // rescale ||u||_{B^s_{p,r}} to this; 0 = keep profile
    std::uint64_t seed = 1;

    static DataSpec smooth(std::uint64_t seed, double norm = 0.0) {
        return DataSpec{SpectralProfile::Smooth, 3, -1, 0, norm, seed};
    }
    static DataSpec borderline(std::uint64_t seed, double norm = 0.0) {
        return DataSpec{SpectralProfile::Borderline, 3, -1, 0, norm, seed};
    }
    static DataSpec single_block(int j, std::uint64_t seed, double norm = 0.0) {
        return DataSpec{SpectralProfile::SingleBlock, j, -1, 0, norm, seed};
    }
};

/// Highest ring whose multiplier plateau contains lattice modes within the
/// band (populating it keeps blocks exactly disjoint).
int highest_feasible_ring(const Grid& grid, int band_limit);

/// Random-phase divergence-free field with the prescribed dyadic profile:
/// modes live on the plateau of their ring, so each ring is scaled exactly,
/// then the whole field is brought to target_norm (when requested).
SpectralField synthesize_besov_data(const Grid& grid, const BesovIndex& idx,
                                    const DataSpec& spec);

}  // namespace besovlab
