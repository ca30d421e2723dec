#pragma once

#include "besovlab/field.hpp"

namespace besovlab {

/// Bony decomposition of a pointwise product of scalar fields:
///   u v = T_u v + T_v u + R(u, v)
/// with T_u v = sum_j S_{j-1} u Delta_j v and
/// R(u, v) = sum_{|k-j|<=1} Delta_j u Delta_k v.
///
/// S_{j-1} follows the block convention S_q = sum_{m <= q-1} Delta_m, so
/// S_{-1} = 0 and S_0 = Delta_{-1} (the chi low-pass); the j = -1 and j = 0
/// products are carried by the remainder. All physical-space products are
/// dealiased, which makes the three-term sum agree with the dealiased
/// pointwise product.

SpectralField paraproduct(const SpectralField& u, const SpectralField& v);
SpectralField bony_remainder(const SpectralField& u, const SpectralField& v);
SpectralField bony_reconstruct(const SpectralField& u, const SpectralField& v);

/// Dealiased pointwise product of scalar fields (reference for the
/// reconstruction identity).
SpectralField pointwise_product(const SpectralField& u, const SpectralField& v);

}  // namespace besovlab
