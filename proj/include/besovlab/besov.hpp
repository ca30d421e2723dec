#pragma once

#include <vector>

#include "besovlab/filter_bank.hpp"
#include "besovlab/ops.hpp"

namespace besovlab {

/// Besov index triple (s, p, r). r = inf means sup over blocks.
struct BesovIndex {
    double s;
    LpExponent p;
    LpExponent r;

    BesovIndex(double s_, LpExponent p_, LpExponent r_) : s(s_), p(p_), r(r_) {}

    BesovIndex shifted(double ds) const { return BesovIndex(s + ds, p, r); }

    /// Well-posedness constraint: s > d/p + 1 with r in (1, inf), or
    /// s = d/p + 1 with r = 1.
    bool admissible(int dim = Grid::kDim) const;
};

/// Block norms ||Delta_j u||_p for j = -1 .. j_max, index 0 <-> j = -1.
std::vector<double> block_lp_profile(const SpectralField& u, LpExponent p);

/// l^r aggregation of 2^{js} ||Delta_j u||_p over the stored blocks.
double aggregate_besov(const std::vector<double>& block_profile, double s, LpExponent r);

double besov_norm(const SpectralField& u, const BesovIndex& idx);

/// ||u||_{C^{0,1}} = ||u||_inf + ||grad u||_inf.
double lipschitz_norm(const SpectralField& u);

/// ||grad u||_{B^{d/p}_{p,inf} cap L^inf}, realized as the max of the two
/// norms. Used by the transport-diffusion estimate in its low-sigma branch.
double grad_besov_intersection_norm(const SpectralField& u, LpExponent p);

}  // namespace besovlab
