#include "besovlab/besov.hpp"

#include <algorithm>
#include <cmath>

#include "besovlab/fft.hpp"

namespace besovlab {

bool BesovIndex::admissible(int dim) const {
    const double critical = dim / p.p + 1.0;
    if (s > critical) return !r.is_inf() && r.p > 1.0;
    if (s == critical) return r.p == 1.0;
    return false;
}

std::vector<double> block_lp_profile(const SpectralField& u, LpExponent p) {
    const DyadicFilterBank& bank = filter_bank_for(u.grid());
    const std::size_t npts = u.grid().size();
    std::vector<double> norms(static_cast<std::size_t>(bank.j_max() + 2), 0.0);

    SpectralField block(u.grid(), u.components());
    for (int j = -1; j <= bank.j_max(); ++j) {
        const std::vector<double>& prof = bank.profile(j);
        bool empty = true;
        for (int c = 0; c < u.components() && empty; ++c) {
            auto src = u.component(c);
            for (std::size_t i = 0; i < npts; ++i) {
                if (prof[i] != 0.0 && src[i] != Complex(0.0, 0.0)) {
                    empty = false;
                    break;
                }
            }
        }
        if (empty) continue;  // block norm stays exactly 0, no transform needed
        for (int c = 0; c < u.components(); ++c) {
            auto src = u.component(c);
            auto dst = block.component(c);
            for (std::size_t i = 0; i < npts; ++i) dst[i] = prof[i] * src[i];
        }
        norms[static_cast<std::size_t>(j + 1)] = lp_norm(block, p);
    }
    return norms;
}

double aggregate_besov(const std::vector<double>& block_profile, double s, LpExponent r) {
    if (r.is_inf()) {
        double worst = 0.0;
        for (std::size_t i = 0; i < block_profile.size(); ++i) {
            const int j = static_cast<int>(i) - 1;
            worst = std::max(worst, std::pow(2.0, j * s) * block_profile[i]);
        }
        return worst;
    }
    if (r.p == 1.0) {
        double acc = 0.0;
        for (std::size_t i = 0; i < block_profile.size(); ++i) {
            const int j = static_cast<int>(i) - 1;
            acc += std::pow(2.0, j * s) * block_profile[i];
        }
        return acc;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < block_profile.size(); ++i) {
        const int j = static_cast<int>(i) - 1;
        acc += std::pow(std::pow(2.0, j * s) * block_profile[i], r.p);
    }
    return std::pow(acc, 1.0 / r.p);
}

double besov_norm(const SpectralField& u, const BesovIndex& idx) {
    return aggregate_besov(block_lp_profile(u, idx.p), idx.s, idx.r);
}

double lipschitz_norm(const SpectralField& u) {
    return lp_norm(u, LpExponent::inf()) + lp_norm(gradient(u), LpExponent::inf());
}

double grad_besov_intersection_norm(const SpectralField& u, LpExponent p) {
    SpectralField grad_u = gradient(u);
    const double besov = besov_norm(grad_u, BesovIndex(Grid::kDim / p.p, p, LpExponent::inf()));
    const double sup = lp_norm(grad_u, LpExponent::inf());
    return std::max(besov, sup);
}

}  // namespace besovlab
