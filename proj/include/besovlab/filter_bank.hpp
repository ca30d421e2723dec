#pragma once

#include <vector>

#include "besovlab/field.hpp"

namespace besovlab {

/// Smooth radial cutoff: 1 for t <= 5/4, 0 for t >= 4/3, joined by the
/// C-infinity step h((4/3 - t)/(4/3 - 5/4)) with h(x) = q(x)/(q(x)+q(1-x)),
/// q(x) = exp(-1/x) for x > 0.
double chi_profile(double t);

/// phi(t) = chi(t/2) - chi(t); supported in the ring 3/4 <= t <= 8/3.
double phi_profile(double t);

/// Dyadic partition of unity on the discrete frequency lattice. Block j = -1
/// carries chi, block j >= 0 carries phi(2^{-j} .). j_max is the smallest j
/// whose ring lies beyond the lattice corner, so the stored blocks always sum
/// to 1 at every lattice point.
class DyadicFilterBank {
  public:
    explicit DyadicFilterBank(Grid grid);

    const Grid& grid() const { return grid_; }
    int j_min() const { return -1; }
    int j_max() const { return j_max_; }

    /// Multiplier values for block j, one per lattice point (row-major).
    /// Zero everywhere for j outside [-1, j_max].
    const std::vector<double>& profile(int j) const;

    /// chi(2^{-N} .) multiplier values, one per lattice point.
    std::vector<double> low_pass_profile(int level) const;

  private:
    Grid grid_;
    int j_max_;
    std::vector<std::vector<double>> profiles_;  // index 0 <-> j = -1
    std::vector<double> zero_;
};

/// Shared immutable bank per grid size (banks are pure data; one instance
/// serves all threads).
const DyadicFilterBank& filter_bank_for(const Grid& grid);

/// Littlewood-Paley block Delta_j u; zero for j <= -2.
SpectralField dyadic_block(const SpectralField& u, int j);

/// Low-pass S_N u = chi(2^{-N} .) u. Requires N >= 0.
SpectralField low_pass(const SpectralField& u, int level);

}  // namespace besovlab
