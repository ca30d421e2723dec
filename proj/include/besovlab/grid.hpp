#pragma once

#include <cstddef>

#include "besovlab/common.hpp"

namespace besovlab {

/// Uniform collocation grid on the periodic square [0, 2pi)^2.
///
/// Frequencies live on the integer lattice {-n/2+1, ..., n/2}^2 stored in
/// FFT-standard order (0, 1, ..., n/2, -n/2+1, ..., -1 per axis).
class Grid {
  public:
    static constexpr int kDim = 2;

    explicit Grid(int n) : n_(n) {
        if (n < 16 || (n & (n - 1)) != 0)
            throw ConfigError("grid size must be a power of two >= 16, got " + std::to_string(n));
    }

    int n() const { return n_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
    double spacing() const { return kTwoPi / n_; }

    /// Signed frequency of a storage index, in {-n/2+1, ..., n/2}.
    int freq(int index) const { return index <= n_ / 2 ? index : index - n_; }

    /// Storage index of a signed frequency.
    int index_of(int k) const { return k >= 0 ? k : k + n_; }

    /// Frequency used in first-order derivative multipliers. The Nyquist
    /// frequency n/2 pairs with itself under conjugation, so an odd multiplier
    /// there would break Hermitian symmetry; it is treated as zero.
    int deriv_freq(int index) const {
        int k = freq(index);
        return (2 * k == n_) ? 0 : k;
    }

    /// Largest max-norm wavenumber kept by the 2/3 dealiasing rule.
    int dealias_limit() const { return n_ / 3; }

    bool operator==(const Grid& other) const { return n_ == other.n_; }
    bool operator!=(const Grid& other) const { return n_ != other.n_; }

  private:
    int n_;
};

}  // namespace besovlab
