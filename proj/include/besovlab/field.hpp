#pragma once

#include <optional>
#include <span>
#include <vector>

#include "besovlab/common.hpp"
#include "besovlab/grid.hpp"

namespace besovlab {

/// A real-valued scalar or vector field on the torus, stored as complex
/// Fourier coefficients over the full frequency lattice, row-major per
/// component. Values are immutable by convention once handed to an operation;
/// all operations return fresh fields.
class SpectralField {
  public:
    SpectralField(Grid grid, int components)
        : grid_(grid), components_(components),
          coeffs_(static_cast<std::size_t>(components) * grid.size(), Complex(0.0, 0.0)) {
        if (components < 1) throw ConfigError("field needs at least one component");
    }

    const Grid& grid() const { return grid_; }
    int components() const { return components_; }

    Complex& at(int comp, int i1, int i2) { return coeffs_[offset(comp, i1, i2)]; }
    const Complex& at(int comp, int i1, int i2) const { return coeffs_[offset(comp, i1, i2)]; }

    /// Coefficient addressed by signed frequencies.
    Complex& at_freq(int comp, int k1, int k2) {
        return at(comp, grid_.index_of(k1), grid_.index_of(k2));
    }
    const Complex& at_freq(int comp, int k1, int k2) const {
        return at(comp, grid_.index_of(k1), grid_.index_of(k2));
    }

    std::span<Complex> component(int comp) {
        return {coeffs_.data() + static_cast<std::size_t>(comp) * grid_.size(), grid_.size()};
    }
    std::span<const Complex> component(int comp) const {
        return {coeffs_.data() + static_cast<std::size_t>(comp) * grid_.size(), grid_.size()};
    }

    std::span<Complex> raw() { return coeffs_; }
    std::span<const Complex> raw() const { return coeffs_; }

    std::optional<double> time_tag() const { return time_tag_; }
    void set_time_tag(double t) { time_tag_ = t; }

    /// Max deviation from coeff(-k) == conj(coeff(k)), relative to the
    /// largest coefficient magnitude.
    double hermitian_defect() const;

    /// Force exact Hermitian symmetry by averaging conjugate pairs.
    void symmetrize();

    double max_abs_coeff() const;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double scale);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  private:
    std::size_t offset(int comp, int i1, int i2) const {
        return (static_cast<std::size_t>(comp) * grid_.n() + i1) * grid_.n() + i2;
    }

    Grid grid_;
    int components_;
    std::vector<Complex> coeffs_;
    std::optional<double> time_tag_;
};

/// Throws ContractViolation unless both fields share a grid (and, when
/// required, a component count).
void require_same_grid(const SpectralField& a, const SpectralField& b);

}  // namespace besovlab
