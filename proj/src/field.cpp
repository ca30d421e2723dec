#include "besovlab/field.hpp"

#include <algorithm>
#include <cmath>

namespace besovlab {

double SpectralField::hermitian_defect() const {
    const int n = grid_.n();
    double worst = 0.0;
    double scale = max_abs_coeff();
    if (scale == 0.0) return 0.0;
    for (int c = 0; c < components_; ++c) {
        for (int i1 = 0; i1 < n; ++i1) {
            int m1 = (n - i1) % n;
            for (int i2 = 0; i2 < n; ++i2) {
                int m2 = (n - i2) % n;
                Complex defect = at(c, i1, i2) - std::conj(at(c, m1, m2));
                worst = std::max(worst, std::abs(defect));
            }
        }
    }
    return worst / scale;
}

void SpectralField::symmetrize() {
    const int n = grid_.n();
    for (int c = 0; c < components_; ++c) {
        for (int i1 = 0; i1 < n; ++i1) {
            int m1 = (n - i1) % n;
            for (int i2 = 0; i2 < n; ++i2) {
                int m2 = (n - i2) % n;
                if (i1 * n + i2 > m1 * n + m2) continue;
                Complex a = at(c, i1, i2);
                Complex b = at(c, m1, m2);
                Complex avg = 0.5 * (a + std::conj(b));
                at(c, i1, i2) = avg;
                at(c, m1, m2) = std::conj(avg);
            }
        }
    }
}

double SpectralField::max_abs_coeff() const {
    double m = 0.0;
    for (const Complex& z : coeffs_) m = std::max(m, std::abs(z));
    return m;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_grid(*this, other);
    if (components_ != other.components_)
        throw ContractViolation("component count mismatch in field addition");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_grid(*this, other);
    if (components_ != other.components_)
        throw ContractViolation("component count mismatch in field subtraction");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
    for (Complex& z : coeffs_) z *= scale;
    return *this;
}

void require_same_grid(const SpectralField& a, const SpectralField& b) {
    if (a.grid() != b.grid()) throw ContractViolation("fields live on different grids");
}

}  // namespace besovlab
