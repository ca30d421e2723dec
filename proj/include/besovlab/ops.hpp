#pragma once

#include <limits>

#include "besovlab/field.hpp"

namespace besovlab {

/// Lebesgue exponent in [1, inf], with inf encoded distinctly.
struct LpExponent {
    double p;

    LpExponent(double value) : p(value) {  // NOLINT: implicit by design
        if (!(value >= 1.0)) throw ConfigError("Lp exponent must be >= 1");
    }
    static LpExponent inf() { return LpExponent(std::numeric_limits<double>::infinity()); }
    bool is_inf() const { return std::isinf(p); }
};

/// L^p norm under the normalized (averaging) measure, so a unit single mode
/// has norm 1 for every p. Vector fields use the pointwise Euclidean
/// magnitude over all components; p = inf is the max over grid points.
double lp_norm(const SpectralField& field, LpExponent p);

/// Sum of |coeff|^2 over all modes and components (equals lp_norm(.,2)^2 by
/// Parseval under this normalization).
double coefficient_energy(const SpectralField& field);

/// Gradient of a scalar field (2 components) or of a vector field
/// (components stored as d(comp c)/dx_i at slot c*2+i). Nyquist rows carry a
/// zero derivative multiplier; see Grid::deriv_freq.
SpectralField gradient(const SpectralField& field);

/// Divergence of a 2-component field.
SpectralField divergence(const SpectralField& field);

/// Leray projection I - grad (-Lap)^{-1} div onto divergence-free fields.
/// The k=0 mode passes through unchanged.
SpectralField leray_project(const SpectralField& field);

/// Relative divergence max_k |k.u(k)| / max_k |u(k)| (0 for the zero field).
double relative_divergence(const SpectralField& field);

/// 2/3-rule dealiasing: zero every coefficient with max-norm wavenumber
/// > n/3. Returns a copy.
SpectralField dealias(const SpectralField& field);
void dealias_in_place(SpectralField& field);

/// (u . grad) f, computed pseudo-spectrally with dealiased products.
/// u must have 2 components; f may have any number.
SpectralField advect(const SpectralField& u, const SpectralField& f);

/// Max pointwise Euclidean magnitude on the collocation grid.
double max_pointwise_magnitude(const SpectralField& field);

/// grad (-Lap)^{-1} div (u . grad v) -- the pressure gradient of the pair
/// (u, v); both divergence-free 2-component fields.
SpectralField pressure_gradient_pair(const SpectralField& u, const SpectralField& v);

/// Pressure gradient of a single divergence-free velocity field. Throws
/// ContractViolation if the input divergence exceeds tol.
SpectralField pressure_gradient(const SpectralField& u, double div_tol = 1e-10);

}  // namespace besovlab
