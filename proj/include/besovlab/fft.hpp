#pragma once

#include <span>
#include <vector>

#include "besovlab/field.hpp"

namespace besovlab {

/// Discrete Fourier transform contract.
///
/// Forward normalization is chosen so that a single mode e^{ik.x} has
/// coefficient exactly 1 at k: forward divides by n^2, inverse does not
/// scale. Plans are cached per grid size behind a mutex; execution uses the
/// FFTW new-array interface and is safe to call concurrently.

/// values (physical, row-major, length n^2) -> coefficients, in place.
void dft_forward(const Grid& grid, std::span<Complex> data);

/// coefficients -> physical values, in place.
void dft_inverse(const Grid& grid, std::span<Complex> data);

/// Real grid values (one vector per component) -> spectral field.
SpectralField transform_forward(const Grid& grid, const std::vector<std::vector<double>>& values);

/// Spectral field -> real grid values per component (imaginary parts of the
/// inverse transform are discarded; they are roundoff for Hermitian fields).
std::vector<std::vector<double>> transform_inverse(const SpectralField& field);

/// Physical values of one component, as complex numbers (for product kernels).
std::vector<Complex> component_values(const SpectralField& field, int comp);

/// Forward transform of a single component given physical complex values.
void component_from_values(SpectralField& field, int comp, std::span<Complex> values);

}  // namespace besovlab
