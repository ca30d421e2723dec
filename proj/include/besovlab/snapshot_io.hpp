#pragma once

#include <filesystem>

#include "besovlab/field.hpp"

namespace besovlab {

/// BNSL binary snapshot format, version 1.
///
/// magic 'BNSL', version u32, dimension u32, components u32, n u32,
/// time f64, epsilon f64, then components*n^2 coefficients as little-endian
/// (f64 real, f64 imag) pairs, row-major, FFT-standard frequency layout.
struct SnapshotHeader {
    std::uint32_t version = 1;
    std::uint32_t dimension = 2;
    std::uint32_t components = 1;
    std::uint32_t n = 0;
    double time = 0.0;
    double epsilon = 0.0;
};

void write_snapshot(const std::filesystem::path& path, const SpectralField& field,
                    double epsilon = 0.0);

SpectralField read_snapshot(const std::filesystem::path& path, SnapshotHeader* header = nullptr);

}  // namespace besovlab
