#include "besovlab/bony.hpp"

#include "besovlab/fft.hpp"
#include "besovlab/filter_bank.hpp"
#include "besovlab/ops.hpp"

namespace besovlab {

namespace {

void require_scalar_pair(const SpectralField& u, const SpectralField& v) {
    require_same_grid(u, v);
    if (u.components() != 1 || v.components() != 1)
        throw ContractViolation("Bony operators act on scalar fields");
}

// Physical values of every block Delta_j u, index 0 <-> j = -1.
std::vector<std::vector<Complex>> block_values(const SpectralField& u) {
    const DyadicFilterBank& bank = filter_bank_for(u.grid());
    std::vector<std::vector<Complex>> blocks(static_cast<std::size_t>(bank.j_max() + 2));
    for (int j = -1; j <= bank.j_max(); ++j)
        blocks[static_cast<std::size_t>(j + 1)] = component_values(dyadic_block(u, j), 0);
    return blocks;
}

SpectralField from_physical(const Grid& grid, std::vector<Complex>& values) {
    SpectralField out(grid, 1);
    component_from_values(out, 0, values);
    dealias_in_place(out);
    return out;
}

}  // namespace

SpectralField paraproduct(const SpectralField& u, const SpectralField& v) {
    require_scalar_pair(u, v);
    const Grid& grid = u.grid();
    const std::size_t npts = grid.size();
    const DyadicFilterBank& bank = filter_bank_for(grid);

    auto u_blocks = block_values(u);
    std::vector<Complex> partial_sum(npts, Complex(0.0, 0.0));  // S_{j-1} u, running
    std::vector<Complex> acc(npts, Complex(0.0, 0.0));
    for (int j = 1; j <= bank.j_max(); ++j) {
        const auto& low_block = u_blocks[static_cast<std::size_t>(j - 1)];  // Delta_{j-2} u
        for (std::size_t i = 0; i < npts; ++i) partial_sum[i] += low_block[i];
        std::vector<Complex> v_block = component_values(dyadic_block(v, j), 0);
        for (std::size_t i = 0; i < npts; ++i)
            acc[i] += Complex(partial_sum[i].real() * v_block[i].real(), 0.0);
    }
    return from_physical(grid, acc);
}

SpectralField bony_remainder(const SpectralField& u, const SpectralField& v) {
    require_scalar_pair(u, v);
    const Grid& grid = u.grid();
    const std::size_t npts = grid.size();
    const DyadicFilterBank& bank = filter_bank_for(grid);

    auto u_blocks = block_values(u);
    auto v_blocks = block_values(v);
    std::vector<Complex> acc(npts, Complex(0.0, 0.0));
    for (int j = -1; j <= bank.j_max(); ++j) {
        const auto& uj = u_blocks[static_cast<std::size_t>(j + 1)];
        for (int k = std::max(-1, j - 1); k <= std::min(bank.j_max(), j + 1); ++k) {
            const auto& vk = v_blocks[static_cast<std::size_t>(k + 1)];
            for (std::size_t i = 0; i < npts; ++i)
                acc[i] += Complex(uj[i].real() * vk[i].real(), 0.0);
        }
    }
    return from_physical(grid, acc);
}

SpectralField bony_reconstruct(const SpectralField& u, const SpectralField& v) {
    SpectralField out = paraproduct(u, v);
    out += paraproduct(v, u);
    out += bony_remainder(u, v);
    return out;
}

SpectralField pointwise_product(const SpectralField& u, const SpectralField& v) {
    require_scalar_pair(u, v);
    const std::size_t npts = u.grid().size();
    std::vector<Complex> a = component_values(u, 0);
    std::vector<Complex> b = component_values(v, 0);
    for (std::size_t i = 0; i < npts; ++i) a[i] = Complex(a[i].real() * b[i].real(), 0.0);
    return from_physical(u.grid(), a);
}

}  // namespace besovlab
