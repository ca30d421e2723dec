#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "besovlab/besov.hpp"
#include "besovlab/bony.hpp"
#include "test_util.hpp"

using namespace besovlab;
using namespace besovlab::test;

TEST_CASE("paraproduct against the constant field") {
    Grid grid(64);
    Rng rng(201);
    SpectralField v = random_scalar(grid, 20, rng);
    SpectralField one = sample_scalar(grid, [](double, double) { return 1.0; });

    // T_1 v = sum_{j>=1} Delta_j v = v - Delta_{-1} v - Delta_0 v
    SpectralField expected = v - dyadic_block(v, -1) - dyadic_block(v, 0);
    dealias_in_place(expected);
    CHECK(rel_l2_diff(paraproduct(one, v), expected) < 1e-12);

    // T_v 1 = 0: the constant has no blocks above j = -1
    CHECK(paraproduct(v, one).max_abs_coeff() < 1e-14 * v.max_abs_coeff());
}

TEST_CASE("paraproduct and remainder are bilinear and vanish on zero") {
    Grid grid(32);
    Rng rng(203);
    SpectralField u = random_scalar(grid, 10, rng);
    SpectralField v = random_scalar(grid, 10, rng);
    SpectralField zero(grid, 1);

    CHECK(paraproduct(u, zero).max_abs_coeff() == 0.0);
    CHECK(paraproduct(zero, v).max_abs_coeff() == 0.0);
    CHECK(bony_remainder(u, zero).max_abs_coeff() == 0.0);

    SpectralField lhs = paraproduct(u * 2.0 + v, v);
    SpectralField rhs = paraproduct(u, v) * 2.0 + paraproduct(v, v);
    CHECK(rel_l2_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("paraproduct of separated single modes lands near the high frequency") {
    Grid grid(64);
    SpectralField u = cosine_mode(grid, 1, 0);
    SpectralField v = cosine_mode(grid, 8, 0);
    SpectralField t = paraproduct(u, v);
    // cos(x)cos(8x) = (cos 7x + cos 9x)/2; the low factor passes S_{j-1}
    double mass_near = std::abs(t.at_freq(0, 7, 0)) + std::abs(t.at_freq(0, 9, 0)) +
                       std::abs(t.at_freq(0, -7, 0)) + std::abs(t.at_freq(0, -9, 0));
    CHECK(mass_near == doctest::Approx(1.0).epsilon(1e-10));
    double total = 0.0;
    for (const Complex& z : t.raw()) total += std::abs(z);
    CHECK(total == doctest::Approx(mass_near).epsilon(1e-10));
}

TEST_CASE("remainder is symmetric and local in frequency separation") {
    Grid grid(64);
    Rng rng(207);
    SpectralField u = random_scalar(grid, 18, rng);
    SpectralField v = random_scalar(grid, 18, rng);
    CHECK(rel_l2_diff(bony_remainder(u, v), bony_remainder(v, u)) < 1e-12);

    // modes in rings 0 and 4 have no interacting block pairs
    SpectralField a = cosine_mode(grid, 2, 0);
    SpectralField b = cosine_mode(grid, 28, 0);
    CHECK(bony_remainder(a, b).max_abs_coeff() == 0.0);

    // single-mode self remainder equals the dealiased square
    SpectralField m = cosine_mode(grid, 6, 1);
    SpectralField sq = pointwise_product(m, m);
    CHECK(rel_l2_diff(bony_remainder(m, m), sq) < 1e-12);
}

TEST_CASE("bony reconstruction equals the dealiased product") {
    Grid grid(64);
    Rng rng(211);
    for (int trial = 0; trial < 5; ++trial) {
        SpectralField u = random_scalar(grid, grid.dealias_limit(), rng);
        SpectralField v = random_scalar(grid, grid.dealias_limit(), rng);
        SpectralField sum = bony_reconstruct(u, v);
        SpectralField prod = pointwise_product(u, v);
        CHECK(rel_l2_diff(sum, prod) < 1e-10);
    }
}

TEST_CASE("reconstruction closed forms") {
    Grid grid(64);
    Rng rng(213);
    SpectralField u = random_scalar(grid, 15, rng);
    SpectralField one = sample_scalar(grid, [](double, double) { return 1.0; });
    CHECK(rel_l2_diff(bony_reconstruct(u, one), dealias(u)) < 1e-12);

    SpectralField cosx = sample_scalar(grid, [](double x, double) { return std::cos(x); });
    SpectralField expected =
        sample_scalar(grid, [](double x, double) { return 0.5 + 0.5 * std::cos(2 * x); });
    CHECK(rel_l2_diff(bony_reconstruct(cosx, cosx), expected) < 1e-12);
}

TEST_CASE("paraproduct blocks live in the stated frequency shells") {
    Grid grid(128);
    Rng rng(217);
    SpectralField u = random_scalar(grid, grid.dealias_limit(), rng);
    SpectralField v = random_scalar(grid, grid.dealias_limit(), rng);
    SpectralField t = paraproduct(u, v);
    const DyadicFilterBank& bank = filter_bank_for(grid);
    // Delta_j(T_u v) must vanish once the shell 2^j [1/12, 10/3] cannot meet
    // the support of S_{j-1}u Delta_j v; verify the numeric support bound for
    // spectrum(T_u v) cut to each ring of the reference product decomposition.
    for (int j = 0; j <= bank.j_max(); ++j) {
        SpectralField piece(grid, 1);
        // contributions to ring j of the paraproduct come from the j-th term
        SpectralField sl(grid, 1);
        for (int m = -1; m <= j - 2; ++m) sl += dyadic_block(u, m);
        SpectralField term = pointwise_product(sl, dyadic_block(v, j));
        double outside = 0.0, total = 0.0;
        const double lo = std::pow(2.0, j) / 12.0;
        const double hi = std::pow(2.0, j) * 10.0 / 3.0;
        for (int k1 = -grid.n() / 2 + 1; k1 <= grid.n() / 2; ++k1)
            for (int k2 = -grid.n() / 2 + 1; k2 <= grid.n() / 2; ++k2) {
                const double r = std::hypot(double(k1), double(k2));
                const double mag = std::abs(term.at_freq(0, k1, k2));
                total += mag;
                if (r < lo - 1e-9 || r > hi + 1e-9) outside += mag;
            }
        if (total > 0.0) CHECK(outside <= 1e-12 * total);
        (void)piece;
    }
}
