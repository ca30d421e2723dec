#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "besovlab/besov.hpp"
#include "test_util.hpp"

using namespace besovlab;
using namespace besovlab::test;

TEST_CASE("chi and phi profile shapes") {
    CHECK(chi_profile(0.0) == 1.0);
    CHECK(chi_profile(1.25) == 1.0);
    CHECK(chi_profile(4.0 / 3.0) == 0.0);
    CHECK(chi_profile(2.0) == 0.0);
    // radially non-increasing
    double prev = 1.0;
    for (int i = 0; i <= 200; ++i) {
        double v = chi_profile(1.2 + 0.2 * i / 200.0);
        CHECK(v <= prev + 1e-15);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
    // phi vanishes outside the ring [3/4, 8/3]
    CHECK(phi_profile(0.5) == 0.0);
    CHECK(phi_profile(0.74) == 0.0);
    CHECK(phi_profile(2.7) == 0.0);
    CHECK(phi_profile(2.0) == doctest::Approx(1.0));
}

TEST_CASE("partition of unity on the whole lattice") {
    for (int n : {64, 128}) {
        Grid grid(n);
        const DyadicFilterBank& bank = filter_bank_for(grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double sum = 0.0;
            for (int j = -1; j <= bank.j_max(); ++j) sum += bank.profile(j)[i];
            worst = std::max(worst, std::abs(sum - 1.0));
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("profile values at quoted frequencies") {
    Grid grid(64);
    const DyadicFilterBank& bank = filter_bank_for(grid);
    // sum at xi = (7,3) is 1
    const std::size_t idx = static_cast<std::size_t>(grid.index_of(7)) * grid.n() + grid.index_of(3);
    double sum = 0.0;
    for (int j = -1; j <= bank.j_max(); ++j) sum += bank.profile(j)[idx];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    // profile j=0 vanishes at |xi| = 0.5 (inside the ring's hole)
    CHECK(phi_profile(0.5) == 0.0);
    // blocks at distance >= 2 have disjoint supports
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(bank.profile(2)[i] * bank.profile(5)[i] == 0.0);
        CHECK(bank.profile(-1)[i] * bank.profile(1)[i] == 0.0);
    }
}

TEST_CASE("j_max is the first ring beyond the lattice corner") {
    Grid grid(64);
    const DyadicFilterBank& bank = filter_bank_for(grid);
    const double corner = std::sqrt(2.0) * 32.0;
    const int expected = static_cast<int>(std::ceil(std::log2(corner / 0.75)));
    CHECK(bank.j_max() == expected);
    CHECK(bank.j_max() == 6);
    // the top ring carries no lattice frequency: profile identically zero
    double top = 0.0;
    for (double v : bank.profile(bank.j_max())) top = std::max(top, v);
    CHECK(top == 0.0);
    // the one below is nonempty
    double below = 0.0;
    for (double v : bank.profile(bank.j_max() - 1)) below = std::max(below, v);
    CHECK(below > 0.0);
}

TEST_CASE("dyadic blocks of a single mode sit where the profiles say") {
    Grid grid(64);
    SpectralField u = cosine_mode(grid, 2, 0);
    // |xi| = 2: phi_0(2) = 1 and every other profile vanishes there
    const DyadicFilterBank& bank = filter_bank_for(grid);
    for (int j = -1; j <= bank.j_max(); ++j) {
        SpectralField blk = dyadic_block(u, j);
        const double mass = std::sqrt(coefficient_energy(blk));
        if (j == 0)
            CHECK(mass == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
        else
            CHECK(mass == 0.0);
    }
    // blocks vanish identically for j <= -2
    CHECK(dyadic_block(u, -3).max_abs_coeff() == 0.0);
    CHECK(dyadic_block(u, -2).max_abs_coeff() == 0.0);
}

TEST_CASE("blocks sum back to the field") {
    Grid grid(64);
    Rng rng(101);
    SpectralField u = random_scalar(grid, 30, rng);
    const DyadicFilterBank& bank = filter_bank_for(grid);
    SpectralField acc(grid, 1);
    for (int j = -1; j <= bank.j_max(); ++j) acc += dyadic_block(u, j);
    CHECK(rel_l2_diff(acc, u) < 1e-12);
}

TEST_CASE("low pass keeps low modes and kills high ones") {
    Grid grid(64);
    SpectralField low = cosine_mode(grid, 1, 0);
    CHECK(rel_l2_diff(low_pass(low, 1), low) == 0.0);  // chi(1/2) = 1

    SpectralField high = cosine_mode(grid, 8, 0);
    CHECK(low_pass(high, 1).max_abs_coeff() == 0.0);  // chi(4) = 0

    CHECK_THROWS_AS(low_pass(low, -1), ContractViolation);
}

TEST_CASE("low pass tail decreases monotonically in N") {
    Grid grid(64);
    Rng rng(103);
    SpectralField u = random_scalar(grid, 20, rng);
    BesovIndex idx(2.0, 2.0, 1.0);
    double prev = std::numeric_limits<double>::infinity();
    for (int N = 0; N <= 7; ++N) {
        double tail = besov_norm(u - low_pass(u, N), idx);
        CHECK(tail <= prev + 1e-12);
        prev = tail;
    }
    // band-limited: S_N u = u exactly once 2^N * 5/4 covers the band
    SpectralField banded = cosine_mode(grid, 3, 1);
    SpectralField diff = low_pass(banded, 3) - banded;
    CHECK(diff.max_abs_coeff() == 0.0);
}

TEST_CASE("besov norm of a pure block field is the weighted block norm") {
    Grid grid(64);
    // k = (6, 0) lies in the plateau of ring 2: phi_2(6) = 1, neighbors vanish
    SpectralField u = cosine_mode(grid, 6, 0);
    const double block_l2 = lp_norm(u, 2.0);
    for (double s : {0.5, 1.0, 2.0}) {
        BesovIndex idx(s, 2.0, 1.0);
        CHECK(besov_norm(u, idx) ==
              doctest::Approx(std::pow(2.0, 2 * s) * block_l2).epsilon(1e-12));
    }
}

TEST_CASE("besov (0,2,2) is equivalent to L2 with the overlap factor") {
    Grid grid(64);
    Rng rng(107);
    for (int trial = 0; trial < 8; ++trial) {
        SpectralField u = random_scalar(grid, 28, rng);
        const double l2 = lp_norm(u, 2.0);
        const double b = besov_norm(u, BesovIndex(0.0, 2.0, 2.0));
        // per-frequency: sum_j phi_j^2 lies in [1/3, 1] because at most three
        // rings can share a frequency and the profiles sum to 1
        CHECK(b <= l2 * (1.0 + 1e-12));
        CHECK(l2 <= std::sqrt(3.0) * b * (1.0 + 1e-12));
    }
}

TEST_CASE("besov norm scales linearly") {
    Grid grid(32);
    Rng rng(109);
    SpectralField u = random_scalar(grid, 10, rng);
    BesovIndex idx(1.5, 2.0, 2.0);
    const double base = besov_norm(u, idx);
    CHECK(besov_norm(u * (-3.0), idx) == doctest::Approx(3.0 * base).epsilon(1e-12));
}

TEST_CASE("besov nesting in r") {
    Grid grid(64);
    Rng rng(113);
    SpectralField u = random_scalar(grid, 25, rng);
    const double r1 = besov_norm(u, BesovIndex(1.0, 2.0, 1.0));
    const double r2 = besov_norm(u, BesovIndex(1.0, 2.0, 2.0));
    const double rinf = besov_norm(u, BesovIndex(1.0, 2.0, LpExponent::inf()));
    CHECK(r2 <= r1 * (1.0 + 1e-12));
    CHECK(rinf <= r2 * (1.0 + 1e-12));
}

TEST_CASE("interpolation inequality via per-block Cauchy-Schwarz") {
    Grid grid(64);
    Rng rng(127);
    for (int trial = 0; trial < 10; ++trial) {
        SpectralField u = random_scalar(grid, 28, rng);
        for (double r : {1.0, 2.0}) {
            BesovIndex idx(2.0, 2.0, r);
            const double mid = besov_norm(u, idx);
            const double lo = besov_norm(u, idx.shifted(-1.0));
            const double hi = besov_norm(u, idx.shifted(+1.0));
            CHECK(mid <= std::sqrt(lo * hi) * (1.0 + 1e-10));
        }
    }
    // single-block field: equality
    SpectralField mode = cosine_mode(grid, 6, 0);
    BesovIndex idx(2.0, 2.0, 1.0);
    const double mid = besov_norm(mode, idx);
    const double bound = std::sqrt(besov_norm(mode, idx.shifted(-1.0)) *
                                   besov_norm(mode, idx.shifted(+1.0)));
    CHECK(mid == doctest::Approx(bound).epsilon(1e-12));
}

TEST_CASE("low pass commutes with dyadic blocks") {
    Grid grid(32);
    Rng rng(131);
    SpectralField u = random_scalar(grid, 12, rng);
    for (int j : {-1, 1, 3}) {
        SpectralField a = dyadic_block(low_pass(u, 2), j);
        SpectralField b = low_pass(dyadic_block(u, j), 2);
        SpectralField d = a - b;
        CHECK(d.max_abs_coeff() < 1e-14);
    }
}

TEST_CASE("bernstein constant is stable across blocks and grids") {
    auto bernstein_worst = [](int n, std::uint64_t seed) {
        Grid grid(n);
        Rng rng(seed);
        SpectralField u = random_scalar(grid, 10, rng);  // same band on both grids
        const DyadicFilterBank& bank = filter_bank_for(grid);
        double worst = 0.0;
        const double scale = lp_norm(u, 2.0);
        for (int j = -1; j <= bank.j_max(); ++j) {
            SpectralField blk = dyadic_block(u, j);
            const double base = lp_norm(blk, 2.0);
            if (base < 1e-12 * scale) continue;
            const double grad = lp_norm(gradient(blk), 2.0);
            worst = std::max(worst, grad / (std::pow(2.0, j) * base));
        }
        return worst;
    };
    const double c64 = bernstein_worst(64, 999);
    const double c128 = bernstein_worst(128, 999);
    CHECK(c64 > 0.0);
    CHECK(c128 <= 1.2 * c64);
    CHECK(c64 <= 1.2 * c128);
    // Bernstein with the ring's outer radius 8/3 as the constant
    CHECK(c64 <= 8.0 / 3.0 + 1e-9);
}

TEST_CASE("lipschitz norm closed forms") {
    Grid grid(64);
    SpectralField c = sample_scalar(grid, [](double, double) { return 0.7; });
    CHECK(lipschitz_norm(c) == doctest::Approx(0.7).epsilon(1e-12));
    SpectralField sinx = sample_scalar(grid, [](double x, double) { return std::sin(x); });
    // sup |sin| + sup |cos| sampled on the grid; both hit 1 on a 64-point axis
    CHECK(lipschitz_norm(sinx) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("lipschitz norm embeds into the critical besov norm") {
    Grid grid(64);
    Rng rng(137);
    BesovIndex critical(2.0, 2.0, 1.0);  // d/p + 1 = 2
    double worst = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
        SpectralField u = random_scalar(grid, 20, rng);
        worst = std::max(worst, lipschitz_norm(u) / besov_norm(u, critical));
    }
    CHECK(worst < 10.0);  // empirical embedding constant, recorded
    MESSAGE("embedding constant C (Lipschitz <= C * B^{d/p+1}_{p,1}): " << worst);
}
