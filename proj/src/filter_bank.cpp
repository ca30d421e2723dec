#include "besovlab/filter_bank.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace besovlab {

namespace {

double smooth_step(double x) {
    // q(x)/(q(x)+q(1-x)) with q(x) = exp(-1/x) on x > 0; equals 0 at x <= 0
    // and 1 at x >= 1.
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double qa = std::exp(-1.0 / x);
    const double qb = std::exp(-1.0 / (1.0 - x));
    return qa / (qa + qb);
}

}  // namespace

double chi_profile(double t) {
    constexpr double kPlateau = 1.25;       // chi == 1 inside
    constexpr double kSupport = 4.0 / 3.0;  // chi == 0 outside
    t = std::abs(t);
    if (t <= kPlateau) return 1.0;
    if (t >= kSupport) return 0.0;
    return smooth_step((kSupport - t) / (kSupport - kPlateau));
}

double phi_profile(double t) { return chi_profile(t / 2.0) - chi_profile(t); }

DyadicFilterBank::DyadicFilterBank(Grid grid) : grid_(grid) {
    const int n = grid.n();
    const double corner = std::sqrt(2.0) * (n / 2.0);
    j_max_ = static_cast<int>(std::ceil(std::log2(corner / 0.75)));

    zero_.assign(grid.size(), 0.0);
    profiles_.resize(static_cast<std::size_t>(j_max_ + 2));
    for (int j = -1; j <= j_max_; ++j) {
        std::vector<double>& prof = profiles_[static_cast<std::size_t>(j + 1)];
        prof.resize(grid.size());
        const double scale = std::pow(2.0, -j);
        std::size_t idx = 0;
        for (int i1 = 0; i1 < n; ++i1) {
            const double k1 = grid.freq(i1);
            for (int i2 = 0; i2 < n; ++i2, ++idx) {
                const double k2 = grid.freq(i2);
                const double r = std::sqrt(k1 * k1 + k2 * k2);
                prof[idx] = (j == -1) ? chi_profile(r) : phi_profile(scale * r);
            }
        }
    }
}

const std::vector<double>& DyadicFilterBank::profile(int j) const {
    if (j < -1 || j > j_max_) return zero_;
    return profiles_[static_cast<std::size_t>(j + 1)];
}

std::vector<double> DyadicFilterBank::low_pass_profile(int level) const {
    if (level < 0) throw ContractViolation("low-pass level must be >= 0");
    const int n = grid_.n();
    const double scale = std::pow(2.0, -level);
    std::vector<double> prof(grid_.size());
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = grid_.freq(i1);
        for (int i2 = 0; i2 < n; ++i2, ++idx) {
            const double k2 = grid_.freq(i2);
            prof[idx] = chi_profile(scale * std::sqrt(k1 * k1 + k2 * k2));
        }
    }
    return prof;
}

const DyadicFilterBank& filter_bank_for(const Grid& grid) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<DyadicFilterBank>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[grid.n()];
    if (!slot) slot = std::make_unique<DyadicFilterBank>(grid);
    return *slot;
}

namespace {

SpectralField apply_multiplier(const SpectralField& u, const std::vector<double>& prof) {
    SpectralField out = u;
    const std::size_t npts = u.grid().size();
    for (int c = 0; c < u.components(); ++c) {
        auto comp = out.component(c);
        for (std::size_t i = 0; i < npts; ++i) comp[i] *= prof[i];
    }
    return out;
}

}  // namespace

SpectralField dyadic_block(const SpectralField& u, int j) {
    const DyadicFilterBank& bank = filter_bank_for(u.grid());
    if (j < -1) return SpectralField(u.grid(), u.components());
    return apply_multiplier(u, bank.profile(j));
}

SpectralField low_pass(const SpectralField& u, int level) {
    const DyadicFilterBank& bank = filter_bank_for(u.grid());
    return apply_multiplier(u, bank.low_pass_profile(level));
}

}  // namespace besovlab
