#include "besovlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace besovlab {

namespace {

struct PlanPair {
    fftw_plan forward;
    fftw_plan backward;
};

// One plan pair per grid size, created lazily. FFTW planning is not
// thread-safe; execution through the new-array interface is. Plans are
// created FFTW_UNALIGNED so they accept any caller buffer.
PlanPair plans_for(int n) {
    static std::mutex mutex;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<Complex> scratch(static_cast<std::size_t>(n) * n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    PlanPair plans;
    plans.forward =
        fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.backward =
        fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(n, plans);
    return plans;
}

}  // namespace

void dft_forward(const Grid& grid, std::span<Complex> data) {
    if (data.size() != grid.size()) throw ConfigError("transform input does not match the grid");
    PlanPair plans = plans_for(grid.n());
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plans.forward, buf, buf);
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (Complex& z : data) z *= scale;
}

void dft_inverse(const Grid& grid, std::span<Complex> data) {
    if (data.size() != grid.size()) throw ConfigError("transform input does not match the grid");
    PlanPair plans = plans_for(grid.n());
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plans.backward, buf, buf);
}

SpectralField transform_forward(const Grid& grid,
                                const std::vector<std::vector<double>>& values) {
    if (values.empty()) throw ConfigError("transform_forward needs at least one component");
    SpectralField field(grid, static_cast<int>(values.size()));
    std::vector<Complex> buffer(grid.size());
    for (int c = 0; c < field.components(); ++c) {
        if (values[c].size() != grid.size())
            throw ConfigError("transform input does not match the grid");
        for (std::size_t i = 0; i < buffer.size(); ++i) buffer[i] = Complex(values[c][i], 0.0);
        dft_forward(grid, buffer);
        std::copy(buffer.begin(), buffer.end(), field.component(c).begin());
    }
    return field;
}

std::vector<std::vector<double>> transform_inverse(const SpectralField& field) {
    std::vector<std::vector<double>> values(field.components());
    std::vector<Complex> buffer(field.grid().size());
    for (int c = 0; c < field.components(); ++c) {
        auto comp = field.component(c);
        std::copy(comp.begin(), comp.end(), buffer.begin());
        dft_inverse(field.grid(), buffer);
        values[c].resize(buffer.size());
        for (std::size_t i = 0; i < buffer.size(); ++i) values[c][i] = buffer[i].real();
    }
    return values;
}

std::vector<Complex> component_values(const SpectralField& field, int comp) {
    auto span = field.component(comp);
    std::vector<Complex> buffer(span.begin(), span.end());
    dft_inverse(field.grid(), buffer);
    return buffer;
}

void component_from_values(SpectralField& field, int comp, std::span<Complex> values) {
    dft_forward(field.grid(), values);
    std::copy(values.begin(), values.end(), field.component(comp).begin());
}

}  // namespace besovlab
