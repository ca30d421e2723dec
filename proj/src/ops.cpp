#include "besovlab/ops.hpp"

#include <algorithm>
#include <cmath>

#include "besovlab/fft.hpp"

namespace besovlab {

double lp_norm(const SpectralField& field, LpExponent p) {
    const std::size_t npts = field.grid().size();
    std::vector<double> magnitude_sq(npts, 0.0);
    for (int c = 0; c < field.components(); ++c) {
        std::vector<Complex> values = component_values(field, c);
        for (std::size_t i = 0; i < npts; ++i) {
            double v = values[i].real();
            magnitude_sq[i] += v * v;
        }
    }
    if (p.is_inf()) {
        double m = 0.0;
        for (double v : magnitude_sq) m = std::max(m, v);
        return std::sqrt(m);
    }
    double acc = 0.0;
    if (p.p == 2.0) {
        for (double v : magnitude_sq) acc += v;
        return std::sqrt(acc / static_cast<double>(npts));
    }
    if (p.p == 1.0) {
        for (double v : magnitude_sq) acc += std::sqrt(v);
        return acc / static_cast<double>(npts);
    }
    const double half_p = 0.5 * p.p;
    for (double v : magnitude_sq) acc += std::pow(v, half_p);
    return std::pow(acc / static_cast<double>(npts), 1.0 / p.p);
}

double coefficient_energy(const SpectralField& field) {
    double acc = 0.0;
    for (const Complex& z : field.raw()) acc += std::norm(z);
    return acc;
}

SpectralField gradient(const SpectralField& field) {
    const Grid& grid = field.grid();
    const int n = grid.n();
    SpectralField out(grid, field.components() * 2);
    for (int c = 0; c < field.components(); ++c) {
        for (int i1 = 0; i1 < n; ++i1) {
            const double k1 = grid.deriv_freq(i1);
            for (int i2 = 0; i2 < n; ++i2) {
                const double k2 = grid.deriv_freq(i2);
                const Complex v = Complex(0.0, 1.0) * field.at(c, i1, i2);
                out.at(c * 2 + 0, i1, i2) = k1 * v;
                out.at(c * 2 + 1, i1, i2) = k2 * v;
            }
        }
    }
    return out;
}

SpectralField divergence(const SpectralField& field) {
    if (field.components() != 2)
        throw ContractViolation("divergence expects a 2-component field");
    const Grid& grid = field.grid();
    const int n = grid.n();
    SpectralField out(grid, 1);
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = grid.deriv_freq(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            const double k2 = grid.deriv_freq(i2);
            out.at(0, i1, i2) =
                Complex(0.0, 1.0) * (k1 * field.at(0, i1, i2) + k2 * field.at(1, i1, i2));
        }
    }
    return out;
}

SpectralField leray_project(const SpectralField& field) {
    if (field.components() != 2)
        throw ContractViolation("Leray projection expects a 2-component field");
    const Grid& grid = field.grid();
    const int n = grid.n();
    SpectralField out = field;
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = grid.freq(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            const double k2 = grid.freq(i2);
            const double ksq = k1 * k1 + k2 * k2;
            if (ksq == 0.0) continue;  // mean mode passes through
            const Complex dot = k1 * field.at(0, i1, i2) + k2 * field.at(1, i1, i2);
            out.at(0, i1, i2) -= k1 * dot / ksq;
            out.at(1, i1, i2) -= k2 * dot / ksq;
        }
    }
    return out;
}

double relative_divergence(const SpectralField& field) {
    if (field.components() != 2)
        throw ContractViolation("relative_divergence expects a 2-component field");
    const Grid& grid = field.grid();
    const int n = grid.n();
    double worst = 0.0;
    double scale = 0.0;
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = grid.freq(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            const double k2 = grid.freq(i2);
            const Complex u1 = field.at(0, i1, i2);
            const Complex u2 = field.at(1, i1, i2);
            scale = std::max(scale, std::max(std::abs(u1), std::abs(u2)));
            if (k1 == 0.0 && k2 == 0.0) continue;
            const double kmag = std::sqrt(k1 * k1 + k2 * k2);
            worst = std::max(worst, std::abs(k1 * u1 + k2 * u2) / kmag);
        }
    }
    return scale == 0.0 ? 0.0 : worst / scale;
}

void dealias_in_place(SpectralField& field) {
    const Grid& grid = field.grid();
    const int n = grid.n();
    const int limit = grid.dealias_limit();
    for (int c = 0; c < field.components(); ++c) {
        for (int i1 = 0; i1 < n; ++i1) {
            const int a1 = std::abs(grid.freq(i1));
            for (int i2 = 0; i2 < n; ++i2) {
                const int a2 = std::abs(grid.freq(i2));
                if (std::max(a1, a2) > limit) field.at(c, i1, i2) = Complex(0.0, 0.0);
            }
        }
    }
}

SpectralField dealias(const SpectralField& field) {
    SpectralField out = field;
    dealias_in_place(out);
    return out;
}

SpectralField advect(const SpectralField& u, const SpectralField& f) {
    require_same_grid(u, f);
    if (u.components() != 2) throw ContractViolation("advecting velocity must have 2 components");
    const Grid& grid = u.grid();
    const std::size_t npts = grid.size();

    std::vector<Complex> u1 = component_values(u, 0);
    std::vector<Complex> u2 = component_values(u, 1);

    SpectralField grad_f = gradient(f);
    SpectralField out(grid, f.components());
    std::vector<Complex> buffer(npts);
    for (int c = 0; c < f.components(); ++c) {
        std::vector<Complex> d1 = component_values(grad_f, c * 2 + 0);
        std::vector<Complex> d2 = component_values(grad_f, c * 2 + 1);
        for (std::size_t i = 0; i < npts; ++i)
            buffer[i] = Complex(u1[i].real() * d1[i].real() + u2[i].real() * d2[i].real(), 0.0);
        component_from_values(out, c, buffer);
    }
    dealias_in_place(out);
    return out;
}

double max_pointwise_magnitude(const SpectralField& field) {
    const std::size_t npts = field.grid().size();
    std::vector<double> mag_sq(npts, 0.0);
    for (int c = 0; c < field.components(); ++c) {
        std::vector<Complex> values = component_values(field, c);
        for (std::size_t i = 0; i < npts; ++i) mag_sq[i] += values[i].real() * values[i].real();
    }
    double m = 0.0;
    for (double v : mag_sq) m = std::max(m, v);
    return std::sqrt(m);
}

SpectralField pressure_gradient_pair(const SpectralField& u, const SpectralField& v) {
    SpectralField advection = advect(u, v);
    const Grid& grid = u.grid();
    const int n = grid.n();
    SpectralField out(grid, 2);
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = grid.freq(i1);
        const double kd1 = grid.deriv_freq(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            const double k2 = grid.freq(i2);
            const double kd2 = grid.deriv_freq(i2);
            const double ksq = k1 * k1 + k2 * k2;
            if (ksq == 0.0) continue;  // grad P has no mean
            // (grad (-Lap)^{-1} div a)^(k) = ik (ik.a)/|k|^2 = -k (k.a)/|k|^2
            const Complex dot = kd1 * advection.at(0, i1, i2) + kd2 * advection.at(1, i1, i2);
            out.at(0, i1, i2) = -kd1 * dot / ksq;
            out.at(1, i1, i2) = -kd2 * dot / ksq;
        }
    }
    return out;
}

SpectralField pressure_gradient(const SpectralField& u, double div_tol) {
    if (relative_divergence(u) > div_tol)
        throw ContractViolation("pressure_gradient requires a divergence-free field");
    return pressure_gradient_pair(u, u);
}

}  // namespace besovlab
