#pragma once

// Second-order central differences for complex fields of N real variables.

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace calogero::fd {

using Field = std::function<std::complex<double>(std::span<const double>)>;

inline std::vector<std::complex<double>> gradient(const Field& f, std::span<const double> x, double h) {
    std::vector<double> probe(x.begin(), x.end());
    std::vector<std::complex<double>> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        probe[j] = x[j] + h;
        const std::complex<double> up = f(probe);
        probe[j] = x[j] - h;
        const std::complex<double> down = f(probe);
        probe[j] = x[j];
        out[j] = (up - down) / (2.0 * h);
    }
    return out;
}

inline std::complex<double> laplacian(const Field& f, std::span<const double> x, double h) {
    std::vector<double> probe(x.begin(), x.end());
    const std::complex<double> centre = f(x);
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        probe[j] = x[j] + h;
        const std::complex<double> up = f(probe);
        probe[j] = x[j] - h;
        const std::complex<double> down = f(probe);
        probe[j] = x[j];
        acc += (up - 2.0 * centre + down);
    }
    return acc / (h * h);
}

/// Value, gradient and Laplacian from one 2N+1 point stencil.
struct Stencil {
    std::complex<double> value;
    std::vector<std::complex<double>> gradient;
    std::complex<double> laplacian;
};

inline Stencil stencil(const Field& f, std::span<const double> x, double h) {
    std::vector<double> probe(x.begin(), x.end());
    Stencil s{f(x), std::vector<std::complex<double>>(x.size()), 0.0};
    for (std::size_t j = 0; j < x.size(); ++j) {
        probe[j] = x[j] + h;
        const std::complex<double> up = f(probe);
        probe[j] = x[j] - h;
        const std::complex<double> down = f(probe);
        probe[j] = x[j];
        s.gradient[j] = (up - down) / (2.0 * h);
        s.laplacian += (up - 2.0 * s.value + down);
    }
    s.laplacian /= (h * h);
    return s;
}

} // namespace calogero::fd
