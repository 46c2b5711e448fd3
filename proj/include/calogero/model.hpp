#pragma once

// Parameter algebra of the PT-deformed A_{N-1} Calogero Hamiltonian
//
//   H = -1/2 sum_j d_j^2 + g/2 sum_{j!=k} (x_j - x_k)^-2 + delta sum_{j!=k} (x_j - x_k)^-1 d_j
//       (+ omega^2/2 sum_j x_j^2, bound-state formula only)
//
// The ground state prod_{j<k} (x_j - x_k)^nu' has zero energy when
// g = nu'^2 - nu' (1 + 2 delta).

#include <calogero/errors.hpp>
#include <calogero/fd.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace calogero::model {

enum class Validity { range_i, range_ii, invalid };

constexpr std::string_view to_string(Validity v) {
    switch (v) {
    case Validity::range_i:
        return "RangeI";
    case Validity::range_ii:
        return "RangeII";
    case Validity::invalid:
        return "Invalid";
    }
    return "Invalid";
}

/// Discriminants above -kDiscriminantTolerance are clamped to zero.
inline constexpr double kDiscriminantTolerance = 1e-14;

/// (1 + 2 delta)^2 + 4 g of nu'^2 - (1 + 2 delta) nu' - g = 0.
inline double exponent_discriminant(double g, double delta) {
    const double s = 1.0 + 2.0 * delta;
    return s * s + 4.0 * g;
}

/// RangeI: delta >= -1/2 and 0 > g >= -(delta + 1/2)^2. RangeII: g >= 0.
/// The lower edge of RangeI is tested through the discriminant so that the
/// classification agrees with the solvability of the exponent relation.
inline Validity classify(double g, double delta) {
    if (!std::isfinite(g) || !std::isfinite(delta)) return Validity::invalid;
    if (g >= 0.0) return Validity::range_ii;
    if (delta >= -0.5 && exponent_discriminant(g, delta) >= -kDiscriminantTolerance) return Validity::range_i;
    return Validity::invalid;
}

struct ExponentSolution {
    /// Both roots of nu'^2 - (1 + 2 delta) nu' - g = 0, ascending.
    std::array<double, 2> roots{};
    /// Largest non-negative root.
    double selected = 0.0;
    Validity validity = Validity::invalid;
};

inline ExponentSolution solve_nu_prime(double g, double delta) {
    if (!std::isfinite(g) || !std::isfinite(delta)) throw DomainError("solve_nu_prime: non-finite coupling");
    double disc = exponent_discriminant(g, delta);
    if (disc < -kDiscriminantTolerance) {
        throw NoRealExponent("no real exponent: (1 + 2 delta)^2 + 4 g = " + std::to_string(disc) + " < 0");
    }
    disc = std::max(disc, 0.0);
    const double s = 1.0 + 2.0 * delta;
    const double root_disc = std::sqrt(disc);
    // the root that avoids cancellation first, the other from the product -g
    double hi;
    double lo;
    if (s >= 0.0) {
        hi = 0.5 * (s + root_disc);
        lo = hi != 0.0 ? -g / hi : 0.0;
    } else {
        lo = 0.5 * (s - root_disc);
        hi = -g / lo;
    }
    if (lo > hi) std::swap(lo, hi);
    ExponentSolution out;
    out.roots = {lo, hi};
    out.validity = classify(g, delta);
    if (hi < 0.0) {
        throw NonsingularityViolation("nu' should be a non-negative exponent: both roots negative (" +
                                      std::to_string(lo) + ", " + std::to_string(hi) + ")");
    }
    out.selected = hi;
    return out;
}

inline double coupling_from_exponent(double nu_prime, double delta) {
    if (!(nu_prime >= 0.0) || !std::isfinite(nu_prime)) throw DomainError("coupling_from_exponent: nu' must be >= 0");
    return nu_prime * nu_prime - nu_prime * (1.0 + 2.0 * delta);
}

/// Undeformed exponent nu with g = nu^2 - nu (larger root), when real.
inline std::optional<double> undeformed_exponent(double g) {
    const double disc = 1.0 + 4.0 * g;
    if (disc < -kDiscriminantTolerance) return std::nullopt;
    return 0.5 * (1.0 + std::sqrt(std::max(disc, 0.0)));
}

struct CouplingParams {
    int n_particles = 2;
    double g = 0.0;
    double delta = 0.0;
    double omega = 0.0;
    double nu_prime = 1.0;
    std::optional<double> nu;
    Validity validity = Validity::range_ii;

    /// Pair count N(N-1)/2.
    double pair_count() const { return 0.5 * n_particles * (n_particles - 1); }
    /// Coefficient nu' - delta of the generalized Laplace equation.
    double laplace_lambda() const { return nu_prime - delta; }

    static CouplingParams from_coupling(int n, double g, double delta, double omega = 0.0) {
        check_common(n, omega);
        const ExponentSolution sol = solve_nu_prime(g, delta);
        return {n, g, delta, omega, sol.selected, undeformed_exponent(g), sol.validity};
    }

    static CouplingParams from_exponent(int n, double nu_prime, double delta, double omega = 0.0) {
        check_common(n, omega);
        const double g = coupling_from_exponent(nu_prime, delta);
        return {n, g, delta, omega, nu_prime, undeformed_exponent(g), classify(g, delta)};
    }

private:
    static void check_common(int n, double omega) {
        if (n < 2) throw DomainError("CouplingParams: need at least two particles");
        if (!(omega >= 0.0)) throw DomainError("CouplingParams: omega must be >= 0");
    }
};

/// Which exponent enters phi = -nu N(N-1)/2 of the reflected plane wave.
enum class PhiConvention { deformed_exponent, undeformed_exponent };

struct RadialIndices {
    int k = 0;
    double b_prime = 0.0; ///< Bessel order of the radial factor
    double a_prime = 0.0; ///< b' - k
    double n_prime = 0.0; ///< power of p in the superposition coefficients
    double c = 0.0;       ///< two-body radial exponent nu' - b'
    double phi = 0.0;     ///< reflected-wave phase in units of pi
};

inline RadialIndices radial_indices(const CouplingParams& params, int k,
                                    PhiConvention convention = PhiConvention::deformed_exponent) {
    if (k < 0) throw DomainError("radial_indices: k must be >= 0");
    if (params.validity == Validity::invalid) throw DomainError("radial_indices: invalid couplings");
    const double n = params.n_particles;
    const double pairs = params.pair_count();
    RadialIndices idx;
    idx.k = k;
    idx.b_prime = (n - 3.0) / 2.0 + k + params.laplace_lambda() * pairs;
    idx.a_prime = idx.b_prime - k;
    idx.n_prime = (3.0 - n) / 2.0 + pairs * params.delta;
    idx.c = params.nu_prime - idx.b_prime;
    double exponent = params.nu_prime;
    if (convention == PhiConvention::undeformed_exponent) {
        if (!params.nu) throw DomainError("radial_indices: undeformed exponent nu is not real for this g");
        exponent = *params.nu;
    }
    idx.phi = -exponent * pairs;
    return idx;
}

/// E = (N omega / 2) [1 + (N - 1) nu] + omega sum_j n_j with 0 <= n_1 <= n_2 <= ...
inline double bound_state_energy(int n_particles, double nu, double omega, std::span<const int> quanta) {
    if (n_particles < 1) throw DomainError("bound_state_energy: need at least one particle");
    if (static_cast<int>(quanta.size()) != n_particles)
        throw DomainError("bound_state_energy: one quantum number per particle required");
    if (!(nu >= 0.0)) throw DomainError("bound_state_energy: nu must be >= 0");
    if (!(omega > 0.0)) throw DomainError("bound_state_energy: omega must be > 0");
    long total = 0;
    for (std::size_t j = 0; j < quanta.size(); ++j) {
        if (quanta[j] < 0) throw DomainError("bound_state_energy: negative quantum number");
        if (j > 0 && quanta[j] < quanta[j - 1]) throw DomainError("bound_state_energy: quantum numbers must be non-decreasing");
        total += quanta[j];
    }
    const double n = n_particles;
    return 0.5 * n * omega * (1.0 + (n - 1.0) * nu) + omega * static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// PT invariance of individual Hamiltonian terms, tested extensionally.

enum class OperatorTerm {
    kinetic,          ///< -1/2 sum d_j^2
    inverse_square,   ///< g/2 sum_{j!=k} (x_j - x_k)^-2
    deformation,      ///< delta sum_{j!=k} (x_j - x_k)^-1 d_j
    confinement,      ///< omega^2/2 sum x_j^2
    imaginary_linear, ///< i x_1
    imaginary_square, ///< i x_1^2
    real_linear,      ///< x_1
};

struct OperatorDescriptor {
    OperatorTerm term = OperatorTerm::kinetic;
    double coupling = 1.0; ///< g, delta or omega where the term carries one
};

inline constexpr double kDefaultCoincidenceGap = 1e-6;

/// (term psi)(x) by central differences with step h.
inline std::complex<double> apply_term(const OperatorDescriptor& op, const fd::Field& psi, std::span<const double> x,
                                       double h) {
    const std::size_t n = x.size();
    auto pair_sum = [&](auto&& body) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (j != k) acc += body(j, k);
        return acc;
    };
    switch (op.term) {
    case OperatorTerm::kinetic:
        return -0.5 * fd::laplacian(psi, x, h);
    case OperatorTerm::inverse_square: {
        const std::complex<double> value = psi(x);
        return 0.5 * op.coupling *
               pair_sum([&](std::size_t j, std::size_t k) { return value / ((x[j] - x[k]) * (x[j] - x[k])); });
    }
    case OperatorTerm::deformation: {
        const std::vector<std::complex<double>> grad = fd::gradient(psi, x, h);
        return op.coupling * pair_sum([&](std::size_t j, std::size_t k) { return grad[j] / (x[j] - x[k]); });
    }
    case OperatorTerm::confinement: {
        double sq = 0.0;
        for (double v : x) sq += v * v;
        return 0.5 * op.coupling * op.coupling * sq * psi(x);
    }
    case OperatorTerm::imaginary_linear:
        return std::complex<double>(0.0, op.coupling * x[0]) * psi(x);
    case OperatorTerm::imaginary_square:
        return std::complex<double>(0.0, op.coupling * x[0] * x[0]) * psi(x);
    case OperatorTerm::real_linear:
        return op.coupling * x[0] * psi(x);
    }
    return 0.0;
}

/// |(PT term psi)(x) - (term PT psi)(x)| with (PT f)(x) = conj(f(-x)).
inline double pt_invariance_residual(const OperatorDescriptor& op, const fd::Field& psi, std::span<const double> x,
                                     double h = 1e-4, double min_gap = kDefaultCoincidenceGap) {
    if (x.empty()) throw DomainError("pt_invariance_residual: empty configuration");
    for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t k = j + 1; k < x.size(); ++k)
            if (std::fabs(x[j] - x[k]) < std::max(min_gap, 2.0 * h))
                throw SingularConfiguration("pt_invariance_residual: sample on a coincidence hyperplane");

    std::vector<double> mirrored(x.begin(), x.end());
    for (double& v : mirrored) v = -v;
    const std::complex<double> pt_of_h_psi = std::conj(apply_term(op, psi, mirrored, h));

    const fd::Field pt_psi = [&psi](std::span<const double> y) {
        std::vector<double> m(y.begin(), y.end());
        for (double& v : m) v = -v;
        return std::conj(psi(m));
    };
    const std::complex<double> h_of_pt_psi = apply_term(op, pt_psi, x, h);
    return std::abs(pt_of_h_psi - h_of_pt_psi);
}

} // namespace calogero::model
