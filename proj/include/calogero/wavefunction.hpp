#pragma once

// Scattering eigenfunctions of the deformed model (omega = 0) in the ordered
// sector x_1 >= x_2 >= ... >= x_N:
//
//   psi = prod_{j<k} (x_j - x_k)^nu'  r^-b'  J_b'(p r)  P'_{k,q}(x),
//   r^2 = sum_j (x_j - mean x)^2 = (1/N) sum_{i<j} (x_i - x_j)^2,
//
// their superpositions, large-r in/out waves, plane-wave limits, and a
// finite-difference application of the Hamiltonian.
//
// With the kinetic term -1/2 Laplacian these states satisfy H psi = (p^2/2) psi;
// p is the momentum magnitude sqrt(sum_j p_j^2) of the plane waves
// exp(i sum_j p_j x_j).

#include <calogero/errors.hpp>
#include <calogero/fd.hpp>
#include <calogero/model.hpp>
#include <calogero/polynomials.hpp>
#include <calogero/specialfn.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace calogero::wavefunction {

using complex = std::complex<double>;
using model::CouplingParams;

/// Ordered-sector configuration x_1 >= ... >= x_N with gaps >= min_gap.
class Configuration {
public:
    explicit Configuration(std::vector<double> coords, double min_gap = 0.0) : coords_(std::move(coords)), min_gap_(min_gap) {
        if (coords_.size() < 2) throw DomainError("Configuration: need at least two coordinates");
        for (double v : coords_)
            if (!std::isfinite(v)) throw DomainError("Configuration: non-finite coordinate");
        for (std::size_t j = 0; j + 1 < coords_.size(); ++j) {
            const double gap = coords_[j] - coords_[j + 1];
            if (gap < 0.0) throw DomainError("Configuration: coordinates must be non-increasing");
            if (gap < min_gap_) throw SingularConfiguration("Configuration: gap below min_gap");
        }
    }

    /// Sorts any input into the ordered sector.
    static Configuration canonical(std::vector<double> coords, double min_gap = 0.0) {
        std::sort(coords.begin(), coords.end(), std::greater<>());
        return Configuration(std::move(coords), min_gap);
    }

    std::span<const double> coords() const { return coords_; }
    std::size_t size() const { return coords_.size(); }
    double min_gap() const { return min_gap_; }

    double smallest_gap() const {
        double g = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j + 1 < coords_.size(); ++j) g = std::min(g, coords_[j] - coords_[j + 1]);
        return g;
    }

private:
    std::vector<double> coords_;
    double min_gap_;
};

/// Individual momenta p_1 <= ... <= p_N with sum zero; p = |p|, alpha = p_j / p.
class MomentumSet {
public:
    /// `magnitude`, when given, replaces the recomputed |p| (it must agree to 1e-12 relative).
    explicit MomentumSet(std::vector<double> momenta, std::optional<double> magnitude = std::nullopt)
        : momenta_(std::move(momenta)) {
        if (momenta_.size() < 2) throw DomainError("MomentumSet: need at least two momenta");
        double sum = 0.0;
        double largest = 0.0;
        double sq = 0.0;
        for (std::size_t j = 0; j < momenta_.size(); ++j) {
            if (!std::isfinite(momenta_[j])) throw DomainError("MomentumSet: non-finite momentum");
            if (j > 0 && momenta_[j] < momenta_[j - 1]) throw DomainError("MomentumSet: momenta must be non-decreasing");
            sum += momenta_[j];
            sq += momenta_[j] * momenta_[j];
            largest = std::max(largest, std::fabs(momenta_[j]));
        }
        if (std::fabs(sum) > 1e-12 * static_cast<double>(momenta_.size()) * std::max(largest, 1e-300) && sum != 0.0)
            throw DomainError("MomentumSet: momenta must sum to zero");
        p_ = std::sqrt(sq);
        if (magnitude) {
            if (!(std::fabs(*magnitude - p_) <= 1e-12 * std::max(p_, 1e-300)) && !(*magnitude == 0.0 && p_ == 0.0))
                throw DomainError("MomentumSet: magnitude disagrees with the momenta");
            p_ = *magnitude;
        }
        alphas_.resize(momenta_.size(), 0.0);
        if (p_ > 0.0)
            for (std::size_t j = 0; j < momenta_.size(); ++j) alphas_[j] = momenta_[j] / p_;
    }

    /// Two-body set (-p/sqrt 2, p/sqrt 2) of magnitude p.
    static MomentumSet two_body(double p) {
        const double q = p / std::numbers::sqrt2;
        return MomentumSet({-q, q}, p);
    }

    /// Equally spaced sum-zero momenta of magnitude p.
    static MomentumSet equally_spaced(int n, double p) {
        if (n < 2) throw DomainError("MomentumSet: need at least two momenta");
        std::vector<double> v(n);
        double sq = 0.0;
        for (int j = 0; j < n; ++j) {
            v[j] = static_cast<double>(2 * j - (n - 1));
            sq += v[j] * v[j];
        }
        for (double& e : v) e *= p / std::sqrt(sq);
        return MomentumSet(std::move(v), p);
    }

    std::span<const double> momenta() const { return momenta_; }
    std::size_t size() const { return momenta_.size(); }
    double p() const { return p_; }
    std::span<const double> alphas() const { return alphas_; }

private:
    std::vector<double> momenta_;
    double p_ = 0.0;
    std::vector<double> alphas_;
};

/// Eigenvalue of H for a state of momentum magnitude p.
inline double scattering_energy(double p) { return 0.5 * p * p; }

/// Angular coefficients C~'_{kq}; C'_{kq} = p^{(3-N)/2 + N(N-1) delta/2} C~'_{kq}.
struct SuperpositionCoeffs {
    std::map<std::pair<int, int>, complex> entries; ///< (k, q) -> C~', q counted from 1
    double scaling_exponent = 0.0;

    static SuperpositionCoeffs single(const CouplingParams& params, int k, int q, complex value) {
        SuperpositionCoeffs c;
        c.entries[{k, q}] = value;
        c.scaling_exponent = model::radial_indices(params, 0).n_prime;
        return c;
    }

    complex reconstructed(std::pair<int, int> key, double p) const {
        return std::pow(p, scaling_exponent) * entries.at(key);
    }
};

/// Polynomials P'_{k,q} for k = 0..k_max at lambda = nu' - delta.
class PolynomialTable {
public:
    PolynomialTable(const CouplingParams& params, int k_max, const polynomials::Limits& limits = {})
        : n_vars_(params.n_particles), lambda_(polynomials::to_rational(params.laplace_lambda())) {
        for (int k = 0; k <= k_max; ++k) {
            const polynomials::LaplaceSystem sys = polynomials::solve_generalized_laplace(n_vars_, k, lambda_, limits);
            std::vector<polynomials::NumericPolynomial> level;
            for (const polynomials::SymPolynomial& s : sys.solutions) level.emplace_back(s);
            exact_.push_back(sys.solutions);
            numeric_.push_back(std::move(level));
        }
    }

    int k_max() const { return static_cast<int>(numeric_.size()) - 1; }
    int degeneracy(int k) const { return k < 0 || k > k_max() ? 0 : static_cast<int>(numeric_[k].size()); }
    const polynomials::Rational& lambda() const { return lambda_; }

    const polynomials::NumericPolynomial& at(int k, int q) const {
        if (q < 1 || q > degeneracy(k))
            throw DomainError("PolynomialTable: no polynomial for (k = " + std::to_string(k) + ", q = " + std::to_string(q) +
                              "); degeneracy is " + std::to_string(degeneracy(k)));
        return numeric_[k][q - 1];
    }
    const polynomials::SymPolynomial& exact(int k, int q) const {
        at(k, q);
        return exact_[k][q - 1];
    }

private:
    int n_vars_;
    polynomials::Rational lambda_;
    std::vector<std::vector<polynomials::SymPolynomial>> exact_;
    std::vector<std::vector<polynomials::NumericPolynomial>> numeric_;
};

inline double centered_norm(std::span<const double> x) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double sq = 0.0;
    for (double v : x) sq += (v - mean) * (v - mean);
    return std::sqrt(sq);
}

inline double radial_coordinate(std::span<const double> x) { return centered_norm(x); }
inline double radial_coordinate(const Configuration& x) { return centered_norm(x.coords()); }

/// prod_{j<k} (x_j - x_k)^nu' on the ordered sector.
inline double ground_state(std::span<const double> x, double nu_prime) {
    if (nu_prime < 0.0) throw SingularConfiguration("ground_state: negative exponent diverges at coincidences");
    long double log_value = 0.0L;
    for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t k = j + 1; k < x.size(); ++k) {
            const double d = x[j] - x[k];
            if (d < 0.0) throw DomainError("ground_state: configuration outside the ordered sector");
            if (d == 0.0) return nu_prime == 0.0 ? 1.0 : 0.0;
            log_value += std::log(static_cast<long double>(d));
        }
    return static_cast<double>(std::exp(nu_prime * log_value));
}
inline double ground_state(const Configuration& x, double nu_prime) { return ground_state(x.coords(), nu_prime); }

/// chi'(r) = r^-b' J_b'(p r).
inline double radial_solution(double r, double p, double b_prime) {
    if (!(r > 0.0) || !(p > 0.0)) throw DomainError("radial_solution: r and p must be positive");
    return std::pow(r, -b_prime) * specialfn::bessel_j(b_prime, p * r);
}

/// d chi'/dr.
inline double radial_solution_derivative(double r, double p, double b_prime) {
    if (!(r > 0.0) || !(p > 0.0)) throw DomainError("radial_solution_derivative: r and p must be positive");
    const double rb = std::pow(r, -b_prime);
    return rb * (-b_prime / r * specialfn::bessel_j(b_prime, p * r) + p * specialfn::bessel_j_prime(b_prime, p * r));
}

/// Single scattering state for one polynomial P'_{k,q}.
inline complex scattering_eigenfunction(std::span<const double> x, double p, const polynomials::NumericPolynomial& poly,
                                        const CouplingParams& params, int k) {
    if (static_cast<int>(x.size()) != params.n_particles || poly.n_vars() != params.n_particles)
        throw DomainError("scattering_eigenfunction: dimension mismatch");
    if (poly.degree() != k) throw DomainError("scattering_eigenfunction: polynomial degree differs from k");
    const double b = model::radial_indices(params, k).b_prime;
    const double r = radial_coordinate(x);
    return ground_state(x, params.nu_prime) * radial_solution(r, p, b) * poly(x);
}

inline complex scattering_eigenfunction(const Configuration& x, const MomentumSet& pset,
                                        const polynomials::NumericPolynomial& poly, const CouplingParams& params, int k) {
    return scattering_eigenfunction(x.coords(), pset.p(), poly, params, k);
}

inline void check_coefficients(const SuperpositionCoeffs& coeffs, const PolynomialTable& table) {
    for (const auto& [key, value] : coeffs.entries) {
        (void)value;
        if (key.second < 1 || key.second > table.degeneracy(key.first))
            throw DomainError("superposition entry (k = " + std::to_string(key.first) + ", q = " +
                              std::to_string(key.second) + ") has no polynomial (degeneracy " +
                              std::to_string(table.degeneracy(key.first)) + ")");
    }
}

/// psi_gen = psi_gr sum_{k,q} C'_{kq} r^-b'(k) J_b'(k)(p r) P'_{k,q}(x).
inline complex general_eigenfunction(std::span<const double> x, double p, const SuperpositionCoeffs& coeffs,
                                     const PolynomialTable& table, const CouplingParams& params) {
    check_coefficients(coeffs, table);
    const double r = radial_coordinate(x);
    const double scale = std::pow(p, coeffs.scaling_exponent);
    complex sum = 0.0;
    for (const auto& [key, value] : coeffs.entries) {
        const double b = model::radial_indices(params, key.first).b_prime;
        sum += scale * value * radial_solution(r, p, b) * table.at(key.first, key.second)(x);
    }
    return ground_state(x, params.nu_prime) * sum;
}

inline complex general_eigenfunction(const Configuration& x, const MomentumSet& pset, const SuperpositionCoeffs& coeffs,
                                     const PolynomialTable& table, const CouplingParams& params) {
    return general_eigenfunction(x.coords(), pset.p(), coeffs, table, params);
}

enum class WaveSign { plus = +1, minus = -1 };

/// Large-r wave psi_{p+-} = (2 pi r)^-1/2 p^{n'-1/2} psi_gr r^-A'
///   sum C~'_{kq} r^-k P'_{k,q} exp(+-i (b'+1/2) pi/2 -+ i p r).
/// `tolerance` bounds the leading Bessel correction |4 b'^2 - 1| / (8 p r).
inline complex asymptotic_wave(std::span<const double> x, double p, const SuperpositionCoeffs& coeffs,
                               const PolynomialTable& table, const CouplingParams& params, WaveSign sign,
                               double tolerance = specialfn::kAsymptoticTolerance) {
    check_coefficients(coeffs, table);
    const double r = radial_coordinate(x);
    const double s = static_cast<double>(static_cast<int>(sign));
    const model::RadialIndices base = model::radial_indices(params, 0);
    complex sum = 0.0;
    for (const auto& [key, value] : coeffs.entries) {
        const double b = model::radial_indices(params, key.first).b_prime;
        specialfn::bessel_asymptotic(b, p * r, tolerance); // threshold check
        const double phase = s * (b + 0.5) * std::numbers::pi / 2.0 - s * p * r;
        sum += value * std::pow(r, -key.first) * table.at(key.first, key.second)(x) * std::polar(1.0, phase);
    }
    return std::pow(2.0 * std::numbers::pi * r, -0.5) * std::pow(p, base.n_prime - 0.5) *
           ground_state(x, params.nu_prime) * std::pow(r, -base.a_prime) * sum;
}

/// C exp(i sum_j p_j x_j)
inline complex plane_wave_in(std::span<const double> x, const MomentumSet& pset, complex amplitude) {
    if (x.size() != pset.size()) throw DomainError("plane_wave_in: dimension mismatch");
    double phase = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) phase += pset.momenta()[j] * x[j];
    return amplitude * std::polar(1.0, phase);
}

/// C exp(-i pi nu N(N-1)/2) exp(i sum_j x_j p_{N+1-j}); `exponent` is nu' (or nu).
inline complex plane_wave_out(std::span<const double> x, const MomentumSet& pset, complex amplitude, double exponent) {
    if (x.size() != pset.size()) throw DomainError("plane_wave_out: dimension mismatch");
    const std::size_t n = x.size();
    double phase = 0.0;
    for (std::size_t j = 0; j < n; ++j) phase += x[j] * pset.momenta()[n - 1 - j];
    const double pairs = 0.5 * static_cast<double>(n * (n - 1));
    return amplitude * std::polar(1.0, -std::numbers::pi * exponent * pairs) * std::polar(1.0, phase);
}

// ---------------------------------------------------------------------------
// Radial profile along a ray, used for boundary matching.

/// Unit direction in centred coordinates lying in the ordered sector.
class Direction {
public:
    explicit Direction(std::vector<double> coords) : unit_(std::move(coords)) {
        const double mean = std::accumulate(unit_.begin(), unit_.end(), 0.0) / static_cast<double>(unit_.size());
        for (double& v : unit_) v -= mean;
        const double norm = centered_norm(unit_);
        if (!(norm > 0.0)) throw DomainError("Direction: all coordinates coincide");
        for (double& v : unit_) v /= norm;
        for (std::size_t j = 0; j + 1 < unit_.size(); ++j)
            if (unit_[j] <= unit_[j + 1]) throw DomainError("Direction: must point strictly inside the ordered sector");
    }

    /// Equally spaced particles.
    static Direction equally_spaced(int n) {
        std::vector<double> c(n);
        for (int j = 0; j < n; ++j) c[j] = static_cast<double>(n - 1 - 2 * j);
        return Direction(std::move(c));
    }

    /// Unequal gaps 1, 1.37, 1.74, ...; avoids the reflection-symmetric ray on which
    /// odd polynomials vanish.
    static Direction generic(int n) {
        std::vector<double> c(n, 0.0);
        for (int j = n - 2; j >= 0; --j) c[j] = c[j + 1] + 1.0 + 0.37 * (n - 2 - j);
        return Direction(std::move(c));
    }

    std::span<const double> unit() const { return unit_; }

    std::vector<double> at(double r) const {
        std::vector<double> x(unit_);
        for (double& v : x) v *= r;
        return x;
    }

private:
    std::vector<double> unit_;
};

struct RadialValue {
    complex value;
    complex derivative; ///< d/dr
};

/// F(r) = psi_gen(r u) / p^{n'-1/2} and its r-derivative along the ray u.
inline RadialValue radial_profile(const Direction& u, double p, const SuperpositionCoeffs& coeffs,
                                  const PolynomialTable& table, const CouplingParams& params, double r) {
    check_coefficients(coeffs, table);
    if (!(r > 0.0) || !(p > 0.0)) throw DomainError("radial_profile: r and p must be positive");
    const model::RadialIndices base = model::radial_indices(params, 0);
    const double pairs = params.pair_count();
    const double gr_unit = ground_state(u.unit(), params.nu_prime);
    // psi_gr(r u) = r^{nu' M} psi_gr(u), P_k(r u) = r^k P_k(u): every term carries r^e J_b(p r)
    const double e = params.nu_prime * pairs - base.a_prime;
    const double scale = std::pow(p, coeffs.scaling_exponent - (base.n_prime - 0.5)) * gr_unit;
    complex value = 0.0;
    complex derivative = 0.0;
    for (const auto& [key, c] : coeffs.entries) {
        const double b = model::radial_indices(params, key.first).b_prime;
        const double angular = table.at(key.first, key.second)(u.unit());
        const double j = specialfn::bessel_j(b, p * r);
        const double jp = specialfn::bessel_j_prime(b, p * r);
        const double re = std::pow(r, e);
        value += c * angular * re * j;
        derivative += c * angular * (e * re / r * j + re * p * jp);
    }
    return {scale * value, scale * derivative};
}

/// S(r) = (2 pi r)^-1/2 psi_gr(r u) r^-A' and its r-derivative.
inline std::pair<double, double> asymptotic_envelope(const Direction& u, const CouplingParams& params, double r) {
    if (!(r > 0.0)) throw DomainError("asymptotic_envelope: r must be positive");
    const model::RadialIndices base = model::radial_indices(params, 0);
    const double e = params.nu_prime * params.pair_count() - base.a_prime - 0.5;
    const double s = std::pow(2.0 * std::numbers::pi, -0.5) * ground_state(u.unit(), params.nu_prime) * std::pow(r, e);
    return {s, s * e / r};
}

// ---------------------------------------------------------------------------
// Finite-difference Hamiltonian.

struct HamiltonianTerms {
    complex kinetic;
    complex inverse_square;
    complex deformation;
    complex confinement;

    complex total() const { return kinetic + inverse_square + deformation + confinement; }
    /// Largest single-term magnitude: the scale that cancels in H psi = 0.
    double scale() const {
        return std::max({std::abs(kinetic), std::abs(inverse_square), std::abs(deformation), std::abs(confinement)});
    }
};

inline HamiltonianTerms apply_hamiltonian_terms(const fd::Field& psi, std::span<const double> x, const CouplingParams& params,
                                                double h) {
    if (!(h > 0.0)) throw DomainError("apply_hamiltonian_fd: h must be positive");
    if (static_cast<int>(x.size()) != params.n_particles) throw DomainError("apply_hamiltonian_fd: dimension mismatch");
    for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t k = j + 1; k < x.size(); ++k)
            if (std::fabs(x[j] - x[k]) <= 2.0 * h)
                throw SingularConfiguration("apply_hamiltonian_fd: stencil crosses a coincidence hyperplane");

    const fd::Stencil st = fd::stencil(psi, x, h);
    HamiltonianTerms t{};
    t.kinetic = -0.5 * st.laplacian;
    for (std::size_t j = 0; j < x.size(); ++j) {
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (j == k) continue;
            const double d = x[j] - x[k];
            t.inverse_square += 0.5 * params.g * st.value / (d * d);
            t.deformation += params.delta * st.gradient[j] / d;
        }
    }
    if (params.omega != 0.0) {
        double sq = 0.0;
        for (double v : x) sq += v * v;
        t.confinement = 0.5 * params.omega * params.omega * sq * st.value;
    }
    return t;
}

inline complex apply_hamiltonian_fd(const fd::Field& psi, std::span<const double> x, const CouplingParams& params, double h) {
    return apply_hamiltonian_terms(psi, x, params, h).total();
}

/// Relative floor guarding residuals at near-nodes of psi.
inline constexpr double kNodeFloor = 1e-8;
/// Default step relative to the local minimum gap.
inline constexpr double kDefaultRelativeStep = 1e-3;

struct ResidualReport {
    double max_residual = 0.0;
    std::vector<double> per_sample;
};

/// max over samples of |H psi - E psi| / D, where D is the largest of |E psi|, the
/// single-term magnitudes of H psi and |psi| / (2 gap^2) (floored at 1e-8 of the
/// largest D over all samples). Away from nodes of psi, D is comparable to |E psi|.
/// The step at each sample is relative_step times its smallest gap.
inline ResidualReport eigen_residual(const fd::Field& psi, double eigenvalue, std::span<const Configuration> samples,
                                     const CouplingParams& params, double relative_step = kDefaultRelativeStep) {
    ResidualReport out;
    if (samples.empty()) return out;
    std::vector<complex> diffs(samples.size());
    std::vector<double> denominators(samples.size());
    double global = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double h = relative_step * samples[i].smallest_gap();
        const HamiltonianTerms t = apply_hamiltonian_terms(psi, samples[i].coords(), params, h);
        const complex value = psi(samples[i].coords());
        diffs[i] = t.total() - eigenvalue * value;
        const double gap = samples[i].smallest_gap();
        denominators[i] = std::max({std::abs(eigenvalue * value), t.scale(), 0.5 * std::abs(value) / (gap * gap)});
        global = std::max(global, denominators[i]);
    }
    out.per_sample.resize(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double denom = std::max(denominators[i], kNodeFloor * global);
        out.per_sample[i] = denom > 0.0 ? std::abs(diffs[i]) / denom : std::abs(diffs[i]);
        out.max_residual = std::max(out.max_residual, out.per_sample[i]);
    }
    return out;
}

/// Random ordered configurations with gaps in [2.5, 4]/p and the last coordinate in [-1, 1).
inline std::vector<Configuration> sample_configurations(int n, double p, std::size_t count, std::uint64_t seed) {
    if (n < 2) throw DomainError("sample_configurations: need at least two particles");
    if (!(p > 0.0)) throw DomainError("sample_configurations: p must be positive");
    std::mt19937_64 engine(seed);
    auto uniform = [&] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
    std::vector<Configuration> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> x(n);
        x[n - 1] = 2.0 * uniform() - 1.0;
        for (int j = n - 2; j >= 0; --j) x[j] = x[j + 1] + (2.5 + 1.5 * uniform()) / p;
        out.emplace_back(std::move(x));
    }
    return out;
}

struct ConvergenceReport {
    ResidualReport at_h;
    ResidualReport at_half_h;
    /// sum_i res_i(h) / sum_i res_i(h/2); 4 for a second-order stencil.
    double ratio = 0.0;
};

inline ConvergenceReport convergence_check(const fd::Field& psi, double eigenvalue, std::span<const Configuration> samples,
                                           const CouplingParams& params, double relative_step = kDefaultRelativeStep) {
    ConvergenceReport out{eigen_residual(psi, eigenvalue, samples, params, relative_step),
                          eigen_residual(psi, eigenvalue, samples, params, 0.5 * relative_step), 0.0};
    const double coarse = std::accumulate(out.at_h.per_sample.begin(), out.at_h.per_sample.end(), 0.0);
    const double fine = std::accumulate(out.at_half_h.per_sample.begin(), out.at_half_h.per_sample.end(), 0.0);
    out.ratio = fine > 0.0 ? coarse / fine : std::numeric_limits<double>::infinity();
    return out;
}

} // namespace calogero::wavefunction
