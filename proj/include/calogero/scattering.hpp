#pragma once

// Jost solutions, Wronskians and the spectral-singularity scan; boundary
// matching of the two-body and N-body scattering states, with reflection and
// transmission coefficients and the transfer matrix.

#include <calogero/errors.hpp>
#include <calogero/model.hpp>
#include <calogero/parallel.hpp>
#include <calogero/specialfn.hpp>
#include <calogero/wavefunction.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace calogero::scattering {

using complex = std::complex<double>;
using model::CouplingParams;
using wavefunction::Configuration;
using wavefunction::MomentumSet;

inline constexpr complex kI{0.0, 1.0};

/// Verdict threshold on normalized Wronskian magnitudes.
inline constexpr double kSsTolerance = 1e-10;

// ---------------------------------------------------------------------------
// Jost solutions and Wronskian

/// psi_+ = exp(i sum p_j x_j),  psi_- = m22 e^{i pi phi} exp(i sum x_j p_{N+1-j}).
struct JostPair {
    MomentumSet pset;
    double phi = 0.0;
    complex m22 = 1.0;

    complex psi_plus(std::span<const double> x) const { return wavefunction::plane_wave_in(x, pset, 1.0); }

    complex psi_minus(std::span<const double> x) const {
        const std::size_t n = x.size();
        double phase = 0.0;
        for (std::size_t j = 0; j < n; ++j) phase += x[j] * pset.momenta()[n - 1 - j];
        return m22 * std::polar(1.0, std::numbers::pi * phi) * std::polar(1.0, phase);
    }
};

inline JostPair make_jost_pair(const MomentumSet& pset, const CouplingParams& params,
                               model::PhiConvention convention = model::PhiConvention::deformed_exponent) {
    return {pset, model::radial_indices(params, 0, convention).phi, 1.0};
}

inline void check_direction(const JostPair& jost, std::span<const double> x, int direction) {
    if (x.size() != jost.pset.size()) throw DomainError("wronskian: dimension mismatch");
    if (direction < 1 || direction > static_cast<int>(x.size())) throw DomainError("wronskian: direction out of range");
}

/// W = psi_+ d_i psi_- - psi_- d_i psi_+ from the exponential forms (i counted from 1).
inline complex wronskian(const JostPair& jost, std::span<const double> x, int direction) {
    check_direction(jost, x, direction);
    const std::size_t n = x.size();
    const std::size_t i = static_cast<std::size_t>(direction - 1);
    const complex plus = jost.psi_plus(x);
    const complex minus = jost.psi_minus(x);
    const complex d_plus = kI * jost.pset.momenta()[i] * plus;
    const complex d_minus = kI * jost.pset.momenta()[n - 1 - i] * minus;
    return plus * d_minus - minus * d_plus;
}

/// Factorized form i m22 (p_i - p_{N+1-i}) e^{i pi phi} exp(i sum x_j p_{N+1-j}) exp(i sum p_j x_j).
inline complex wronskian_product_form(const JostPair& jost, std::span<const double> x, int direction) {
    check_direction(jost, x, direction);
    const std::size_t n = x.size();
    const std::size_t i = static_cast<std::size_t>(direction - 1);
    const std::span<const double> pj = jost.pset.momenta();
    double reflected = 0.0;
    double direct = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        reflected += x[j] * pj[n - 1 - j];
        direct += pj[j] * x[j];
    }
    return kI * jost.m22 * (pj[i] - pj[n - 1 - i]) * std::polar(1.0, std::numbers::pi * jost.phi + reflected + direct);
}

// ---------------------------------------------------------------------------
// Boundary matching

struct ScatteringMatch {
    double p = 0.0;
    double r_minus = 0.0;
    double r_plus = 0.0;
    complex a;  ///< incoming e^{-ipr} coefficient
    complex b;  ///< incoming e^{+ipr} coefficient
    complex d;  ///< outgoing coefficient (two-body)
    complex a1; ///< N-body e^{-ipr} coefficient
    complex b1; ///< N-body e^{+ipr} coefficient
    double reflection = 0.0;
    double transmission = std::numeric_limits<double>::quiet_NaN();
    double derivative_mismatch = std::numeric_limits<double>::quiet_NaN();

    /// Cross-checks against the printed closed forms (two-body only).
    double printed_reflection = std::numeric_limits<double>::quiet_NaN();
    double printed_transmission_derivative_squared = std::numeric_limits<double>::quiet_NaN();
    double printed_transmission_square_derivative = std::numeric_limits<double>::quiet_NaN();
    /// max(|A1 - A1_closed|, |B1 - B1_closed|) / |A1| (N-body only).
    double closed_form_deviation = std::numeric_limits<double>::quiet_NaN();
};

/// Solves a e^{-i p r} + b e^{i p r} = u,  -i p a e^{-i p r} + i p b e^{i p r} = v.
inline std::pair<complex, complex> solve_plane_wave_pair(double p, double r, complex u, complex v) {
    const complex em = std::polar(1.0, -p * r);
    const complex ep = std::polar(1.0, p * r);
    const complex m00 = em, m01 = ep, m10 = -kI * p * em, m11 = kI * p * ep;
    const complex det = m00 * m11 - m01 * m10;
    if (!(std::abs(det) > 1e-300) || !std::isfinite(std::abs(det)))
        throw NumericalFailure("matching system is singular");
    return {(u * m11 - m01 * v) / det, (m00 * v - m10 * u) / det};
}

inline void check_match_inputs(double p, double r_minus) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("matching: p must be positive");
    if (!(r_minus > 0.0) || !std::isfinite(r_minus)) throw DomainError("matching: r_minus must be positive");
}

/// Two-body state r^c J_b'(p r) matched to r^{c-1/2}(A e^{-ipr} + B e^{ipr}) at r_minus and
/// to D r^{c-1/2} e^{-ipr} (value only) at r_plus. Common factors p^{n'-1/2} and r^{c-1/2}
/// are divided out before matching.
inline ScatteringMatch match_two_body(const CouplingParams& params, double p, double r_minus, double r_plus) {
    if (params.n_particles != 2) throw DomainError("match_two_body: requires N = 2");
    check_match_inputs(p, r_minus);
    if (!(r_plus > 0.0) || !std::isfinite(r_plus)) throw DomainError("matching: r_plus must be positive");
    const model::RadialIndices idx = model::radial_indices(params, 0);
    const double b = idx.b_prime;

    // u = r^{1/2} J(p r), the state divided by r^{c-1/2}; v = du/dr
    auto reduced = [&](double r) {
        const double j = specialfn::bessel_j(b, p * r);
        const double jp = specialfn::bessel_j_prime(b, p * r);
        return std::pair{std::sqrt(r) * j, 0.5 / std::sqrt(r) * j + p * std::sqrt(r) * jp};
    };

    ScatteringMatch m;
    m.p = p;
    m.r_minus = r_minus;
    m.r_plus = r_plus;
    const auto [u_minus, v_minus] = reduced(r_minus);
    std::tie(m.a, m.b) = solve_plane_wave_pair(p, r_minus, u_minus, v_minus);
    m.a1 = m.a;
    m.b1 = m.b;

    const auto [u_plus, v_plus] = reduced(r_plus);
    m.d = u_plus * std::polar(1.0, p * r_plus);
    const double scale = std::max(std::fabs(v_plus), p * std::fabs(u_plus));
    const complex out_derivative = -kI * p * m.d * std::polar(1.0, -p * r_plus);
    m.derivative_mismatch = scale > 0.0 ? std::abs(out_derivative - v_plus) / scale : 0.0;

    const double a2 = std::norm(m.a);
    if (!(a2 > 0.0)) {
        m.reflection = std::numeric_limits<double>::infinity();
        m.transmission = std::numeric_limits<double>::infinity();
    } else {
        m.reflection = std::norm(m.b) / a2;
        m.transmission = std::norm(m.d) / a2;
    }

    // printed closed forms, common factor p^{n'-1/2} included as printed
    const double c = idx.c;
    const double jm = specialfn::bessel_j(b, p * r_minus);
    const double jpm = specialfn::bessel_j_prime(b, p * r_minus);
    const double sr = std::sqrt(r_minus);
    const double first = (c / (r_minus * r_minus) + p * p) * jm * sr;
    const double second = (c - 0.5) * sr * jm + sr * jpm;
    const complex denom = std::pow(p, idx.n_prime - 0.5) * (2.0 * p * p + 2.0 * kI * p * c / r_minus) *
                          std::polar(1.0, -p * r_minus);
    const complex a27 = (first - second * (c / r_minus - kI * p)) / denom;
    const complex b27 = (first - second * (c / r_minus + kI * p)) / denom;
    m.printed_reflection = std::norm(b27) / std::norm(a27);
    const double jplus = specialfn::bessel_j(b, p * r_plus);
    const double jpplus = specialfn::bessel_j_prime(b, p * r_plus);
    const complex d_denom = std::pow(p, idx.n_prime - 0.5) * std::polar(1.0, -p * r_plus);
    const complex d28_squared = r_plus * jpplus * jpplus / d_denom;
    const complex d28_product = r_plus * 2.0 * jplus * jpplus / d_denom;
    m.printed_transmission_derivative_squared = std::norm(d28_squared) / std::norm(a27);
    m.printed_transmission_square_derivative = std::norm(d28_product) / std::norm(a27);
    return m;
}

/// A1, B1 from value and derivative continuity of S(r)(A1 e^{-ipr} + B1 e^{ipr}) against
/// the radial content F(r) of the superposition along the ray `direction`.
inline ScatteringMatch match_n_body(const CouplingParams& params, const MomentumSet& pset,
                                   const wavefunction::SuperpositionCoeffs& coeffs,
                                   const wavefunction::PolynomialTable& table, double r_minus,
                                   std::optional<wavefunction::Direction> direction = std::nullopt) {
    if (static_cast<int>(pset.size()) != params.n_particles) throw DomainError("match_n_body: dimension mismatch");
    const double p = pset.p();
    check_match_inputs(p, r_minus);
    const wavefunction::Direction u = direction ? *direction : wavefunction::Direction::generic(params.n_particles);

    const wavefunction::RadialValue f = wavefunction::radial_profile(u, p, coeffs, table, params, r_minus);
    const auto [s, sp] = wavefunction::asymptotic_envelope(u, params, r_minus);
    if (!(std::fabs(s) > 0.0) || !std::isfinite(s)) throw DegenerateEnvelope("match_n_body: envelope vanishes at r_minus");
    if (f.value == 0.0 && f.derivative == 0.0)
        throw DegenerateEnvelope("match_n_body: radial profile vanishes identically along this direction");

    ScatteringMatch m;
    m.p = p;
    m.r_minus = r_minus;
    const complex value = f.value / s;
    const complex slope = (f.derivative * s - sp * f.value) / (s * s);
    std::tie(m.a1, m.b1) = solve_plane_wave_pair(p, r_minus, value, slope);
    m.a = m.a1;
    m.b = m.b1;
    const double a2 = std::norm(m.a1);
    m.reflection = a2 > 0.0 ? std::norm(m.b1) / a2 : std::numeric_limits<double>::infinity();

    const complex ip = kI * p;
    const complex closed_a = (ip * f.value * s - f.derivative * s + sp * f.value) / (2.0 * ip * s * s) *
                             std::polar(1.0, p * r_minus);
    const complex closed_b = (ip * f.value * s + f.derivative * s - sp * f.value) / (2.0 * ip * s * s) *
                             std::polar(1.0, -p * r_minus);
    m.closed_form_deviation = std::max(std::abs(closed_a - m.a1), std::abs(closed_b - m.b1)) / std::abs(m.a1);
    return m;
}

// ---------------------------------------------------------------------------
// Transfer matrix

enum class M22Status { finite_nonzero, zero, divergent };

constexpr std::string_view to_string(M22Status s) {
    switch (s) {
    case M22Status::finite_nonzero:
        return "Finite-Nonzero";
    case M22Status::zero:
        return "Zero";
    case M22Status::divergent:
        return "Divergent";
    }
    return "Finite-Nonzero";
}

/// T below this counts as a vanishing transmission amplitude.
inline constexpr double kTransmissionFloor = 1e-14;
/// R above this counts as a divergent reflection.
inline constexpr double kReflectionCeiling = 1e14;

using Matrix2 = std::array<std::array<complex, 2>, 2>;

struct TransferData {
    complex a_plus, b_plus, a_minus, b_minus;
    /// M = [[D/A, 0], [-B/D, A/D]]; entries with 1/D are infinite when D = 0.
    Matrix2 m{};
    complex det_m;
    /// 1/M22 = D/A, the transmission amplitude.
    complex inv_m22;
    M22Status status = M22Status::finite_nonzero;
};

inline M22Status classify_m22(double reflection, double transmission) {
    if (!(reflection < kReflectionCeiling)) return M22Status::zero;
    if (transmission < kTransmissionFloor) return M22Status::divergent;
    return M22Status::finite_nonzero;
}

/// (A_+, B_+) = (D, 0) on the outgoing side, (A_-, B_-) = (A, B) on the incoming side.
inline TransferData transfer_matrix(const ScatteringMatch& match) {
    TransferData t;
    t.a_minus = match.a;
    t.b_minus = match.b;
    t.a_plus = match.d;
    t.b_plus = 0.0;
    t.status = classify_m22(match.reflection, match.transmission);
    const double inf = std::numeric_limits<double>::infinity();
    t.inv_m22 = std::abs(match.a) > 0.0 ? match.d / match.a : complex(inf, 0.0);
    const bool d_zero = !(std::abs(match.d) > 0.0);
    t.m[0][0] = t.inv_m22;
    t.m[0][1] = 0.0;
    t.m[1][0] = d_zero ? complex(inf, 0.0) : -match.b / match.d;
    t.m[1][1] = d_zero ? complex(inf, 0.0) : match.a / match.d;
    t.det_m = d_zero ? complex(std::numeric_limits<double>::quiet_NaN(), 0.0) : t.m[0][0] * t.m[1][1] - t.m[0][1] * t.m[1][0];
    return t;
}

// ---------------------------------------------------------------------------
// Spectral-singularity scan

struct WronskianReport {
    MomentumSet pset;
    std::vector<double> pair_factors; ///< p_i - p_{N+1-i}, i = 1..N
    M22Status m22_status = M22Status::finite_nonzero;
    std::vector<double> w_magnitudes; ///< |W_i| / (|psi_+ psi_-| p); raw |W_i| when p = 0
    bool ss_verdict = false;

    /// Smallest |p_i - p_{N+1-i}| over directions with i != N+1-i.
    double min_pair_factor() const {
        double best = std::numeric_limits<double>::infinity();
        const std::size_t n = pair_factors.size();
        for (std::size_t i = 0; i < n; ++i)
            if (2 * i + 1 != n) best = std::min(best, std::fabs(pair_factors[i]));
        return best;
    }
    double min_w_magnitude() const {
        double best = std::numeric_limits<double>::infinity();
        const std::size_t n = w_magnitudes.size();
        for (std::size_t i = 0; i < n; ++i)
            if (2 * i + 1 != n) best = std::min(best, w_magnitudes[i]);
        return best;
    }
    /// |p_1 - p_N|
    double outer_pair_factor() const { return std::fabs(pair_factors.front()); }
};

/// Representative asymptotic configuration: gaps of `spacing`.
inline std::vector<double> asymptotic_configuration(int n, double spacing = 1e3) {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = spacing * 0.5 * static_cast<double>(n - 1 - 2 * j);
    return x;
}

/// r p at which the N-body scan matches; r_minus = kScanMatchingPhase / p.
inline constexpr double kScanMatchingPhase = 100.0;

inline WronskianReport wronskian_report(const CouplingParams& params, const MomentumSet& pset, M22Status status,
                                        double tolerance = kSsTolerance,
                                        model::PhiConvention convention = model::PhiConvention::deformed_exponent) {
    WronskianReport rep{pset, {}, status, {}, false};
    const JostPair jost = make_jost_pair(pset, params, convention);
    const std::vector<double> x = asymptotic_configuration(params.n_particles);
    const double envelope = std::abs(jost.psi_plus(x) * jost.psi_minus(x));
    const int n = params.n_particles;
    bool all_small = true;
    for (int i = 1; i <= n; ++i) {
        rep.pair_factors.push_back(pset.momenta()[i - 1] - pset.momenta()[n - i]);
        const double w = std::abs(wronskian(jost, x, i));
        const double normalized = pset.p() > 0.0 ? w / (envelope * pset.p()) : w;
        rep.w_magnitudes.push_back(normalized);
        all_small = all_small && normalized < tolerance;
    }
    rep.ss_verdict = status == M22Status::zero || all_small;
    return rep;
}

/// Seeded sampler of sorted sum-zero momenta with |p| uniform in [p_min, p_max].
/// Uniforms are built from raw 64-bit engine output so the stream is portable.
class MomentumSampler {
public:
    MomentumSampler(int n, double p_min, double p_max, std::uint64_t seed)
        : n_(n), p_min_(p_min), p_max_(p_max), engine_(seed) {
        if (n < 2) throw DomainError("MomentumSampler: need at least two particles");
        if (!(p_min >= 0.0) || !(p_max >= p_min) || !std::isfinite(p_max))
            throw DomainError("MomentumSampler: need 0 <= p_min <= p_max");
    }

    MomentumSet next() {
        const double p = p_min_ + (p_max_ - p_min_) * uniform();
        for (;;) {
            std::vector<double> v(n_);
            double sum = 0.0;
            for (int j = 0; j + 1 < n_; ++j) {
                v[j] = 2.0 * uniform() - 1.0;
                sum += v[j];
            }
            v[n_ - 1] = -sum;
            std::sort(v.begin(), v.end());
            double norm = 0.0;
            for (double e : v) norm += e * e;
            norm = std::sqrt(norm);
            if (!(norm > 0.0)) continue;
            for (double& e : v) e *= p / norm;
            return MomentumSet(std::move(v), p);
        }
    }

private:
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    int n_;
    double p_min_;
    double p_max_;
    std::mt19937_64 engine_;
};

/// M22 status from an N-body match at r p = kScanMatchingPhase with k = 0.
inline M22Status scan_m22_status(const CouplingParams& params, const MomentumSet& pset,
                                 const wavefunction::PolynomialTable& table) {
    if (!(pset.p() > 0.0)) return M22Status::finite_nonzero;
    const auto coeffs = wavefunction::SuperpositionCoeffs::single(params, 0, 1, 1.0);
    const ScatteringMatch m = match_n_body(params, pset, coeffs, table, kScanMatchingPhase / pset.p());
    return m.reflection < kReflectionCeiling ? M22Status::finite_nonzero : M22Status::zero;
}

/// Samples are drawn sequentially, then evaluated in parallel; reports are in sample order.
inline std::vector<WronskianReport> ss_scan(const CouplingParams& params, MomentumSampler& sampler, std::size_t n_samples,
                                            double tolerance = kSsTolerance,
                                            model::PhiConvention convention = model::PhiConvention::deformed_exponent,
                                            unsigned threads = parallel::thread_count()) {
    std::vector<MomentumSet> sets;
    sets.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        sets.push_back(sampler.next());
        if (static_cast<int>(sets.back().size()) != params.n_particles)
            throw DomainError("ss_scan: sampler dimension differs from N");
    }
    const wavefunction::PolynomialTable table(params, 0);
    return parallel::map_indexed<WronskianReport>(
        n_samples,
        [&](std::size_t i) {
            return wronskian_report(params, sets[i], scan_m22_status(params, sets[i], table), tolerance, convention);
        },
        threads);
}

// ---------------------------------------------------------------------------
// Transmission sweep

/// The vanishing claim holds when T_last / T_first <= kTrendRatio and the log-log slope is negative.
inline constexpr double kTrendRatio = 1e-2;

struct SweepRow {
    double r_minus = 0.0;
    ScatteringMatch match;
};

struct TrendSummary {
    double first_t = 0.0;
    double last_t = 0.0;
    double ratio = 0.0; ///< last / first
    double slope = 0.0; ///< least-squares d log T / d log r_minus
    bool claim_holds = false;
};

struct DiscrepancyRecord {
    std::string claim;
    std::string observed;
    TrendSummary trend;
};

struct TransmissionSweep {
    std::vector<SweepRow> rows;
    TrendSummary trend;
    std::optional<DiscrepancyRecord> discrepancy;
};

inline TrendSummary transmission_trend(std::span<const SweepRow> rows) {
    TrendSummary t;
    if (rows.empty()) return t;
    t.first_t = rows.front().match.transmission;
    t.last_t = rows.back().match.transmission;
    t.ratio = t.first_t > 0.0 ? t.last_t / t.first_t : std::numeric_limits<double>::infinity();
    if (rows.size() >= 2) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const double n = static_cast<double>(rows.size());
        for (const SweepRow& r : rows) {
            const double lx = std::log(r.r_minus);
            const double ly = std::log(std::max(r.match.transmission, std::numeric_limits<double>::min()));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double den = n * sxx - sx * sx;
        t.slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
    }
    t.claim_holds = rows.size() >= 2 && t.ratio <= kTrendRatio && t.slope < 0.0;
    return t;
}

inline TransmissionSweep transmission_sweep(const CouplingParams& params, double p, std::span<const double> r_minus_values,
                                            double r_plus) {
    for (std::size_t i = 1; i < r_minus_values.size(); ++i)
        if (!(r_minus_values[i] > r_minus_values[i - 1]))
            throw DomainError("transmission_sweep: r_minus values must be increasing");
    TransmissionSweep out;
    for (double rm : r_minus_values) out.rows.push_back({rm, match_two_body(params, p, rm, r_plus)});
    out.trend = transmission_trend(out.rows);
    if (!out.trend.claim_holds) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "T_last/T_first = %.6e, log-log slope = %.6e, T_first = %.6e, T_last = %.6e",
                      out.trend.ratio, out.trend.slope, out.trend.first_t, out.trend.last_t);
        out.discrepancy = DiscrepancyRecord{"T vanishes as r_minus grows", buf, out.trend};
    }
    return out;
}

} // namespace calogero::scattering
