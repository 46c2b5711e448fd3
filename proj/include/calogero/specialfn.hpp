#pragma once

// Bessel functions of the first kind J_nu(x) for real order and positive
// real argument, plus the Gamma function they need.
//
// Three evaluation regimes, chosen from (nu, x):
//
//   x <  max(20, |nu|)                ascending power series, summed in
//                                     extended precision
//   max(20, nu) <= x < max(20, 2 nu)  forward recurrence from J_mu, J_{mu+1}
//                                     (mu = frac(nu)) evaluated asymptotically
//   x >= max(20, 2|nu|)               Hankel asymptotic expansion truncated at
//                                     its smallest term
//
// The series terms of J_nu(x) have the magnitude of the terms of I_nu(x), so
// the cancellation loss grows like I_nu(x)/J_nu(x). Summing in 113-bit
// precision keeps that loss below 1e-12 for |nu| <= 50 inside the series
// regime.

#include <calogero/errors.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace calogero::specialfn {

#if defined(__SIZEOF_FLOAT128__) && !defined(CALOGERO_NO_FLOAT128)
using wide_float = __float128;
inline constexpr long double kWideEpsilon = 1.925929944387235853e-34L;
#else
using wide_float = long double;
inline constexpr long double kWideEpsilon = std::numeric_limits<long double>::epsilon();
#endif

/// Series stops once the next term is below this fraction of the partial sum.
inline constexpr double kSeriesRelativeStop = 1e-18;
inline constexpr int kSeriesTermCap = 200;
/// Target error of bessel_j relative to the local envelope of J_nu.
inline constexpr double kTargetAccuracy = 1e-10;
/// Default bound on the leading-order correction accepted by bessel_asymptotic.
inline constexpr double kAsymptoticTolerance = 1e-6;
/// Negative non-integer orders are supported down to (but excluding) this value.
inline constexpr double kMinNegativeOrder = -10.0;

namespace detail {

// Lanczos approximation, g = 7, nine coefficients.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline double lanczos_sum(double zm1) {
    double a = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (zm1 + static_cast<double>(i));
    return a;
}

inline bool is_integer(double v) { return std::floor(v) == v; }

} // namespace detail

/// ln Gamma(z) for z > 0.
inline double log_gamma(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("log_gamma: argument must be positive and finite");
    if (z < 0.5) {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z), sin(pi z) > 0 on (0, 1/2)
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * z)) - log_gamma(1.0 - z);
    }
    const double zm1 = z - 1.0;
    const double t = zm1 + detail::kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (zm1 + 0.5) * std::log(t) - t +
           std::log(detail::lanczos_sum(zm1));
}

/// Gamma(z) for real z that is not a non-positive integer.
inline double gamma(double z) {
    if (!std::isfinite(z)) throw DomainError("gamma: non-finite argument");
    if (z <= 0.0 && detail::is_integer(z)) throw DomainError("gamma: pole at non-positive integer");
    if (z < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma(1.0 - z));
    if (z > 171.0) return std::numeric_limits<double>::infinity();
    const double zm1 = z - 1.0;
    const double t = zm1 + detail::kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, zm1 + 0.5) * std::exp(-t) * detail::lanczos_sum(zm1);
}

/// Value and x-derivative of J_nu at one point.
struct BesselEval {
    double order = 0.0;
    double argument = 0.0;
    double value = 0.0;
    double derivative = 0.0;
};

/// Leading large-argument form J_nu(x) ~ amplitude * cos(x + phase).
struct AsymptoticForm {
    double amplitude = 0.0;
    double phase = 0.0;
    /// |4 nu^2 - 1| / (8 x): relative size of the first neglected correction.
    double correction_estimate = 0.0;
};

enum class BesselRegime { series, recurrence, asymptotic };

namespace detail {

/// Ascending series. Requires nu not a negative integer.
inline double series(double nu, double x) {
    // (x/2)^nu / Gamma(nu + 1)
    long double prefactor;
    if (nu + 1.0 < 170.0) {
        prefactor = std::pow(static_cast<long double>(x) / 2.0L, static_cast<long double>(nu)) /
                    static_cast<long double>(gamma(nu + 1.0));
    } else {
        prefactor = std::exp(static_cast<long double>(nu) * std::log(static_cast<long double>(x) / 2.0L) -
                             static_cast<long double>(log_gamma(nu + 1.0)));
    }
    const wide_float q = -static_cast<wide_float>(x) * static_cast<wide_float>(x) / 4;
    wide_float term = 1;
    wide_float sum = 1;
    long double max_term = 1.0L;
    int m = 1;
    for (; m <= kSeriesTermCap; ++m) {
        term *= q / (static_cast<wide_float>(m) * (static_cast<wide_float>(nu) + m));
        sum += term;
        const long double abs_term = std::fabs(static_cast<long double>(term));
        max_term = std::max(max_term, abs_term);
        // only stop once terms are decreasing
        const bool past_peak = static_cast<double>(m) * std::fabs(nu + m) > x * x / 4.0;
        if (past_peak && abs_term < kSeriesRelativeStop * std::fabs(static_cast<long double>(sum))) break;
    }
    const long double s = static_cast<long double>(sum);
    const long double value = prefactor * s;
    const long double rounding = max_term * kWideEpsilon * static_cast<long double>(m);
    if (m > kSeriesTermCap) {
        throw AccuracyLoss("bessel_j: series did not converge within " + std::to_string(kSeriesTermCap) + " terms",
                           static_cast<double>(std::fabs(static_cast<long double>(term) / s)));
    }
    // rounding relative to the envelope of J; for x < |nu| J itself is the envelope
    long double envelope = std::fabs(s);
    if (x >= std::fabs(nu)) {
        const long double amp = std::sqrt(2.0L / (std::numbers::pi_v<long double> * x));
        envelope = std::max(envelope, 0.1L * amp / std::fabs(prefactor));
    }
    if (envelope > 0 && rounding / envelope > kTargetAccuracy) {
        throw AccuracyLoss("bessel_j: series cancellation at order " + std::to_string(nu) + ", x = " +
                               std::to_string(x),
                           static_cast<double>(rounding / envelope));
    }
    return static_cast<double>(value);
}

struct HankelResult {
    double value = 0.0;
    /// First omitted term, relative to the amplitude sqrt(2/(pi x)).
    double error_estimate = 0.0;
};

/// Hankel expansion J = sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - (nu/2 + 1/4) pi,
/// summed up to the smallest term.
inline HankelResult hankel(double nu, double x) {
    const double mu4 = 4.0 * nu * nu;
    double p_sum = 0.0;
    double q_sum = 0.0;
    double a = 1.0; // a_k(nu) / x^k
    double previous = std::numeric_limits<double>::infinity();
    double omitted = 0.0;
    for (int k = 0;; ++k) {
        if (k > 0) {
            const double odd = 2.0 * k - 1.0;
            a *= (mu4 - odd * odd) / (8.0 * k * x);
        }
        const double mag = std::fabs(a);
        if (mag == 0.0) {
            omitted = 0.0; // half-integer order: expansion terminates
            break;
        }
        // before k ~ |nu| the terms may still grow; after it they shrink to a minimum
        if (k > std::fabs(nu) + 0.5 && mag >= previous) {
            omitted = mag;
            break;
        }
        if (mag < 1e-17 && k > 0) {
            omitted = mag;
            break;
        }
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0)
            p_sum += sign * a;
        else
            q_sum += sign * a;
        previous = mag;
        if (k > 2000) {
            omitted = mag;
            break;
        }
    }
    const double turns = std::fmod(nu / 2.0 + 0.25, 2.0);
    const double theta = turns * std::numbers::pi;
    const double cx = std::cos(x);
    const double sx = std::sin(x);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double cos_chi = cx * ct + sx * st;
    const double sin_chi = sx * ct - cx * st;
    const double amplitude = std::sqrt(2.0 / (std::numbers::pi * x));
    return {amplitude * (p_sum * cos_chi - q_sum * sin_chi), omitted};
}

inline double checked_hankel(double nu, double x) {
    const HankelResult h = hankel(nu, x);
    if (h.error_estimate > kTargetAccuracy * 0.1) {
        throw AccuracyLoss("bessel_j: asymptotic expansion too coarse at order " + std::to_string(nu) +
                               ", x = " + std::to_string(x),
                           h.error_estimate);
    }
    return h.value;
}

/// Forward recurrence J_{m+1} = (2m/x) J_m - J_{m-1} from the fractional base order.
/// Stable while the order stays below x.
inline double recurrence(double nu, double x) {
    const double base = std::floor(nu);
    const double mu = nu - base;
    double lower = checked_hankel(mu, x);
    if (base == 0.0) return lower;
    double upper = checked_hankel(mu + 1.0, x);
    for (double order = mu + 1.0; order < nu - 0.5; order += 1.0) {
        const double next = (2.0 * order / x) * upper - lower;
        lower = upper;
        upper = next;
    }
    return upper;
}

inline double switchover(double nu) { return std::max(20.0, 2.0 * std::fabs(nu)); }

} // namespace detail

inline BesselRegime bessel_regime(double order, double x) {
    if (x >= detail::switchover(order)) return BesselRegime::asymptotic;
    if (order >= 0.0 && x >= std::max(20.0, order)) return BesselRegime::recurrence;
    return BesselRegime::series;
}

/// J_order(x). Orders >= 0 are the documented range; negative integer orders use
/// J_{-n} = (-1)^n J_n and negative non-integer orders above -10 are accepted.
inline double bessel_j(double order, double x) {
    if (!std::isfinite(order) || !std::isfinite(x)) throw DomainError("bessel_j: non-finite input");
    if (x < 0.0) throw DomainError("bessel_j: negative argument");
    if (order < 0.0) {
        if (detail::is_integer(order)) {
            const double v = bessel_j(-order, x);
            return std::fmod(-order, 2.0) == 0.0 ? v : -v;
        }
        if (order <= kMinNegativeOrder) throw DomainError("bessel_j: negative order below supported range");
        if (x == 0.0) throw DomainError("bessel_j: J_nu(0) diverges for negative non-integer order");
    }
    if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
    switch (bessel_regime(order, x)) {
    case BesselRegime::series:
        return detail::series(order, x);
    case BesselRegime::recurrence:
        return detail::recurrence(order, x);
    case BesselRegime::asymptotic:
        break;
    }
    return detail::checked_hankel(order, x);
}

/// dJ_order/dx through J'_nu = (nu/x) J_nu - J_{nu+1}.
inline double bessel_j_prime(double order, double x) {
    if (!std::isfinite(order) || !std::isfinite(x)) throw DomainError("bessel_j_prime: non-finite input");
    if (x < 0.0) throw DomainError("bessel_j_prime: negative argument");
    if (x == 0.0) {
        if (order == 0.0 || order > 1.0) return 0.0;
        if (order == 1.0) return 0.5;
        throw DomainError("bessel_j_prime: derivative at 0 diverges for this order");
    }
    return (order / x) * bessel_j(order, x) - bessel_j(order + 1.0, x);
}

inline BesselEval bessel_eval(double order, double x) {
    return {order, x, bessel_j(order, x), bessel_j_prime(order, x)};
}

/// Leading term of the large-argument expansion. Rejects x where the first
/// neglected correction |4 nu^2 - 1| / (8 x) exceeds `tolerance`.
inline AsymptoticForm bessel_asymptotic(double order, double x, double tolerance = kAsymptoticTolerance) {
    if (!std::isfinite(order) || !std::isfinite(x)) throw DomainError("bessel_asymptotic: non-finite input");
    if (!(x > 0.0)) throw RangeError("bessel_asymptotic: argument must be positive");
    const double correction = std::fabs(4.0 * order * order - 1.0) / (8.0 * x);
    if (correction > tolerance) {
        throw RangeError("bessel_asymptotic: x = " + std::to_string(x) + " below the asymptotic threshold for order " +
                         std::to_string(order));
    }
    return {std::sqrt(2.0 / (std::numbers::pi * x)), -order * std::numbers::pi / 2.0 - std::numbers::pi / 4.0,
            correction};
}

/// Smallest x accepted by bessel_asymptotic at the given tolerance.
inline double asymptotic_threshold(double order, double tolerance = kAsymptoticTolerance) {
    return std::fabs(4.0 * order * order - 1.0) / (8.0 * tolerance);
}

} // namespace calogero::specialfn
