#pragma once

// Translation-invariant symmetric homogeneous polynomials P(x_1..x_N) of
// degree k annihilated by
//
//   L_lambda = sum_j d_j^2 + lambda sum_{j!=k} (x_j - x_k)^-1 (d_j - d_k),
//
// computed in exact rational arithmetic. Candidates are products of power
// sums of the centred variables y_j = x_j - mean(x), so translation
// invariance holds by construction.

#include <calogero/errors.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace calogero::polynomials {

using Rational = boost::multiprecision::cpp_rational;
using Exponents = std::vector<int>;
/// Non-increasing positive parts.
using Partition = std::vector<int>;

struct Limits {
    int max_vars = 6;
    int max_degree = 8;
};

inline void check_limits(int n_vars, int degree, const Limits& limits) {
    if (n_vars < 2) throw DomainError("polynomials: need at least two variables");
    if (degree < 0) throw DomainError("polynomials: degree must be >= 0");
    if (n_vars > limits.max_vars || degree > limits.max_degree) {
        throw ResourceLimit("polynomials: (N = " + std::to_string(n_vars) + ", k = " + std::to_string(degree) +
                            ") exceeds caps (N <= " + std::to_string(limits.max_vars) +
                            ", k <= " + std::to_string(limits.max_degree) + ")");
    }
}

/// Exact rational from a double (every finite double is a dyadic rational).
inline Rational to_rational(double v) {
    if (!std::isfinite(v)) throw DomainError("to_rational: non-finite value");
    int exponent = 0;
    double mantissa = std::frexp(v, &exponent);
    // 53 mantissa bits fit an integer exactly
    const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    exponent -= 53;
    Rational r{boost::multiprecision::cpp_int(scaled)};
    if (exponent > 0) {
        r *= Rational(boost::multiprecision::cpp_int(1) << exponent);
    } else if (exponent < 0) {
        r /= Rational(boost::multiprecision::cpp_int(1) << (-exponent));
    }
    return r;
}

namespace detail {

inline boost::multiprecision::cpp_int parse_integer(std::string text) {
    bool negative = false;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        negative = text[0] == '-';
        text.erase(0, 1);
    }
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("parse_rational: malformed integer '" + text + "'");
    // leading zeros would select octal parsing
    const auto first = text.find_first_not_of('0');
    text = first == std::string::npos ? "0" : text.substr(first);
    boost::multiprecision::cpp_int v(text);
    return negative ? boost::multiprecision::cpp_int(-v) : v;
}

} // namespace detail

/// "p/q", an integer, or a decimal literal such as "0.7".
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const auto num = detail::parse_integer(text.substr(0, slash));
        const auto den = detail::parse_integer(text.substr(slash + 1));
        if (den == 0) throw DomainError("parse_rational: zero denominator");
        return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(detail::parse_integer(text));
    const std::size_t decimals = text.size() - dot - 1;
    boost::multiprecision::cpp_int den = 1;
    for (std::size_t i = 0; i < decimals; ++i) den *= 10;
    return Rational(detail::parse_integer(text.substr(0, dot) + text.substr(dot + 1)), den);
}

inline std::string to_string(const Rational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

// ---------------------------------------------------------------------------

/// Sparse multivariate polynomial with exact coefficients.
class MultiPoly {
public:
    explicit MultiPoly(int n_vars = 0) : n_vars_(n_vars) {}

    static MultiPoly constant(int n_vars, const Rational& c) {
        MultiPoly p(n_vars);
        p.add_term(Exponents(n_vars, 0), c);
        return p;
    }

    static MultiPoly variable(int n_vars, int j) {
        Exponents e(n_vars, 0);
        e[j] = 1;
        MultiPoly p(n_vars);
        p.add_term(e, Rational(1));
        return p;
    }

    int n_vars() const { return n_vars_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponents& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    MultiPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly out(a.n_vars_);
        Exponents e(a.n_vars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.n_vars_; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.n_vars_ == b.n_vars_ && a.terms_ == b.terms_;
    }

    MultiPoly pow(int exponent) const {
        MultiPoly out = constant(n_vars_, Rational(1));
        for (int i = 0; i < exponent; ++i) out = out * *this;
        return out;
    }

    MultiPoly derivative(int j) const {
        MultiPoly out(n_vars_);
        for (const auto& [e, c] : terms_) {
            if (e[j] == 0) continue;
            Exponents d = e;
            d[j] -= 1;
            out.add_term(d, c * e[j]);
        }
        return out;
    }

    MultiPoly laplacian() const {
        MultiPoly out(n_vars_);
        for (int j = 0; j < n_vars_; ++j) out += derivative(j).derivative(j);
        return out;
    }

    /// Exact quotient by (x_j - x_k); throws if the remainder is non-zero.
    MultiPoly divide_by_difference(int j, int k) const {
        // synthetic division in x_j with root x_k: group terms by the power of x_j
        std::map<int, MultiPoly> by_power;
        int top = -1;
        for (const auto& [e, c] : terms_) {
            Exponents rest = e;
            const int d = rest[j];
            rest[j] = 0;
            auto [it, inserted] = by_power.try_emplace(d, n_vars_);
            it->second.add_term(rest, c);
            top = std::max(top, d);
        }
        MultiPoly quotient(n_vars_);
        if (top < 0) return quotient;
        const MultiPoly xk = variable(n_vars_, k);
        const MultiPoly xj = variable(n_vars_, j);
        MultiPoly carry(n_vars_); // b_d
        for (int d = top; d >= 1; --d) {
            MultiPoly coeff(n_vars_);
            if (auto it = by_power.find(d); it != by_power.end()) coeff = it->second;
            // b_{d-1} = c_d + x_k b_d
            carry = coeff + xk * carry;
            quotient += carry * xj.pow(d - 1);
        }
        MultiPoly c0(n_vars_);
        if (auto it = by_power.find(0); it != by_power.end()) c0 = it->second;
        const MultiPoly remainder = c0 + xk * carry;
        if (!remainder.is_zero()) {
            throw InternalConsistency("divide_by_difference: (x_" + std::to_string(j + 1) + " - x_" +
                                      std::to_string(k + 1) + ") does not divide the polynomial");
        }
        return quotient;
    }

    MultiPoly swap_variables(int a, int b) const {
        MultiPoly out(n_vars_);
        for (const auto& [e, c] : terms_) {
            Exponents s = e;
            std::swap(s[a], s[b]);
            out.add_term(s, c);
        }
        return out;
    }

    /// sum_j x_j d_j P
    MultiPoly euler() const {
        MultiPoly out(n_vars_);
        for (const auto& [e, c] : terms_) {
            int total = 0;
            for (int v : e) total += v;
            out.add_term(e, c * total);
        }
        return out;
    }

    /// sum_j d_j P
    MultiPoly translation_generator() const {
        MultiPoly out(n_vars_);
        for (int j = 0; j < n_vars_; ++j) out += derivative(j);
        return out;
    }

    Rational evaluate(std::span<const Rational> x) const {
        Rational acc = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < n_vars_; ++i)
                for (int p = 0; p < e[i]; ++p) t *= x[i];
            acc += t;
        }
        return acc;
    }

private:
    int n_vars_;
    std::map<Exponents, Rational> terms_;
};

// ---------------------------------------------------------------------------

/// Partitions of `total` into at most `max_parts` parts, each in [min_part, max_part],
/// in lexicographic order of the (non-increasing) part lists.
inline std::vector<Partition> partitions(int total, int max_parts, int min_part = 1, int max_part = -1) {
    std::vector<Partition> out;
    if (max_part < 0) max_part = total;
    Partition current;
    auto rec = [&](auto&& self, int remaining, int cap) -> void {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        if (static_cast<int>(current.size()) == max_parts) return;
        for (int part = std::min(cap, remaining); part >= min_part; --part) {
            current.push_back(part);
            self(self, remaining - part, part);
            current.pop_back();
        }
    };
    rec(rec, total, max_part);
    std::sort(out.begin(), out.end());
    return out;
}

/// All distinct exponent vectors obtained by permuting a padded partition.
inline std::vector<Exponents> orbit(const Partition& lambda, int n_vars) {
    Exponents e(n_vars, 0);
    std::copy(lambda.begin(), lambda.end(), e.begin());
    std::sort(e.begin(), e.end());
    std::vector<Exponents> out;
    do {
        out.push_back(e);
    } while (std::next_permutation(e.begin(), e.end()));
    return out;
}

/// Symmetric polynomial stored in the monomial-symmetric basis m_lambda(x).
struct SymPolynomial {
    int n_vars = 0;
    int degree = 0;
    std::map<Partition, Rational> coefficients;

    MultiPoly expand() const {
        MultiPoly p(n_vars);
        for (const auto& [lambda, c] : coefficients)
            for (const Exponents& e : orbit(lambda, n_vars)) p.add_term(e, c);
        return p;
    }

    /// Symmetric-basis coordinates of a symmetric expansion; permutation
    /// invariance of `p` is asserted term by term.
    static SymPolynomial from_symmetric(const MultiPoly& p, int degree) {
        SymPolynomial s{p.n_vars(), degree, {}};
        for (const auto& [e, c] : p.terms()) {
            Partition lambda;
            for (int v : e)
                if (v > 0) lambda.push_back(v);
            std::sort(lambda.begin(), lambda.end(), std::greater<>());
            auto [it, inserted] = s.coefficients.try_emplace(lambda, c);
            if (!inserted && it->second != c) {
                throw InternalConsistency("SymPolynomial::from_symmetric: polynomial is not symmetric");
            }
        }
        return s;
    }

    bool is_zero() const { return coefficients.empty(); }
};

/// Monomial-symmetric coordinates of a symmetric polynomial of the given degree,
/// indexed by partitions of `degree` with at most n parts.
inline std::vector<Rational> symmetric_coordinates(const MultiPoly& p, int degree) {
    const std::vector<Partition> index = partitions(degree, p.n_vars());
    std::vector<Rational> out;
    out.reserve(index.size());
    for (const Partition& lambda : index) {
        Exponents e(p.n_vars(), 0);
        std::copy(lambda.begin(), lambda.end(), e.begin());
        out.push_back(p.coefficient(e));
    }
    return out;
}

/// p_m(y) with y_j = x_j - mean(x).
inline MultiPoly centered_power_sum(int n_vars, int m) {
    MultiPoly out(n_vars);
    const Rational inv_n(1, n_vars);
    for (int j = 0; j < n_vars; ++j) {
        MultiPoly y(n_vars);
        for (int l = 0; l < n_vars; ++l) y += MultiPoly::variable(n_vars, l) * (l == j ? Rational(1) - inv_n : -inv_n);
        out += y.pow(m);
    }
    return out;
}

namespace detail {

/// Row echelon accumulator over the rationals.
class Echelon {
public:
    /// Reduces `v` against the stored rows; stores and returns true if independent.
    bool insert(std::vector<Rational> v) {
        for (const auto& [pivot, row] : rows_) {
            if (v[pivot] == 0) continue;
            const Rational f = v[pivot] / row[pivot];
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * row[i];
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] != 0) {
                rows_.emplace_back(i, std::move(v));
                return true;
            }
        }
        return false;
    }

private:
    std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;
};

} // namespace detail

using Matrix = std::vector<std::vector<Rational>>;

/// Basis of the nullspace of `m` (rows x cols), one vector of length cols per dimension.
inline std::vector<std::vector<Rational>> nullspace(Matrix m, std::size_t cols) {
    const std::size_t rows = m.size();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        const Rational inv = Rational(1) / m[r][c];
        for (std::size_t j = 0; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Basis of the symmetric, translation-invariant, homogeneous degree-k
/// polynomials in N variables: independent products of centred power sums
/// p_mu(y), mu a partition of k into parts >= 2, in lexicographic order of mu.
inline std::vector<SymPolynomial> ti_symmetric_basis(int n_vars, int degree, const Limits& limits = {}) {
    check_limits(n_vars, degree, limits);
    std::vector<SymPolynomial> out;
    if (degree == 0) {
        out.push_back(SymPolynomial{n_vars, 0, {{Partition{}, Rational(1)}}});
        return out;
    }
    std::map<int, MultiPoly> power_sums;
    for (int m = 2; m <= degree; ++m) power_sums.emplace(m, centered_power_sum(n_vars, m));

    detail::Echelon echelon;
    for (const Partition& mu : partitions(degree, degree, 2)) {
        MultiPoly product = MultiPoly::constant(n_vars, Rational(1));
        for (int part : mu) product = product * power_sums.at(part);
        if (echelon.insert(symmetric_coordinates(product, degree))) {
            out.push_back(SymPolynomial::from_symmetric(product, degree));
        }
    }
    return out;
}

/// L_lambda P = Laplacian P + lambda sum_{j!=k} (d_j - d_k) P / (x_j - x_k), exactly.
inline MultiPoly apply_laplace_operator(const MultiPoly& p, const Rational& lambda) {
    const int n = p.n_vars();
    MultiPoly out = p.laplacian();
    if (lambda == 0) return out;
    std::vector<MultiPoly> grad;
    grad.reserve(n);
    for (int j = 0; j < n; ++j) grad.push_back(p.derivative(j));
    MultiPoly pair_sum(n);
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            // ordered pairs (j,k) and (k,j) contribute equally
            pair_sum += (grad[j] - grad[k]).divide_by_difference(j, k);
        }
    }
    out += pair_sum * (Rational(2) * lambda);
    return out;
}

struct LaplaceSystem {
    int n_vars = 0;
    int degree = 0;
    Rational lambda;
    std::vector<SymPolynomial> basis;
    /// Rows: symmetric coordinates of degree k-2; columns: basis elements.
    Matrix constraint_matrix;
    int nullspace_dim = 0;
    /// Solutions P'_{k,q}, q = 1..nullspace_dim.
    std::vector<SymPolynomial> solutions;
};

inline LaplaceSystem solve_generalized_laplace(int n_vars, int degree, const Rational& lambda,
                                               const Limits& limits = {}) {
    LaplaceSystem sys;
    sys.n_vars = n_vars;
    sys.degree = degree;
    sys.lambda = lambda;
    sys.basis = ti_symmetric_basis(n_vars, degree, limits);
    if (sys.basis.empty()) return sys;

    const std::size_t cols = sys.basis.size();
    std::vector<MultiPoly> expanded;
    expanded.reserve(cols);
    for (const SymPolynomial& b : sys.basis) expanded.push_back(b.expand());

    std::vector<std::vector<Rational>> images;
    if (degree >= 2) {
        for (const MultiPoly& e : expanded) images.push_back(symmetric_coordinates(apply_laplace_operator(e, lambda), degree - 2));
    }
    const std::size_t rows = images.empty() ? 0 : images.front().size();
    sys.constraint_matrix.assign(rows, std::vector<Rational>(cols));
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r) sys.constraint_matrix[r][c] = images[c][r];

    for (const std::vector<Rational>& v : nullspace(sys.constraint_matrix, cols)) {
        MultiPoly p(n_vars);
        for (std::size_t c = 0; c < cols; ++c)
            if (v[c] != 0) p += expanded[c] * v[c];
        sys.solutions.push_back(SymPolynomial::from_symmetric(p, degree));
    }
    sys.nullspace_dim = static_cast<int>(sys.solutions.size());
    return sys;
}

inline int degeneracy(int n_vars, int degree, const Rational& lambda, const Limits& limits = {}) {
    return solve_generalized_laplace(n_vars, degree, lambda, limits).nullspace_dim;
}

inline const Rational& generic_lambda_a() {
    static const Rational v(7, 10);
    return v;
}
inline const Rational& generic_lambda_b() {
    static const Rational v(13, 9);
    return v;
}

struct GenericDegeneracy {
    /// Common dimension when both samples agree.
    std::optional<int> dimension;
    std::vector<std::pair<Rational, int>> samples;
};

/// g(N, k) for generic lambda: dimensions at lambda = 7/10 and 13/9.
inline GenericDegeneracy generic_degeneracy(int n_vars, int degree, const Limits& limits = {}) {
    GenericDegeneracy out;
    for (const Rational* l : {&generic_lambda_a(), &generic_lambda_b()})
        out.samples.emplace_back(*l, degeneracy(n_vars, degree, *l, limits));
    if (out.samples[0].second == out.samples[1].second) out.dimension = out.samples[0].second;
    return out;
}

// ---------------------------------------------------------------------------

/// Floating-point form of a SymPolynomial for repeated evaluation.
class NumericPolynomial {
public:
    NumericPolynomial() = default;
    explicit NumericPolynomial(const SymPolynomial& p) : n_vars_(p.n_vars), degree_(p.degree) {
        for (const auto& [lambda, c] : p.coefficients) {
            const long double value = static_cast<long double>(c);
            for (Exponents& e : orbit(lambda, p.n_vars)) terms_.emplace_back(value, std::move(e));
        }
    }

    int n_vars() const { return n_vars_; }
    int degree() const { return degree_; }

    /// P(x), evaluated at the centred coordinates (P translation invariant).
    double operator()(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != n_vars_) throw DomainError("evaluate_poly: dimension mismatch");
        long double mean = 0.0L;
        for (double v : x) mean += v;
        mean /= static_cast<long double>(x.size());
        std::vector<std::vector<long double>> powers(x.size(), std::vector<long double>(degree_ + 1, 1.0L));
        for (std::size_t j = 0; j < x.size(); ++j)
            for (int d = 1; d <= degree_; ++d) powers[j][d] = powers[j][d - 1] * (x[j] - mean);
        long double acc = 0.0L;
        for (const auto& [c, e] : terms_) {
            long double t = c;
            for (std::size_t j = 0; j < e.size(); ++j) t *= powers[j][e[j]];
            acc += t;
        }
        return static_cast<double>(acc);
    }

private:
    int n_vars_ = 0;
    int degree_ = 0;
    std::vector<std::pair<long double, Exponents>> terms_;
};

inline double evaluate_poly(const SymPolynomial& p, std::span<const double> x) {
    return NumericPolynomial(p)(x);
}

/// Exact value; `x` may be any rational point (translation invariance is not assumed).
inline Rational evaluate_exact(const SymPolynomial& p, std::span<const Rational> x) {
    if (static_cast<int>(x.size()) != p.n_vars) throw DomainError("evaluate_exact: dimension mismatch");
    return p.expand().evaluate(x);
}

} // namespace calogero::polynomials
