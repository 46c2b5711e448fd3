#include "oracles.hpp"

#include <calogero/polynomials.hpp>

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace poly = calogero::polynomials;
using poly::MultiPoly;
using poly::Rational;

namespace {

/// Delta P + 2 lambda sum_{j<k} (d_j P - d_k P)/(x_j - x_k) at a rational point,
/// with the division carried out on values.
Rational laplace_at_point(const MultiPoly& p, const Rational& lambda, const std::vector<Rational>& x) {
    const int n = p.n_vars();
    Rational acc = p.laplacian().evaluate(x);
    std::vector<Rational> grad;
    for (int j = 0; j < n; ++j) grad.push_back(p.derivative(j).evaluate(x));
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) acc += 2 * lambda * (grad[j] - grad[k]) / (x[j] - x[k]);
    return acc;
}

std::vector<Rational> random_point(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-40, 40);
    std::vector<Rational> x;
    while (static_cast<int>(x.size()) < n) {
        Rational v(num(rng), 7);
        if (std::find(x.begin(), x.end(), v) == x.end()) x.push_back(v);
    }
    return x;
}

} // namespace

TEST(Rationals, ParseAndPrint) {
    EXPECT_EQ(poly::parse_rational("7/10"), Rational(7, 10));
    EXPECT_EQ(poly::parse_rational("-3"), Rational(-3));
    EXPECT_EQ(poly::parse_rational("0.25"), Rational(1, 4));
    EXPECT_EQ(poly::to_string(Rational(-4, 6)), "-2/3");
    EXPECT_THROW(poly::parse_rational("1/0"), calogero::DomainError);
    EXPECT_THROW(poly::parse_rational("abc"), calogero::DomainError);
}

TEST(MultiPoly, Arithmetic) {
    const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
    const MultiPoly sq = (x - y).pow(2);
    EXPECT_EQ(sq.coefficient({1, 1}), Rational(-2));
    EXPECT_EQ(sq.divide_by_difference(0, 1), x - y);
    EXPECT_EQ(sq.swap_variables(0, 1), sq);
    EXPECT_EQ(sq.laplacian(), MultiPoly::constant(2, 4));
    EXPECT_TRUE(sq.translation_generator().is_zero());
    EXPECT_EQ(sq.euler(), sq * Rational(2));
}

TEST(Degeneracy, LowDegrees) {
    for (int n = 2; n <= 6; ++n) {
        for (const Rational* l : {&poly::generic_lambda_a(), &poly::generic_lambda_b()}) {
            EXPECT_EQ(poly::degeneracy(n, 0, *l), 1) << n;
            EXPECT_EQ(poly::degeneracy(n, 1, *l), 0) << n;
        }
    }
}

TEST(Degeneracy, SpecExamples) {
    EXPECT_EQ(poly::degeneracy(2, 2, Rational(7, 10)), 0);
    EXPECT_EQ(poly::degeneracy(3, 2, Rational(7, 10)), 0);
    EXPECT_EQ(poly::generic_degeneracy(3, 3).dimension, 1);
}

TEST(Degeneracy, MatchesPartitionCount) {
    for (int n = 2; n <= 5; ++n)
        for (int k = 0; k <= 6; ++k) {
            const auto g = poly::generic_degeneracy(n, k);
            ASSERT_TRUE(g.dimension.has_value()) << n << " " << k;
            EXPECT_EQ(*g.dimension, oracle::generic_degeneracy(n, k)) << n << " " << k;
        }
}

TEST(Degeneracy, DegreeThreeIsCenteredPowerSum) {
    for (const Rational* l : {&poly::generic_lambda_a(), &poly::generic_lambda_b()}) {
        const auto sys = poly::solve_generalized_laplace(3, 3, *l);
        ASSERT_EQ(sys.nullspace_dim, 1);
        const MultiPoly sol = sys.solutions[0].expand();
        const MultiPoly p3 = poly::centered_power_sum(3, 3);
        const Rational scale = p3.coefficient({3, 0, 0}) / sol.coefficient({3, 0, 0});
        EXPECT_EQ(sol * scale, p3);
    }
}

TEST(Solutions, SatisfyTheEquationExactly) {
    std::mt19937 rng(5);
    for (int n = 2; n <= 4; ++n)
        for (int k = 0; k <= 6; ++k)
            for (const Rational& l : {poly::generic_lambda_a(), poly::generic_lambda_b(), Rational(1), Rational(5, 2)}) {
                const auto sys = poly::solve_generalized_laplace(n, k, l);
                for (const auto& s : sys.solutions) {
                    const MultiPoly p = s.expand();
                    EXPECT_EQ(p.euler(), p * Rational(k));
                    EXPECT_TRUE(p.translation_generator().is_zero());
                    for (int a = 0; a + 1 < n; ++a) EXPECT_EQ(p.swap_variables(a, a + 1), p);
                    for (int t = 0; t < 3; ++t) EXPECT_EQ(laplace_at_point(p, l, random_point(n, rng)), 0);
                }
            }
}

TEST(Solutions, EvaluateExamples) {
    const auto sys = poly::solve_generalized_laplace(3, 3, poly::generic_lambda_a());
    const auto& p = sys.solutions.at(0);
    const double a[] = {2.0, 1.0, 0.0};
    const double b[] = {3.0, 0.0, 0.0};
    EXPECT_NEAR(poly::evaluate_poly(p, a), 0.0, 1e-14);
    EXPECT_NEAR(poly::evaluate_poly(p, b), 6.0, 1e-13);
    const Rational exact[] = {3, 0, 0};
    EXPECT_EQ(poly::evaluate_exact(p, exact), Rational(6));
}

TEST(Solutions, NumericMatchesExact) {
    std::mt19937 rng(9);
    const auto sys = poly::solve_generalized_laplace(4, 6, Rational(7, 10));
    for (const auto& s : sys.solutions)
        for (int t = 0; t < 10; ++t) {
            const auto x = random_point(4, rng);
            std::vector<double> xd;
            for (const auto& v : x) xd.push_back(static_cast<double>(v));
            const double exact = static_cast<double>(poly::evaluate_exact(s, x));
            EXPECT_NEAR(poly::evaluate_poly(s, xd), exact, 1e-12 * std::max(1.0, std::fabs(exact)));
        }
}

TEST(Limits, Enforced) {
    EXPECT_THROW(poly::degeneracy(7, 2, Rational(1)), calogero::ResourceLimit);
    EXPECT_THROW(poly::degeneracy(3, 9, Rational(1)), calogero::ResourceLimit);
}
