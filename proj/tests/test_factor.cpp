#include <gtest/gtest.h>

#include <random>

#include "noethops/factor.hpp"
#include "noethops/parse.hpp"

using namespace noethops;

namespace {

Polynomial P(const RingPtr& r, const std::string& s) { return parse_poly(s, r); }

// (factor, multiplicity) pairs as canonical strings, for multiset comparison
std::vector<std::pair<std::string, int>> factor_strings(const UnivariateFactors& f) {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& [g, m] : f.factors) out.push_back({format_poly(g), m});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<std::string, int>> sorted(std::vector<std::pair<std::string, int>> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// factors come back with a positive leading coefficient; the sign moves
// into the unit
std::string canonical(const Polynomial& g) {
    return format_poly(g.leading_coefficient() > 0 ? g : poly_scale(g, -1));
}

Polynomial reassemble(const UnivariateFactors& f, const RingPtr& r) {
    Polynomial prod = Polynomial::constant(r, 1);
    for (const auto& [g, m] : f.factors) prod = poly_mul(prod, poly_pow(g, m));
    // the unit is a rational function in the parameters; clear it in
    RationalFunction u = f.unit;
    Polynomial num = poly_mul(prod, u.num());
    return poly_exact_div(num, u.den());
}

}  // namespace

TEST(FactorRational, Examples) {
    RingPtr r = make_ring({"x", "y", "z"});
    UnivariateFactors f1 = factor_univariate_rational(P(r, "x^2 - 1"));
    EXPECT_EQ(factor_strings(f1),
              sorted({{"x - 1", 1}, {"x + 1", 1}}));
    EXPECT_TRUE(f1.unit.is_one());

    UnivariateFactors f2 = factor_univariate_rational(P(r, "x^3 - 2"));
    ASSERT_EQ(f2.factors.size(), 1u);
    EXPECT_EQ(f2.factors[0].second, 1);
    EXPECT_EQ(format_poly(f2.factors[0].first), "x^3 - 2");

    UnivariateFactors f3 = factor_univariate_rational(P(r, "6*x^4 - 6"));
    EXPECT_EQ(factor_strings(f3), sorted({
                                      {"x - 1", 1}, {"x + 1", 1}, {"x^2 + 1", 1}}));
    EXPECT_TRUE(f3.unit == RationalFunction::scalar(r, 6));

    UnivariateFactors f4 = factor_univariate_rational(P(r, "x^6 - 2*x^5 + x^4"));
    EXPECT_EQ(factor_strings(f4),
              sorted({{"x - 1", 2}, {"x", 4}}));

    // Sophie Germain style splittings with no rational roots
    UnivariateFactors f5 = factor_univariate_rational(P(r, "y^4 + 4"));
    EXPECT_EQ(factor_strings(f5), sorted({
                                      {"y^2 - 2*y + 2", 1}, {"y^2 + 2*y + 2", 1}}));
    UnivariateFactors f6 = factor_univariate_rational(P(r, "y^4 + y^2 + 1"));
    EXPECT_EQ(factor_strings(f6), sorted({
                                      {"y^2 - y + 1", 1}, {"y^2 + y + 1", 1}}));

    // constants carry everything in the unit
    UnivariateFactors fc = factor_univariate_rational(P(r, "5"));
    EXPECT_TRUE(fc.factors.empty());
    EXPECT_TRUE(fc.unit == RationalFunction::scalar(r, 5));

    UnivariateFactors fq = factor_univariate_rational(P(r, "1/2*x^2 - 1/2"));
    EXPECT_EQ(factor_strings(fq),
              sorted({{"x - 1", 1}, {"x + 1", 1}}));
    EXPECT_TRUE(fq.unit == RationalFunction::scalar(r, mpq_class(1, 2)));

    EXPECT_THROW(factor_univariate_rational(P(r, "0")), EngineError);
    EXPECT_THROW(factor_univariate_rational(P(r, "x*y")), EngineError);
}

TEST(FactorRational, RoundtripOnRandomProducts) {
    RingPtr r = make_ring({"x"});
    std::vector<Polynomial> pool = {P(r, "x"), P(r, "x - 1"), P(r, "x + 2"),
                                    P(r, "x^2 + 1"), P(r, "x^2 - 2"), P(r, "x^2 + x + 1")};
    std::mt19937 rng(137);
    std::uniform_int_distribution<int> expo(0, 2);
    std::uniform_int_distribution<int> scale(1, 6);
    for (int it = 0; it < 25; ++it) {
        Polynomial f = Polynomial::constant(r, scale(rng));
        std::vector<std::pair<std::string, int>> expected;
        for (const auto& g : pool) {
            int e = expo(rng);
            if (e == 0) continue;
            f = poly_mul(f, poly_pow(g, e));
            expected.push_back({canonical(g), e});
        }
        std::sort(expected.begin(), expected.end());
        UnivariateFactors fac = factor_univariate_rational(f);
        EXPECT_EQ(factor_strings(fac), expected);
        EXPECT_EQ(poly_cmp(reassemble(fac, r), f), 0);
    }
}

TEST(FactorParametric, Examples) {
    RingPtr r = make_ring({"x", "y", "z"});
    // y^2 - z^2 splits over QQ(z)
    UnivariateFactors p1 = factor_univariate(P(r, "y^2 - z^2"), 1, {2}, 0);
    EXPECT_EQ(factor_strings(p1),
              sorted({{"y - z", 1}, {"y + z", 1}}));

    // y^2 - y z + z^2 stays irreducible over QQ(z)
    UnivariateFactors p2 = factor_univariate(P(r, "y^2 - y*z + z^2"), 1, {2}, 0);
    ASSERT_EQ(p2.factors.size(), 1u);
    EXPECT_EQ(p2.factors[0].second, 1);

    // two parameters: x^2 y^2 - z^2 over QQ(x, z)
    UnivariateFactors p3 = factor_univariate(P(r, "x^2*y^2 - z^2"), 1, {0, 2}, 0);
    EXPECT_EQ(factor_strings(p3),
              sorted({{"x*y - z", 1}, {"x*y + z", 1}}));

    // squarefree split with a repeated part
    UnivariateFactors p4 = factor_univariate(P(r, "y^3 - y^2*z - y*z^2 + z^3"), 1, {2}, 0);
    EXPECT_EQ(factor_strings(p4),
              sorted({{"y - z", 2}, {"y + z", 1}}));

    // a polynomial constant in the main variable is pure unit
    UnivariateFactors p5 = factor_univariate(P(r, "z^2 + 1"), 1, {2}, 0);
    EXPECT_TRUE(p5.factors.empty());
    EXPECT_TRUE(p5.unit == RationalFunction::from_poly(P(r, "z^2 + 1")));
}

TEST(FactorParametric, BudgetAndUsageErrors) {
    RingPtr r4 = make_ring({"w", "x", "y", "z"});
    RingPtr r = make_ring({"x", "y", "z"});
    // three live parameters exceed the parameter budget
    EXPECT_THROW(factor_univariate(P(r4, "w*x*z*y^2 - 1"), 3, {0, 1, 2}, 0), EngineError);
    // the total-degree budget applies once parameters are present
    EXPECT_THROW(factor_univariate(P(r, "y^13 - z^13"), 1, {2}, 0), EngineError);
    // a variable outside the declared parameter set is an error
    EXPECT_THROW(factor_univariate(P(r, "y^2 - x"), 1, {2}, 0), EngineError);
    EXPECT_THROW(factor_univariate(P(r, "0"), 1, {2}, 0), EngineError);
}

TEST(FactorParametric, SeedInvarianceAndRoundtrip) {
    RingPtr r = make_ring({"x", "y", "z"});
    std::vector<Polynomial> pool = {P(r, "y - z"), P(r, "y + z"), P(r, "y + 1"),
                                    P(r, "y^2 + z^2"), P(r, "y - z^2")};
    std::mt19937 rng(241);
    std::uniform_int_distribution<int> expo(0, 2);
    for (int it = 0; it < 15; ++it) {
        Polynomial f = Polynomial::constant(r, 1);
        std::vector<std::pair<std::string, int>> expected;
        int total = 0;
        for (const auto& g : pool) {
            int e = expo(rng);
            if (e == 0 || total + e * g.degree_in(1) > 8) continue;
            f = poly_mul(f, poly_pow(g, e));
            expected.push_back({canonical(g), e});
            total += e * g.degree_in(1);
        }
        if (expected.empty()) continue;
        std::sort(expected.begin(), expected.end());
        UnivariateFactors fac = factor_univariate(f, 1, {2}, 0);
        EXPECT_EQ(factor_strings(fac), expected);
        EXPECT_EQ(poly_cmp(reassemble(fac, r), f), 0);
        // the canonical result does not depend on the evaluation seed
        UnivariateFactors fac2 = factor_univariate(f, 1, {2}, 7);
        EXPECT_EQ(factor_strings(fac2), expected);
    }
}

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    return RUN_ALL_TESTS();
}
