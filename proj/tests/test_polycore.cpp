#include <gtest/gtest.h>

#include <random>

#include "noethops/multigcd.hpp"
#include "noethops/parse.hpp"
#include "noethops/rational_function.hpp"

using namespace noethops;

namespace {

Polynomial P(const RingPtr& r, const std::string& s) { return parse_poly(s, r); }

Polynomial random_poly(const RingPtr& r, std::mt19937& rng, int max_deg, int max_terms) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> deg(0, max_deg);
    Polynomial out = Polynomial::zero(r);
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        Monomial m(r->n(), 0);
        int budget = deg(rng);
        for (size_t v = 0; v < r->n() && budget > 0; ++v) {
            std::uniform_int_distribution<int> e(0, budget);
            m[v] = e(rng);
            budget -= m[v];
        }
        out = poly_add(out, Polynomial::term(r, m, coef(rng)));
    }
    return out;
}

Monomial random_monomial(size_t n, std::mt19937& rng, int max_entry) {
    std::uniform_int_distribution<int> e(0, max_entry);
    Monomial m(n, 0);
    for (size_t v = 0; v < n; ++v) m[v] = e(rng);
    return m;
}

}  // namespace

TEST(Ring, Construction) {
    RingPtr r = make_ring({"x", "y", "z"});
    EXPECT_EQ(r->n(), 3u);
    EXPECT_EQ(r->vars[1], "y");
    EXPECT_THROW(make_ring({}), EngineError);
    EXPECT_THROW(make_ring({"x", "x"}), EngineError);
    EXPECT_THROW(make_ring({"x", ""}), EngineError);
}

TEST(Ring, GrevlexExamples) {
    MonomialOrder o = MonomialOrder::grevlex_order();
    // degree dominates
    EXPECT_LT(cmp_monomials(o, {1, 0, 0}, {1, 1, 0}), 0);
    // same degree: smaller exponent in the LAST differing variable wins
    EXPECT_GT(cmp_monomials(o, {1, 1, 0}, {0, 2, 0}), 0);
    EXPECT_LT(cmp_monomials(o, {0, 0, 2}, {1, 1, 0}), 0);
    EXPECT_EQ(cmp_monomials(o, {2, 1, 3}, {2, 1, 3}), 0);
}

TEST(Ring, LexExamples) {
    MonomialOrder o = MonomialOrder::lex_order();
    EXPECT_GT(cmp_monomials(o, {1, 0, 0}, {0, 5, 5}), 0);
    EXPECT_LT(cmp_monomials(o, {1, 0, 1}, {1, 1, 0}), 0);
}

TEST(Ring, BlockOrderSeparatesDependents) {
    // dependent variables {1} dominate; ties fall back per block
    MonomialOrder o = MonomialOrder::block_order({1});
    EXPECT_GT(cmp_monomials(o, {0, 1, 0}, {5, 0, 5}), 0);
    EXPECT_LT(cmp_monomials(o, {1, 0, 0}, {0, 0, 2}), 0);
}

TEST(Ring, OrderAxiomsOnRandomTriples) {
    std::mt19937 rng(440);
    std::vector<MonomialOrder> orders = {MonomialOrder::grevlex_order(),
                                         MonomialOrder::lex_order(),
                                         MonomialOrder::block_order({0, 2})};
    for (const auto& o : orders) {
        for (int it = 0; it < 300; ++it) {
            Monomial a = random_monomial(4, rng, 4);
            Monomial b = random_monomial(4, rng, 4);
            Monomial c = random_monomial(4, rng, 4);
            // antisymmetry and totality
            EXPECT_EQ(cmp_monomials(o, a, b), -cmp_monomials(o, b, a));
            EXPECT_EQ(cmp_monomials(o, a, b) == 0, a == b);
            // transitivity
            if (cmp_monomials(o, a, b) <= 0 && cmp_monomials(o, b, c) <= 0)
                EXPECT_LE(cmp_monomials(o, a, c), 0);
            // multiplicativity: adding c preserves the comparison
            Monomial ac = a, bc = b;
            for (size_t v = 0; v < 4; ++v) {
                ac[v] += c[v];
                bc[v] += c[v];
            }
            EXPECT_EQ(cmp_monomials(o, a, b) < 0, cmp_monomials(o, ac, bc) < 0);
        }
    }
}

TEST(Polynomial, ArithmeticExamples) {
    RingPtr r = make_ring({"x", "y"});
    EXPECT_EQ(poly_cmp(poly_add(P(r, "x + y"), P(r, "x - y")), P(r, "2*x")), 0);
    EXPECT_EQ(poly_cmp(poly_mul(P(r, "x + y"), P(r, "x - y")), P(r, "x^2 - y^2")), 0);
    EXPECT_EQ(poly_cmp(poly_pow(P(r, "x + 1"), 3), P(r, "x^3 + 3*x^2 + 3*x + 1")), 0);
    EXPECT_TRUE(poly_sub(P(r, "x*y"), P(r, "x*y")).is_zero());
    EXPECT_EQ(poly_cmp(poly_derivative(P(r, "x^3*y - 2*y"), 0), P(r, "3*x^2*y")), 0);
    EXPECT_EQ(poly_cmp(poly_derivative(P(r, "x^3"), 1), P(r, "0")), 0);
    EXPECT_EQ(poly_cmp(poly_term_mul(P(r, "x + y"), {1, 1}, 2), P(r, "2*x^2*y + 2*x*y^2")), 0);
    EXPECT_TRUE(poly_term_mul(P(r, "x + y"), {1, 1}, 0).is_zero());
}

TEST(Polynomial, RingLawsOnRandomInputs) {
    RingPtr r = make_ring({"x", "y", "z"});
    std::mt19937 rng(7);
    for (int it = 0; it < 120; ++it) {
        Polynomial a = random_poly(r, rng, 4, 4);
        Polynomial b = random_poly(r, rng, 4, 4);
        Polynomial c = random_poly(r, rng, 4, 4);
        EXPECT_EQ(poly_cmp(poly_add(poly_add(a, b), c), poly_add(a, poly_add(b, c))), 0);
        EXPECT_EQ(poly_cmp(poly_mul(a, poly_add(b, c)),
                           poly_add(poly_mul(a, b), poly_mul(a, c))),
                  0);
        EXPECT_EQ(poly_cmp(poly_mul(a, b), poly_mul(b, a)), 0);
    }
}

TEST(Parse, FormatRoundtripOnRandomInputs) {
    RingPtr r = make_ring({"x", "y", "z"});
    std::mt19937 rng(11);
    for (int it = 0; it < 200; ++it) {
        Polynomial p = random_poly(r, rng, 5, 6);
        EXPECT_EQ(poly_cmp(parse_poly(format_poly(p), r), p), 0);
    }
}

TEST(Parse, AcceptsStandardSyntax) {
    RingPtr r = make_ring({"x", "y"});
    EXPECT_EQ(poly_cmp(P(r, "-x^2 + 3/2*y"), poly_add(poly_scale(P(r, "x^2"), -1),
                                                      poly_scale(P(r, "y"), mpq_class(3, 2)))),
              0);
    EXPECT_EQ(poly_cmp(P(r, "(x + y)^2"), P(r, "x^2 + 2*x*y + y^2")), 0);
    EXPECT_TRUE(P(r, "0").is_zero());
    EXPECT_EQ(format_poly(P(r, "0")), "0");
}

TEST(Parse, RejectsMalformedInput) {
    RingPtr r = make_ring({"x", "y"});
    EXPECT_THROW(parse_poly("w + 1", r), ParseError);
    EXPECT_THROW(parse_poly("x +", r), ParseError);
    EXPECT_THROW(parse_poly("x ** y", r), ParseError);
    EXPECT_THROW(parse_poly("2x", r), ParseError);
    EXPECT_THROW(parse_poly("(x", r), ParseError);
    EXPECT_THROW(parse_poly("", r), ParseError);
}

TEST(MultiGcd, Examples) {
    RingPtr r = make_ring({"x", "y"});
    EXPECT_EQ(poly_cmp(poly_gcd(P(r, "x^2 - y^2"), P(r, "x^2 + 2*x*y + y^2")), P(r, "x + y")), 0);
    EXPECT_EQ(poly_cmp(poly_gcd_many({P(r, "2*x^2*y"), P(r, "4*x*y^2"), P(r, "6*x*y")}, r),
                       P(r, "x*y")),
              0);
    EXPECT_EQ(poly_cmp(poly_lcm(P(r, "x*y"), P(r, "y^2")), P(r, "x*y^2")), 0);
    EXPECT_EQ(poly_cmp(poly_exact_div(P(r, "x^2 - y^2"), P(r, "x - y")), P(r, "x + y")), 0);
    EXPECT_EQ(poly_cmp(poly_primitive_part(P(r, "4*x^2 + 6*y")), P(r, "2*x^2 + 3*y")), 0);
}

TEST(MultiGcd, GcdDividesAndIsMaximalOnRandomInputs) {
    RingPtr r = make_ring({"x", "y"});
    std::mt19937 rng(23);
    for (int it = 0; it < 60; ++it) {
        Polynomial a = random_poly(r, rng, 3, 3);
        Polynomial b = random_poly(r, rng, 3, 3);
        Polynomial m = random_poly(r, rng, 2, 2);
        if (a.is_zero() || b.is_zero() || m.is_zero()) continue;
        Polynomial g = poly_gcd(poly_mul(a, m), poly_mul(b, m));
        // m divides the gcd, and the gcd divides both products
        EXPECT_NO_THROW(poly_exact_div(g, m));
        EXPECT_NO_THROW(poly_exact_div(poly_mul(a, m), g));
        EXPECT_NO_THROW(poly_exact_div(poly_mul(b, m), g));
    }
}

TEST(RationalFunction, ArithmeticMatchesCrossMultiplication) {
    RingPtr r = make_ring({"x", "y"});
    std::mt19937 rng(31);
    for (int it = 0; it < 80; ++it) {
        Polynomial an = random_poly(r, rng, 3, 3), ad = random_poly(r, rng, 2, 2);
        Polynomial bn = random_poly(r, rng, 3, 3), bd = random_poly(r, rng, 2, 2);
        if (ad.is_zero() || bd.is_zero()) continue;
        RationalFunction a(an, ad), b(bn, bd);
        RationalFunction s = rf_add(a, b).reduced();
        // (an*bd + bn*ad) / (ad*bd) cross-multiplied against the reduced sum
        Polynomial lhs = poly_mul(s.num(), poly_mul(ad, bd));
        Polynomial rhs =
            poly_mul(poly_add(poly_mul(an, bd), poly_mul(bn, ad)), s.den());
        EXPECT_EQ(poly_cmp(lhs, rhs), 0);

        RationalFunction p = rf_mul(a, b).reduced();
        EXPECT_EQ(poly_cmp(poly_mul(p.num(), poly_mul(ad, bd)),
                           poly_mul(poly_mul(an, bn), p.den())),
                  0);
    }
}

TEST(RationalFunction, InverseAndEquality) {
    RingPtr r = make_ring({"x", "y"});
    RationalFunction a(P(r, "x^2 - y^2"), P(r, "x + y"));
    RationalFunction b(P(r, "x - y"), P(r, "1"));
    EXPECT_TRUE(a == b);
    RationalFunction inv = rf_invert(a);
    EXPECT_TRUE(rf_mul(a, inv).is_one());
    EXPECT_THROW(rf_invert(RationalFunction::scalar(r, 0)), EngineError);
    EXPECT_THROW(RationalFunction(P(r, "x"), P(r, "0")), EngineError);
}

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    return RUN_ALL_TESTS();
}
