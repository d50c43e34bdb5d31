#include <gtest/gtest.h>

#include <random>

#include "noethops/parse.hpp"
#include "noethops/weyl.hpp"

using namespace noethops;

namespace {

Polynomial P(const RingPtr& r, const std::string& s) { return parse_poly(s, r); }

Polynomial random_poly(const RingPtr& r, std::mt19937& rng, int max_deg, int max_terms) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> coef(-4, 4);
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

DiffOperator random_op(const RingPtr& r, const std::vector<int>& basis_vars,
                       std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 3);
    std::uniform_int_distribution<int> dpow(0, 2);
    std::vector<DiffTerm> terms;
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        Monomial dexp(r->n(), 0);
        for (size_t v = 0; v < r->n(); ++v) {
            if (std::find(basis_vars.begin(), basis_vars.end(), static_cast<int>(v)) !=
                basis_vars.end())
                continue;
            dexp[v] = dpow(rng);
        }
        Polynomial coef = random_poly(r, rng, 2, 2);
        if (coef.is_zero()) coef = Polynomial::constant(r, 1);
        terms.push_back({coef, dexp});
    }
    return make_operator(r, basis_vars, terms);
}

}  // namespace

TEST(OperatorParse, ExamplesAndFormatRoundtrip) {
    RingPtr r = make_ring({"x", "y", "z"});
    DiffOperator op = parse_operator("x*dy + dz", r, {0});
    EXPECT_EQ(operator_order(op), 1);
    EXPECT_TRUE(apply_operator(op, P(r, "y - x*z")).is_zero());
    EXPECT_EQ(format_operator(op), "x*dy + dz");

    DiffOperator one = parse_operator("1", r, {0});
    EXPECT_EQ(operator_order(one), 0);
    EXPECT_EQ(format_operator(one), "1");
    EXPECT_EQ(poly_cmp(apply_operator(one, P(r, "y - x*z")), P(r, "y - x*z")), 0);

    DiffOperator op3 = parse_operator("dx*dy*dz + dx^2*dy + dy^2*dz + dz^2*dx", r, {});
    EXPECT_EQ(operator_order(op3), 3);

    // multi-term coefficients are parenthesized, unit coefficients folded
    EXPECT_EQ(format_operator(parse_operator("(x + 1)*dy - dz", r, {})), "(x + 1)*dy - dz");
    EXPECT_EQ(format_operator(identity_operator(r, {0, 1})), "1");

    // parse-format roundtrip on random operators
    std::mt19937 rng(863);
    for (int it = 0; it < 40; ++it) {
        DiffOperator a = random_op(r, {0}, rng);
        DiffOperator back = parse_operator(format_operator(a), r, {0});
        EXPECT_TRUE(op_add(back, op_scale(a, -1)).is_zero());
    }
}

TEST(OperatorParse, RejectsBadInput) {
    RingPtr r = make_ring({"x", "y", "z"});
    // a partial on a basis variable is not in the algebra
    EXPECT_THROW(parse_operator("dx", r, {0}), ParseError);
    EXPECT_THROW(parse_operator("dw", r, {}), ParseError);
    EXPECT_THROW(parse_operator("dx +", r, {}), ParseError);
    // the zero operator has no order
    EXPECT_THROW(operator_order(parse_operator("y - y", r, {})), EngineError);
    // building a term that differentiates a basis variable is an error
    EXPECT_THROW(make_operator(r, {0}, {{Polynomial::constant(r, 1), Monomial{1, 0, 0}}}),
                 EngineError);
}

TEST(OperatorParse, VariableNamedLikeAPartialWins) {
    // with a ring variable literally named "dy", the token reads as that
    // variable and the partial on y has no textual form
    RingPtr r = make_ring({"y", "dy"});
    DiffOperator op = parse_operator("dy", r, {});
    ASSERT_EQ(op.terms.size(), 1u);
    EXPECT_EQ(poly_cmp(op.terms[0].coef, P(r, "dy")), 0);
    EXPECT_EQ(op.terms[0].dexp, (Monomial{0, 0}));
}

TEST(Apply, WorkedDerivatives) {
    RingPtr r = make_ring({"x", "y", "z"});
    EXPECT_EQ(poly_cmp(apply_operator(parse_operator("dx*dy", r, {}), P(r, "x^2*y")),
                       P(r, "2*x")),
              0);
    // dx^k x^n = n!/(n-k)! x^(n-k)
    EXPECT_EQ(poly_cmp(apply_operator(parse_operator("dx^3", r, {}), P(r, "x^5")),
                       P(r, "60*x^2")),
              0);
    EXPECT_TRUE(apply_operator(parse_operator("dx^3", r, {}), P(r, "x^2*y^4")).is_zero());
    EXPECT_EQ(poly_cmp(apply_operator(parse_operator("y*dy^2 + 2*dy", r, {}), P(r, "y^3")),
                       P(r, "6*y^2 + 6*y^2")),
              0);
}

TEST(Apply, LinearityOverTheBasisSubring) {
    RingPtr r = make_ring({"x", "y", "z"});
    std::vector<int> basis = {0};
    std::mt19937 rng(977);
    for (int it = 0; it < 30; ++it) {
        DiffOperator op = random_op(r, basis, rng);
        Polynomial f = random_poly(r, rng, 3, 3);
        Polynomial g = random_poly(r, rng, 3, 3);
        // additivity and rational scaling
        EXPECT_EQ(poly_cmp(apply_operator(op, poly_add(f, g)),
                           poly_add(apply_operator(op, f), apply_operator(op, g))),
                  0);
        EXPECT_EQ(poly_cmp(apply_operator(op, poly_scale(f, mpq_class(3, 2))),
                           poly_scale(apply_operator(op, f), mpq_class(3, 2))),
                  0);
        // multipliers from QQ[S] pass through the operator untouched
        std::uniform_int_distribution<int> e(0, 3);
        Polynomial s = P(r, "x^" + std::to_string(e(rng)));
        EXPECT_EQ(poly_cmp(apply_operator(op, poly_mul(s, f)),
                           poly_mul(s, apply_operator(op, f))),
                  0);
    }
}

TEST(Multiply, LeibnizRuleOnEitherSide) {
    RingPtr r = make_ring({"x", "y", "z"});
    // right-multiplying dy^2 by y picks up the commutator 2*dy
    DiffOperator dy2 = parse_operator("dy^2", r, {});
    EXPECT_EQ(format_operator(multiply_by_variable(dy2, 1, MulSide::right)),
              "y*dy^2 + 2*dy");
    EXPECT_EQ(format_operator(multiply_by_variable(parse_operator("x*dy", r, {}), 2,
                                                   MulSide::left)),
              "x*z*dy");
    std::mt19937 rng(1013);
    for (int it = 0; it < 25; ++it) {
        DiffOperator op = random_op(r, {}, rng);
        Polynomial f = random_poly(r, rng, 3, 3);
        for (int v = 0; v < 3; ++v) {
            Polynomial xv = Polynomial::term(r, Monomial{v == 0, v == 1, v == 2}, 1);
            // (op * x_v) f = op(x_v f) and (x_v * op) f = x_v op(f)
            EXPECT_EQ(poly_cmp(apply_operator(multiply_by_variable(op, v, MulSide::right), f),
                               apply_operator(op, poly_mul(xv, f))),
                      0);
            EXPECT_EQ(poly_cmp(apply_operator(multiply_by_variable(op, v, MulSide::left), f),
                               poly_mul(xv, apply_operator(op, f))),
                      0);
        }
    }
}

TEST(OpArithmetic, AddScaleAndAlgebraChecks) {
    RingPtr r = make_ring({"x", "y", "z"});
    DiffOperator a = parse_operator("x*dy + dz", r, {0});
    DiffOperator b = parse_operator("-x*dy + dz", r, {0});
    EXPECT_EQ(format_operator(op_add(a, b)), "2*dz");
    EXPECT_TRUE(op_add(a, op_scale(a, -1)).is_zero());
    EXPECT_EQ(format_operator(op_scale(a, 2)), "2*x*dy + 2*dz");
    DiffOperator other = parse_operator("dz", r, {0, 1});
    EXPECT_THROW(op_add(a, other), EngineError);
}

TEST(OperatorOrder, MaximalPartialDegree) {
    RingPtr r = make_ring({"x", "y", "z"});
    EXPECT_EQ(operator_order(parse_operator("x^5*dy", r, {})), 1);
    EXPECT_EQ(operator_order(parse_operator("dy^2*dz + dy", r, {})), 3);
    EXPECT_EQ(operator_order(parse_operator("x^9 + dz", r, {})), 1);
    EXPECT_EQ(operator_order(parse_operator("x^9", r, {})), 0);
    // applying an order-k operator drops total degree by at most k
    std::mt19937 rng(1103);
    for (int it = 0; it < 25; ++it) {
        DiffOperator op = random_op(r, {}, rng);
        Polynomial f = random_poly(r, rng, 4, 3);
        Polynomial g = apply_operator(op, f);
        if (g.is_zero() || f.is_zero()) continue;
        int coef_deg = 0;
        for (const auto& t : op.terms) coef_deg = std::max(coef_deg, t.coef.degree());
        EXPECT_LE(g.degree(), f.degree() + coef_deg);
    }
}

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    return RUN_ALL_TESTS();
}
