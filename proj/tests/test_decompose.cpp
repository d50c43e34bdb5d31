#include <gtest/gtest.h>

#include <random>

#include "noethops/decompose.hpp"
#include "noethops/parse.hpp"

using namespace noethops;

namespace {

Polynomial P(const RingPtr& r, const std::string& s) { return parse_poly(s, r); }

Ideal I(const RingPtr& r, const std::vector<std::string>& ss) {
    std::vector<Polynomial> gens;
    for (const auto& s : ss) gens.push_back(parse_poly(s, r));
    return Ideal(r, gens);
}

bool has_primary(const std::vector<PrimaryComponent>& cs, const Ideal& q) {
    for (const auto& c : cs)
        if (ideal_equal(c.primary, q)) return true;
    return false;
}

bool has_prime(const std::vector<PrimaryComponent>& cs, const Ideal& p) {
    for (const auto& c : cs)
        if (ideal_equal(c.prime, p)) return true;
    return false;
}

Ideal intersect_components(const std::vector<PrimaryComponent>& cs, const RingPtr& r) {
    Ideal out = unit_ideal(r);
    for (const auto& c : cs) out = intersect(out, c.primary);
    return out;
}

// strict containment between listed primes must point at an earlier index
void expect_ordering_contract(const std::vector<PrimaryComponent>& cs) {
    for (size_t i = 0; i < cs.size(); ++i)
        for (size_t j = i + 1; j < cs.size(); ++j)
            EXPECT_FALSE(ideal_contains(cs[i].prime, cs[j].prime) &&
                         !ideal_equal(cs[i].prime, cs[j].prime));
}

Ideal random_monomial_ideal(const RingPtr& r, std::mt19937& rng, int ngens, int max_deg) {
    std::uniform_int_distribution<int> e(0, max_deg);
    std::vector<Polynomial> gens;
    for (int k = 0; k < ngens; ++k) {
        Monomial m(r->n(), 0);
        for (size_t v = 0; v < r->n(); ++v) m[v] = e(rng);
        gens.push_back(Polynomial::term(r, m, 1));
    }
    return Ideal(r, gens);
}

}  // namespace

TEST(MonomialEngine, SmallExamples) {
    RingPtr r = make_ring({"x", "y"});
    auto [primes, comps] = monomial_ass_and_decompose(I(r, {"x*y"}));
    ASSERT_EQ(primes.size(), 2u);
    EXPECT_TRUE(ideal_equal(primes[0], I(r, {"x"})) || ideal_equal(primes[1], I(r, {"x"})));

    DecompositionOutput d = monomial_decompose(I(r, {"x^2", "x*y"}));
    EXPECT_EQ(d.source, DecompositionSource::monomial_engine);
    EXPECT_EQ(to_string(d.source), "monomial-engine");
    ASSERT_EQ(d.components.size(), 2u);
    EXPECT_TRUE(has_primary(d.components, I(r, {"x"})));
    EXPECT_TRUE(has_primary(d.components, I(r, {"x^2", "y"})));
    EXPECT_TRUE(ideal_equal(intersect_components(d.components, r), I(r, {"x^2", "x*y"})));
}

TEST(MonomialEngine, FourComponentSurfaceCurvePointExample) {
    RingPtr r = make_ring({"x", "y", "z"});
    Ideal m = I(r, {"x^2*y", "x^2*z", "x*y^2", "x*y*z^2"});
    auto [primes, comps] = monomial_ass_and_decompose(m);
    ASSERT_EQ(primes.size(), 4u);
    EXPECT_TRUE(ideal_equal(primes[0], I(r, {"x"})));
    EXPECT_TRUE(ideal_equal(primes[1], I(r, {"y", "z"})));
    EXPECT_TRUE(ideal_equal(primes[2], I(r, {"x", "y"})));
    EXPECT_TRUE(ideal_equal(primes[3], I(r, {"x", "y", "z"})));
    EXPECT_TRUE(ideal_equal(intersect_components(comps, r), m));
    expect_ordering_contract(comps);
}

TEST(StandardPairs, CountAndInducedPrimes) {
    RingPtr r = make_ring({"x", "y", "z"});
    Ideal m = I(r, {"x^2*y", "x^2*z", "x*y^2", "x*y*z^2"});
    std::vector<StandardPair> pairs = standard_pairs(m);
    ASSERT_EQ(pairs.size(), 5u);
    EXPECT_TRUE(ideal_equal(pairs[0].prime, I(r, {"x"})));
    EXPECT_EQ(pairs[0].monomial, (Monomial{0, 0, 0}));
    EXPECT_TRUE(ideal_equal(pairs[1].prime, I(r, {"y", "z"})));
    EXPECT_TRUE(ideal_equal(pairs[2].prime, I(r, {"x", "y"})));
    EXPECT_EQ(pairs[2].monomial, (Monomial{1, 0, 0}));
    EXPECT_TRUE(ideal_equal(pairs[3].prime, I(r, {"x", "y", "z"})));
    EXPECT_EQ(pairs[3].monomial, (Monomial{1, 1, 0}));
    EXPECT_EQ(pairs[4].monomial, (Monomial{1, 1, 1}));

    RingPtr rx = make_ring({"x"});
    EXPECT_EQ(standard_pairs(Ideal(rx, {P(rx, "x^2")})).size(), 2u);
    std::vector<StandardPair> line = standard_pairs(I(make_ring({"x", "y"}), {"x"}));
    ASSERT_EQ(line.size(), 1u);
}

TEST(StandardPairs, PrimesMatchAssociatedPrimesOnRandomMonomialIdeals) {
    std::mt19937 rng(1201);
    std::vector<RingPtr> rings = {make_ring({"x", "y"}), make_ring({"x", "y", "z"})};
    for (int it = 0; it < 30; ++it) {
        const RingPtr& r = rings[it % rings.size()];
        Ideal m = random_monomial_ideal(r, rng, 3, 3);
        if (m.is_zero_ideal() || m.is_unit()) continue;
        auto [primes, comps] = monomial_ass_and_decompose(m);
        // the set of standard-pair primes equals the associated primes
        std::vector<StandardPair> pairs = standard_pairs(m);
        for (const auto& p : primes) {
            bool seen = false;
            for (const auto& sp : pairs) seen = seen || ideal_equal(sp.prime, p);
            EXPECT_TRUE(seen);
        }
        for (const auto& sp : pairs) {
            bool listed = false;
            for (const auto& p : primes) listed = listed || ideal_equal(sp.prime, p);
            EXPECT_TRUE(listed);
        }
        EXPECT_TRUE(ideal_equal(intersect_components(comps, r), m));
        expect_ordering_contract(comps);
    }
}

TEST(ZeroDimEngine, SplitsOverExtensions) {
    RingPtr rx = make_ring({"x"});
    RingPtr r = make_ring({"x", "y"});
    std::vector<PrimaryComponent> c1 = zero_dim_decompose(Ideal(rx, {P(rx, "x^2 - 1")}));
    ASSERT_EQ(c1.size(), 2u);
    EXPECT_TRUE(has_primary(c1, Ideal(rx, {P(rx, "x - 1")})));
    EXPECT_TRUE(has_primary(c1, Ideal(rx, {P(rx, "x + 1")})));

    // an m-primary ideal stays in one piece
    std::vector<PrimaryComponent> c2 = zero_dim_decompose(I(r, {"x^2", "x*y", "y^2"}));
    ASSERT_EQ(c2.size(), 1u);
    EXPECT_TRUE(ideal_equal(c2[0].prime, I(r, {"x", "y"})));
    EXPECT_TRUE(ideal_equal(c2[0].primary, I(r, {"x^2", "x*y", "y^2"})));

    // four points conjugate in pairs need a separating linear form
    std::vector<PrimaryComponent> c3 = zero_dim_decompose(I(r, {"x^2 - 2", "y^2 - 2"}));
    ASSERT_EQ(c3.size(), 2u);
    for (const auto& c : c3) EXPECT_TRUE(ideal_equal(c.primary, c.prime));
    EXPECT_FALSE(ideal_equal(c3[0].prime, c3[1].prime));
    EXPECT_TRUE(ideal_equal(intersect_components(c3, r), I(r, {"x^2 - 2", "y^2 - 2"})));

    std::vector<PrimaryComponent> c4 =
        zero_dim_decompose(Ideal(rx, {P(rx, "(x^2 + 1)*(x - 3)^2")}));
    ASSERT_EQ(c4.size(), 2u);
    EXPECT_TRUE(has_primary(c4, Ideal(rx, {P(rx, "x^2 + 1")})));
    EXPECT_TRUE(has_primary(c4, Ideal(rx, {P(rx, "(x - 3)^2")})));
}

TEST(ZeroDimEngine, WorksOverFractionFields) {
    RingPtr r = make_ring({"x", "y", "z"});
    std::vector<PrimaryComponent> comps =
        zero_dim_decompose(I(r, {"x", "y^2 - y*z + z^2"}), {2});
    ASSERT_EQ(comps.size(), 1u);
    EXPECT_TRUE(ideal_equal(Ideal(r, comps[0].prime.gens()),
                            I(r, {"x", "y^2 - y*z + z^2"})));
    // same ideal but over QQ(y) splits nothing either; over no parameters it
    // is not zero-dimensional, which the caller must respect
    std::vector<PrimaryComponent> split = zero_dim_decompose(I(r, {"z", "x^2 - y^2"}), {1});
    ASSERT_EQ(split.size(), 2u);
    EXPECT_TRUE(ideal_equal(intersect_components(split, r), I(r, {"z", "x^2 - y^2"})));
}

TEST(ZeroDimEngine, PrimaryComponentsAreConsistentOnRandomInputs) {
    RingPtr r = make_ring({"x", "y"});
    std::mt19937 rng(1301);
    std::vector<std::string> xparts = {"x^2 - 1", "x^2 - 2", "x^2 + x", "x^3 - x", "x^2"};
    std::vector<std::string> yparts = {"y^2 - 1", "y^2 - 3", "y^2 + y", "y^2 - x", "y^3"};
    std::uniform_int_distribution<size_t> px(0, xparts.size() - 1);
    std::uniform_int_distribution<size_t> py(0, yparts.size() - 1);
    for (int it = 0; it < 12; ++it) {
        Ideal J = I(r, {xparts[px(rng)], yparts[py(rng)]});
        std::vector<PrimaryComponent> comps = zero_dim_decompose(J);
        EXPECT_TRUE(ideal_equal(intersect_components(comps, r), J));
        for (const auto& c : comps) {
            // primary sits inside its prime, and the prime is its radical
            EXPECT_TRUE(ideal_contains(c.prime, c.primary));
            for (const auto& g : c.prime.gens())
                EXPECT_TRUE(radical_member(g, c.primary));
            EXPECT_EQ(dimension(c.prime).dim, 0);
        }
    }
}

TEST(GtzEngine, CubicConeWithEmbeddedPoint) {
    RingPtr r = make_ring({"x", "y", "z"});
    Ideal J = I(r, {"x^2*z", "y^3 + z^3", "x^2*y", "x^3 + y^3 + z^3"});
    DecompositionOutput d = primary_decomposition(J);
    EXPECT_EQ(to_string(d.source), "gtz-engine");
    ASSERT_EQ(d.components.size(), 3u);
    // two minimal lines through the cone plus an embedded point at the
    // origin; the embedded primary is not unique, so pin the prime and the
    // exact intersection instead
    EXPECT_TRUE(has_primary(d.components, I(r, {"y + z", "x^2"})));
    EXPECT_TRUE(has_primary(d.components, I(r, {"y^2 - y*z + z^2", "x^2"})));
    EXPECT_TRUE(has_prime(d.components, I(r, {"x", "y", "z"})));
    EXPECT_TRUE(ideal_equal(intersect_components(d.components, r), J));
    expect_ordering_contract(d.components);
    // a hand-picked embedded representative intersects identically
    Ideal alt = intersect(intersect(I(r, {"y + z", "x^2"}), I(r, {"y^2 - y*z + z^2", "x^2"})),
                          I(r, {"y + z", "z^2", "x^2*z", "x^3"}));
    EXPECT_TRUE(ideal_equal(alt, J));
}

TEST(GtzEngine, ThreeLinesWithEmbeddedOriginExample) {
    RingPtr r = make_ring({"x", "y", "z"});
    Ideal J = I(r, {"x*y*z^2", "x*y^2*z", "x^2*y*z", "y^2*z^2",
                    "2*x*y*z - x*z^2 + y*z^3", "2*x*y*z - x^2*y + x^3*z",
                    "2*x*y*z - y^2*z + x*y^3"});
    std::vector<Ideal> primes = associated_primes(J);
    ASSERT_EQ(primes.size(), 4u);
    EXPECT_TRUE(ideal_equal(primes[0], I(r, {"y", "z"})));
    EXPECT_TRUE(ideal_equal(primes[1], I(r, {"x", "z"})));
    EXPECT_TRUE(ideal_equal(primes[2], I(r, {"x", "y"})));
    EXPECT_TRUE(ideal_equal(primes[3], I(r, {"x", "y", "z"})));

    DecompositionOutput d = primary_decomposition(J);
    ASSERT_EQ(d.components.size(), 4u);
    EXPECT_TRUE(ideal_equal(d.components[0].primary, I(r, {"y^2", "z^2", "y - x*z"})));
    EXPECT_TRUE(ideal_equal(d.components[1].primary, I(r, {"x^2", "z^2", "z - x*y"})));
    EXPECT_TRUE(ideal_equal(d.components[2].primary, I(r, {"x^2", "y^2", "x - y*z"})));
    EXPECT_TRUE(ideal_equal(d.components[3].prime, I(r, {"x", "y", "z"})));
    EXPECT_TRUE(ideal_equal(intersect_components(d.components, r), J));
    expect_ordering_contract(d.components);
}

TEST(GtzEngine, RandomSmallIdealsRoundtrip) {
    std::mt19937 rng(1409);
    RingPtr r = make_ring({"x", "y"});
    std::vector<std::string> pool = {"x^2 - y^2", "x*y - 1", "x^2 - y", "y^2 - 1",
                                     "x^2 + y^2 - 2", "x - y^2", "x*y"};
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    for (int it = 0; it < 10; ++it) {
        Ideal J = I(r, {pool[pick(rng)], pool[pick(rng)]});
        if (J.is_unit()) continue;
        DecompositionOutput d = primary_decomposition(J, 0);
        EXPECT_TRUE(ideal_equal(intersect_components(d.components, r), J));
        expect_ordering_contract(d.components);
        for (const auto& c : d.components) {
            EXPECT_TRUE(ideal_contains(c.prime, c.primary));
            for (const auto& g : c.prime.gens())
                EXPECT_TRUE(radical_member(g, c.primary));
        }
    }
}

TEST(SuppliedPrimes, ValidatesAndDeduplicates) {
    RingPtr r = make_ring({"x", "y"});
    Ideal J = I(r, {"x^2"});
    EXPECT_THROW(supplied_primes_check(J, {unit_ideal(r)}), DataIntegrityError);
    // a listed prime must contain the ideal
    EXPECT_THROW(supplied_primes_check(J, {I(r, {"y"})}), DataIntegrityError);
    EXPECT_THROW(supplied_primes_check(J, {}), DataIntegrityError);
    std::vector<Ideal> ok = supplied_primes_check(J, {I(r, {"x"})});
    ASSERT_EQ(ok.size(), 1u);
    // duplicates collapse
    std::vector<Ideal> dedup = supplied_primes_check(J, {I(r, {"x"}), I(r, {"x"})});
    EXPECT_EQ(dedup.size(), 1u);
}

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    return RUN_ALL_TESTS();
}
