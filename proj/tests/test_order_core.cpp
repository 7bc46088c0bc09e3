#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "vecmax/cone.hpp"
#include "vecmax/metric.hpp"

namespace {

using vecmax::ConvexCone;
using vecmax::DimensionMismatch;
using vecmax::InvalidArgument;
using vecmax::MetricSpace;
using vecmax::Rational;
using vecmax::Vector;
using Cone = ConvexCone<double>;

TEST(Cone, OrthantMembership) {
    const auto k = Cone::orthant(2);
    EXPECT_TRUE(k.contains(Vector{0, 0}));
    EXPECT_FALSE(k.contains(Vector{-1, 5}));
    EXPECT_TRUE(vecmax::cone_leq(k, Vector{1, 1}, Vector{2, 3}));
    EXPECT_THROW(k.contains(Vector{1, 2, 3}), DimensionMismatch);
}

TEST(Cone, LexRule) {
    const auto k = Cone::lex(2);
    EXPECT_TRUE(k.contains(Vector{0, 1}));
    EXPECT_FALSE(k.contains(Vector{0, -1}));
    EXPECT_TRUE(k.contains(Vector{0, 0}));
    // (1, -9) leads with a positive entry
    EXPECT_TRUE(vecmax::cone_leq(k, Vector{0, 9}, Vector{1, 0}));
    EXPECT_FALSE(vecmax::cone_leq(k, Vector{1, 0}, Vector{0, 9}));
}

TEST(Cone, Reflexive) {
    const Vector y{3, -2};
    for (const auto& k : {Cone::orthant(2), Cone::lex(2), Cone::halfspaces({Vector{1, 1}})}) {
        EXPECT_TRUE(vecmax::cone_leq(k, y, y)) << k.describe();
    }
}

TEST(Cone, Pointedness) {
    EXPECT_TRUE(vecmax::cone_pointedness(Cone::orthant(3)).pointed);
    EXPECT_TRUE(vecmax::cone_pointedness(Cone::lex(2)).pointed);
    const auto blunt = vecmax::cone_pointedness(Cone::halfspaces({Vector{1, 0}}));
    ASSERT_FALSE(blunt.pointed);
    ASSERT_TRUE(blunt.witness.has_value());
    EXPECT_EQ(blunt.witness->to_string(), "(0, 1)");
}

TEST(Cone, HalfspaceProperAndNonDegenerate) {
    EXPECT_THROW(Cone::halfspaces({Vector{0, 0}}), InvalidArgument);
    EXPECT_THROW(Cone::halfspaces({Vector{1, 0}, Vector{-1, 0}, Vector{0, 1}, Vector{0, -1}}), InvalidArgument);
    EXPECT_NO_THROW(Cone::halfspaces({Vector{1, 0}, Vector{0, 1}}));
}

TEST(Cone, ClosedUnderConicCombination) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    const auto h = Cone::halfspaces({Vector{1, 0, 0}, Vector{1, 1, 0}, Vector{0, 0, 1}});
    const auto gens = h.generators();
    ASSERT_FALSE(gens.empty());
    for (int i = 0; i < 200; ++i) {
        Vector v(3), w(3);
        for (const auto& g : gens) {
            v += u(rng) * g;
            w += u(rng) * g;
        }
        EXPECT_TRUE(h.contains_within(u(rng) * v + u(rng) * w, 1e-9));
    }
}

TEST(Cone, Inclusion) {
    EXPECT_TRUE(vecmax::cone_includes(Cone::lex(2), Cone::orthant(2)));
    EXPECT_FALSE(vecmax::cone_includes(Cone::orthant(2), Cone::lex(2)));
    EXPECT_TRUE(vecmax::cone_includes(Cone::halfspaces({Vector{1, 0}, Vector{1, 1}}), Cone::orthant(2)));
    EXPECT_FALSE(vecmax::cone_includes(Cone::orthant(2), Cone::halfspaces({Vector{1, 0}, Vector{1, 1}})));
    EXPECT_TRUE(vecmax::cone_includes(Cone::halfspaces({Vector{1, 0}}), Cone::lex(2)));
}

TEST(Archimedean, LexWitness) {
    const auto [h, v] = vecmax::lex_archimedean_witness<double>(2);
    const auto cex = vecmax::archimedean_falsify(Cone::lex(2), {{h, v}}, 1e6, 21);
    ASSERT_TRUE(cex.has_value());
    EXPECT_EQ(cex->h.to_string(), "(0, 1)");
    EXPECT_EQ(cex->v.to_string(), "(1, 0)");
}

TEST(Archimedean, OrthantAndHalfspaceOrthantHaveNone) {
    const auto cands = vecmax::standard_archimedean_candidates<double>(3);
    EXPECT_FALSE(vecmax::archimedean_falsify(Cone::orthant(3), cands, 1e6, 21).has_value());
    const auto same = Cone::halfspaces({Vector{1, 0, 0}, Vector{0, 1, 0}, Vector{0, 0, 1}});
    EXPECT_FALSE(vecmax::archimedean_falsify(same, cands, 1e6, 21).has_value());
}

TEST(Archimedean, EmptyCandidatesRejected) {
    EXPECT_THROW(vecmax::archimedean_falsify(Cone::lex(2), {}, 1.0, 4), InvalidArgument);
}

TEST(Metric, Distances) {
    const auto m = MetricSpace<double>::matrix({{0, 1}, {1, 0}});
    EXPECT_EQ(vecmax::metric_dist(m, 0, 1), 1.0);
    EXPECT_EQ(vecmax::metric_dist(m, 1, 1), 0.0);
    EXPECT_THROW(vecmax::metric_dist(m, 0, 2), vecmax::IndexOutOfRange);
    const auto p = MetricSpace<double>::points({Vector{0, 0}, Vector{3, 4}}, 2.0);
    EXPECT_DOUBLE_EQ(vecmax::metric_dist(p, 0, 1), 5.0);
    const auto sup = MetricSpace<double>::points({Vector{0, 0}, Vector{3, 4}}, std::numeric_limits<double>::infinity());
    EXPECT_EQ(vecmax::metric_dist(sup, 0, 1), 4.0);
}

TEST(Metric, TriangleViolationWitness) {
    const auto m = MetricSpace<double>::matrix({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}});
    const auto rep = vecmax::metric_validate(m);
    ASSERT_FALSE(rep.valid);
    const auto& v = rep.violations.front();
    EXPECT_EQ(v.axiom, vecmax::MetricViolation::Axiom::triangle);
    EXPECT_EQ(v.i, 0u);
    EXPECT_EQ(v.j, 2u);
    EXPECT_EQ(v.k, 1u);
}

TEST(Metric, ValidCases) {
    EXPECT_TRUE(vecmax::metric_validate(MetricSpace<double>::matrix({{0, 1}, {1, 0}})).valid);
    const auto p = vecmax::metric_validate(MetricSpace<double>::points({Vector{0}, Vector{2}}, 1.0));
    EXPECT_TRUE(p.valid);
    EXPECT_TRUE(p.analytic);
}

TEST(Metric, ExactModeRestrictsNorms) {
    using RV = vecmax::RationalVector;
    EXPECT_THROW(MetricSpace<Rational>::points({RV{0}, RV{1}}, 2.0), InvalidArgument);
    const auto m = MetricSpace<Rational>::points({RV{0, 0}, RV{3, 4}}, 1.0);
    EXPECT_EQ(m.dist(0, 1), Rational(7));
}

TEST(Cone, ExactLexHasNoTolerance) {
    using RV = vecmax::RationalVector;
    const auto k = ConvexCone<Rational>::lex(3);
    EXPECT_TRUE(k.contains(RV{0, Rational(1, 1000000000), -5}));
    EXPECT_FALSE(k.contains(RV{0, Rational(-1, 1000000000), 5}));
}

}  // namespace
