#include <gtest/gtest.h>

#include <random>
#include <string>

#include "oracles.hpp"
#include "vecmax/cauchy.hpp"
#include "vecmax/ekeland.hpp"
#include "vecmax/io.hpp"
#include "vecmax/maximal.hpp"
#include "vecmax/validate.hpp"

namespace {

using vecmax::ConvexCone;
using vecmax::GaugeContext;
using vecmax::Instance;
using vecmax::MetricSpace;
using vecmax::NormalFunction;
using vecmax::ProductPoint;
using vecmax::Rational;
using vecmax::Vector;
using Cone = ConvexCone<double>;
using NF = NormalFunction<double>;
using PP = ProductPoint<double>;

Instance<double> three_point() {
    return Instance<double>(MetricSpace<double>::matrix({{0, 1}, {1, 0}}), Cone::orthant(1), Cone::orthant(1),
                            NF::linear(Vector{1}), {PP{0, Vector{5}}, PP{1, Vector{3}}, PP{1, Vector{2.9}}},
                            Vector{0});
}

template <class T = double>
Instance<T> fixture(const std::string& name) {
    return vecmax::instance_from_json<T>(vecmax::load_json_file(std::string(VECMAX_FIXTURE_DIR) + "/" + name));
}

bool verdict_passes(const vecmax::MaximalCertificate<double>& c, const std::string& name) {
    for (const auto& v : c.checks) {
        if (v.name == name) return v.pass;
    }
    ADD_FAILURE() << "no verdict " << name;
    return false;
}

TEST(Product, GeqExamples) {
    const auto inst = three_point();
    EXPECT_TRUE(vecmax::product_geq(inst, PP{0, Vector{5}}, PP{1, Vector{3}}));
    EXPECT_FALSE(vecmax::product_geq(inst, PP{1, Vector{3}}, PP{0, Vector{5}}));
    // 3 - 2.5 < d = 1
    EXPECT_FALSE(vecmax::product_geq(inst, PP{0, Vector{3}}, PP{1, Vector{2.5}}));
    EXPECT_TRUE(vecmax::product_geq(inst, PP{1, Vector{3}}, PP{1, Vector{2.9}}));
    EXPECT_TRUE(vecmax::product_geq(inst, PP{1, Vector{3}}, PP{1, Vector{3}}));
}

TEST(Product, SemimetricIgnoresY) {
    const auto inst = three_point();
    EXPECT_EQ(vecmax::semimetric_e(inst, PP{1, Vector{3}}, PP{1, Vector{2.9}}), 0.0);
    EXPECT_EQ(vecmax::semimetric_e(inst, PP{0, Vector{5}}, PP{1, Vector{2.9}}), 1.0);
}

TEST(Graph, ThreePointEdges) {
    const auto g = vecmax::successor_graph(three_point());
    EXPECT_EQ(g.successors(0), (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(g.successors(1), (std::vector<std::size_t>{2}));
    EXPECT_TRUE(g.successors(2).empty());
    EXPECT_TRUE(g.related(2, 2));
    EXPECT_FALSE(g.transitivity_violation().has_value());
}

TEST(Graph, SingletonAndAntichain) {
    const Instance<double> one(MetricSpace<double>::matrix({{0}}), Cone::orthant(1), Cone::orthant(1),
                               NF::linear(Vector{1}), {PP{0, Vector{1}}});
    const auto c = vecmax::find_maximal_scc(one, 0);
    EXPECT_EQ(c.answer.index, 0u);
    EXPECT_TRUE(c.valid());

    // Points two apart with y differing by 1: nothing dominates anything else.
    const Instance<double> anti(MetricSpace<double>::points({Vector{0}, Vector{2}, Vector{4}}, 1.0), Cone::orthant(1),
                                Cone::orthant(1), NF::linear(Vector{1}),
                                {PP{0, Vector{0}}, PP{1, Vector{1}}, PP{2, Vector{2}}});
    EXPECT_EQ(vecmax::successor_graph(anti).edge_count(), 0u);
    for (std::size_t s = 0; s < 3; ++s) EXPECT_EQ(vecmax::find_maximal_scc(anti, s).answer.index, s);
}

TEST(Graph, TransitivityViolationReported) {
    vecmax::SuccessorGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    const auto bad = g.transitivity_violation();
    ASSERT_TRUE(bad.has_value());
    EXPECT_EQ(*bad, (std::array<std::size_t, 3>{0, 1, 2}));
}

TEST(Graph, ComponentsOfCycle) {
    vecmax::SuccessorGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    g.add_edge(1, 2);
    g.add_edge(3, 2);
    const auto c = vecmax::strongly_connected_components(g);
    EXPECT_EQ(c.count(), 3u);
    EXPECT_EQ(c.component_of[0], c.component_of[1]);
    EXPECT_TRUE(c.is_sink[c.component_of[2]]);
    EXPECT_FALSE(c.is_sink[c.component_of[0]]);
    EXPECT_FALSE(c.is_sink[c.component_of[3]]);
}

TEST(Scc, ThreePointAnswer) {
    const auto inst = three_point();
    const auto c = vecmax::find_maximal_scc(inst, 0);
    EXPECT_EQ(c.answer.index, 2u);
    EXPECT_EQ(c.answer.point, (PP{1, Vector{2.9}}));
    EXPECT_EQ(c.chain.front().index, 0u);
    EXPECT_EQ(c.chain.back().index, 2u);
    EXPECT_TRUE(c.valid());
    EXPECT_TRUE(vecmax::verify_certificate(inst, c).pass());
    EXPECT_EQ(vecmax::find_maximal_scc(inst, PP{1, Vector{3}}).answer.index, 2u);
    EXPECT_THROW(vecmax::find_maximal_scc(inst, PP{1, Vector{4}}), vecmax::PreconditionFailed);
    EXPECT_THROW(vecmax::find_maximal_scc(inst, 9), vecmax::PreconditionFailed);
}

TEST(Scc, EqualPointsFormOneComponent) {
    // Two copies of the same point dominate each other; the least index wins.
    const Instance<double> inst(MetricSpace<double>::matrix({{0, 1}, {1, 0}}), Cone::orthant(1), Cone::orthant(1),
                                NF::linear(Vector{1}), {PP{0, Vector{5}}, PP{1, Vector{2}}, PP{1, Vector{2}}});
    const auto c = vecmax::find_maximal_scc(inst, 0);
    EXPECT_EQ(c.answer.index, 1u);
    EXPECT_TRUE(c.valid());
}

TEST(Verifier, TamperedCertificateFails) {
    const auto inst = three_point();
    auto c = vecmax::find_maximal_scc(inst, 0);
    c.answer = {0, inst.point(0)};
    c.chain = {c.answer};
    const auto rep = vecmax::verify_certificate(inst, c);
    ASSERT_FALSE(rep.pass());
    bool found = false;
    for (const auto& v : rep.checks) {
        if (v.name == "successors of answer share its x") {
            found = true;
            EXPECT_FALSE(v.pass);
            ASSERT_FALSE(v.witnesses.empty());
            EXPECT_NE(v.witnesses.front().find("#1"), std::string::npos);
        }
    }
    EXPECT_TRUE(found);

    auto wrong = vecmax::find_maximal_scc(inst, 0);
    wrong.answer.point.y[0] = 2.8;
    EXPECT_FALSE(vecmax::verify_certificate(inst, wrong).checks.front().pass);
}

TEST(Verifier, BrokenChainFails) {
    const auto inst = three_point();
    auto c = vecmax::find_maximal_scc(inst, 0);
    c.chain = {{2, inst.point(2)}, {0, inst.point(0)}};
    EXPECT_FALSE(vecmax::verify_certificate(inst, c).pass());
}

TEST(Bb, AgreesWithScc) {
    const auto inst = three_point();
    const auto bb = vecmax::find_maximal_bb(inst, 0, vecmax::Potential<double>::y_component(0));
    EXPECT_EQ(bb.answer.index, vecmax::find_maximal_scc(inst, 0).answer.index);
    EXPECT_TRUE(bb.valid());
    EXPECT_EQ(bb.engine, "bb:y:0");
}

TEST(Bb, PhiPotential) {
    const auto inst = three_point();
    const auto ctx = GaugeContext<double>::make(inst.cone_k(), inst.cone_h(), inst.scaling());
    const auto bb = vecmax::find_maximal_bb(inst, 0, vecmax::Potential<double>::phi(), {}, &ctx);
    EXPECT_EQ(bb.mode, vecmax::Mode::t3);
    EXPECT_EQ(bb.answer.index, 2u);
    EXPECT_TRUE(bb.valid());
    EXPECT_THROW(vecmax::find_maximal_bb(inst, 0, vecmax::Potential<double>::phi()), vecmax::InvalidArgument);
}

TEST(Bb, ConstantPotentialStopsAtStart) {
    const auto inst = three_point();
    const auto c = vecmax::find_maximal_bb(inst, 0, vecmax::Potential<double>::custom({1, 1, 1}));
    EXPECT_EQ(c.answer.index, 0u);
    EXPECT_EQ(c.chain.size(), 1u);
    EXPECT_TRUE(verdict_passes(c, "successors of answer share its potential"));
    // A constant potential certifies nothing about x.
    EXPECT_FALSE(verdict_passes(c, "successors of answer share its x"));
}

TEST(Bb, IncreasingPotentialRejected) {
    EXPECT_THROW(vecmax::find_maximal_bb(three_point(), 0, vecmax::Potential<double>::custom({0, 1, 2})),
                 vecmax::PreconditionFailed);
}

TEST(Bb, ChainOnTenPoints) {
    std::vector<Vector> coords;
    std::vector<PP> pts;
    for (int i = 0; i < 10; ++i) {
        coords.push_back(Vector{static_cast<double>(i)});
        pts.push_back(PP{static_cast<std::size_t>(i), Vector{-2.0 * i}});
    }
    const Instance<double> inst(MetricSpace<double>::points(coords, 1.0), Cone::orthant(1), Cone::orthant(1),
                                NF::linear(Vector{1}), pts);
    for (std::size_t s = 0; s < 10; ++s) {
        const auto c = vecmax::find_maximal_bb(inst, s, vecmax::Potential<double>::y_component(0));
        EXPECT_EQ(c.answer.index, 9u);
        EXPECT_LE(c.chain.size(), 10u);
        EXPECT_TRUE(c.valid());
    }
}

TEST(GaugeEngine, LexFixture) {
    const auto inst = fixture("lex.json");
    const auto ctx = GaugeContext<double>::make(inst.cone_k(), inst.cone_h(), inst.scaling());
    const auto c = vecmax::find_maximal_gauge(inst, ctx, 2);
    EXPECT_EQ(c.answer.index, 3u);
    EXPECT_TRUE(c.valid());
    // Points with a positive first coordinate have gauge +inf.
    EXPECT_THROW(vecmax::find_maximal_gauge(inst, ctx, 0), vecmax::NotInDomain);
    const auto dom = vecmax::gauge_domain_check(inst, ctx);
    EXPECT_EQ(dom.in_domain, (std::vector<std::size_t>{2, 3}));
}

TEST(GaugeEngine, SingleDomainPoint) {
    const Instance<double> inst(MetricSpace<double>::matrix({{0, 1}, {1, 0}}), Cone::orthant(2), Cone::lex(2),
                                NF::linear(Vector{0, 1}),
                                {PP{0, Vector{1, 0}}, PP{1, Vector{2, 7}}, PP{1, Vector{0, 4}}});
    const auto ctx = GaugeContext<double>::make(inst.cone_k(), inst.cone_h(), inst.scaling());
    const auto c = vecmax::find_maximal_gauge(inst, ctx, 2);
    EXPECT_EQ(c.answer.index, 2u);
    EXPECT_TRUE(c.valid());
    EXPECT_THROW(vecmax::find_maximal_gauge(inst, ctx, 1), vecmax::NotInDomain);
}

TEST(GaugeEngine, OutsideHRejected) {
    const Instance<double> inst(MetricSpace<double>::matrix({{0}}), Cone::orthant(2), Cone::lex(2),
                                NF::linear(Vector{0, 1}), {PP{0, Vector{0, 1}}, PP{0, Vector{-1, 0}}});
    const auto ctx = GaugeContext<double>::make(inst.cone_k(), inst.cone_h(), inst.scaling());
    EXPECT_THROW(vecmax::find_maximal_gauge(inst, ctx, 0), vecmax::PreconditionFailed);
}

TEST(GaugeEngine, ExactLex) {
    const auto inst = fixture<Rational>("lex.json");
    const auto ctx = GaugeContext<Rational>::make(inst.cone_k(), inst.cone_h(), inst.scaling());
    const auto c = vecmax::find_maximal_gauge(inst, ctx, 2);
    EXPECT_EQ(c.answer.index, 3u);
    EXPECT_TRUE(c.valid());
}

TEST(BoundedBelow, Examples) {
    const Instance<double> free(MetricSpace<double>::matrix({{0, 1}, {1, 0}}), Cone::orthant(2), Cone::orthant(2),
                                NF::linear(Vector{1, 1}), {PP{0, Vector{1, 2}}, PP{1, Vector{0, 5}}});
    const auto a = vecmax::bounded_below_check(free);
    EXPECT_EQ(a.status, vecmax::BoundStatus::pass);
    EXPECT_TRUE(a.synthesized);
    EXPECT_EQ(*a.lower_bound, (Vector{0, 2}));

    const Instance<double> high(free.space(), free.cone_k(), free.cone_h(), free.scaling(), free.points(),
                                Vector{10, 10});
    const auto b = vecmax::bounded_below_check(high);
    EXPECT_EQ(b.status, vecmax::BoundStatus::fail);
    EXPECT_EQ(b.violating, (std::vector<std::size_t>{0, 1}));
    EXPECT_FALSE(vecmax::validate_instance(high).pass());

    const Instance<double> lex(free.space(), free.cone_k(), Cone::lex(2), free.scaling(), free.points());
    EXPECT_EQ(vecmax::bounded_below_check(lex).status, vecmax::BoundStatus::not_synthesized);
}

TEST(Validate, Fixtures) {
    for (const char* name : {"three_point.json", "orthant.json", "orthant_power.json", "halfspace.json", "lex.json",
                             "lex_chain.json"}) {
        const auto rep = vecmax::validate_instance(fixture(name));
        for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << name << ": " << c.law << ": " << c.witness;
    }
    const auto bad = vecmax::validate_instance(fixture("triangle_violation.json"));
    const auto* m = bad.find("metric axioms");
    ASSERT_NE(m, nullptr);
    EXPECT_FALSE(m->pass);
    EXPECT_NE(m->witness.find("triangle"), std::string::npos);
}

TEST(Cauchy, ConstantSequence) {
    const auto inst = three_point();
    const auto rep = vecmax::check_ascending_cauchy(inst, {1, 1, 1, 1}, std::vector<double>{1.0, 0.1});
    ASSERT_TRUE(rep.cauchy());
    for (const auto& e : rep.entries) {
        EXPECT_EQ(*e.modulus, 0u);
        EXPECT_EQ(e.jumps, 0u);
        EXPECT_TRUE(e.jumps_within_bound());
    }
}

TEST(Cauchy, EventuallyConstant) {
    const auto inst = three_point();
    const auto rep = vecmax::check_ascending_cauchy(inst, {0, 1, 2, 2}, std::vector<double>{0.5});
    EXPECT_EQ(*rep.entries.front().modulus, 1u);
    EXPECT_EQ(rep.entries.front().jumps, 1u);
    EXPECT_TRUE(rep.entries.front().jumps_within_bound());
}

TEST(Cauchy, NotAscendingRejected) {
    EXPECT_THROW(vecmax::check_ascending_cauchy(three_point(), {2, 0}, std::vector<double>{1.0}),
                 vecmax::PreconditionFailed);
}

TEST(Cauchy, LexChainIsNotCauchy) {
    const auto inst = fixture("lex_chain.json");
    std::vector<std::size_t> seq(inst.size());
    for (std::size_t i = 0; i < seq.size(); ++i) seq[i] = i;
    const auto rep = vecmax::check_ascending_cauchy(inst, seq, std::vector<double>{0.5});
    EXPECT_FALSE(rep.cauchy());
    const auto& e = rep.entries.front();
    ASSERT_FALSE(e.far_pairs.empty());
    EXPECT_EQ(e.far_pairs.front(), (std::pair<std::size_t, std::size_t>{0, 1}));
    EXPECT_EQ(e.jumps, seq.size() - 1);
    EXPECT_TRUE(e.jump_bound.is_pos_infinity());
}

TEST(Ekeland, PathExample) {
    const auto space = MetricSpace<double>::points({Vector{0}, Vector{1}, Vector{2}}, 1.0);
    const std::vector<double> f{3, 1, 0.5};
    const auto res = vecmax::ekeland_solve(space, f, 1.0, 0);
    EXPECT_EQ(res.index, 1u);
    EXPECT_TRUE(res.valid());
    const oracle::Table d{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
    const auto ans = oracle::ekeland_answers(d, f, 1.0, 0);
    EXPECT_EQ(ans, (std::vector<std::size_t>{1, 2}));
}

TEST(Ekeland, ConstantFunctionStays) {
    const auto space = MetricSpace<double>::points({Vector{0}, Vector{1}, Vector{2}}, 1.0);
    for (std::size_t s = 0; s < 3; ++s) {
        const auto res = vecmax::ekeland_solve(space, {2.0, 2.0, 2.0}, 0.5, s);
        EXPECT_EQ(res.index, s);
        EXPECT_TRUE(res.valid());
    }
}

TEST(Ekeland, RandomAgainstOracle) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng() % 30;
        const auto d = oracle::random_metric(n, rng);
        std::vector<double> f(n);
        for (auto& v : f) v = oracle::dyadic(rng, -20, 20);
        const double eps = trial % 2 ? 1.0 : 0.5;
        const std::size_t start = rng() % n;
        const auto res = vecmax::ekeland_solve(MetricSpace<double>::matrix(d), f, eps, start);
        const auto ans = oracle::ekeland_answers(d, f, eps, start);
        EXPECT_NE(std::find(ans.begin(), ans.end(), res.index), ans.end()) << "trial " << trial;
        EXPECT_TRUE(res.valid());
    }
}

TEST(Ekeland, BadInputs) {
    const auto space = MetricSpace<double>::points({Vector{0}, Vector{1}}, 1.0);
    EXPECT_THROW(vecmax::ekeland_solve(space, {1.0}, 1.0, 0), vecmax::DimensionMismatch);
    EXPECT_THROW(vecmax::ekeland_solve(space, {1.0, 2.0}, 0.0, 0), vecmax::InvalidArgument);
    EXPECT_THROW(vecmax::ekeland_solve(space, {1.0, 2.0}, 1.0, 5), vecmax::IndexOutOfRange);
}

TEST(Threads, SameGraph) {
    std::mt19937_64 rng(11);
    const std::size_t n = 150;
    const auto d = oracle::random_metric(40, rng);
    std::vector<PP> pts;
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back(PP{rng() % 40, Vector{oracle::dyadic(rng, 0, 50), oracle::dyadic(rng, 0, 50)}});
    }
    const Instance<double> inst(MetricSpace<double>::matrix(d), Cone::orthant(2), Cone::orthant(2),
                                NF::linear(Vector{1, 1}), pts);
    const auto g1 = vecmax::successor_graph(inst, vecmax::kDefaultPointCap, 1);
    const auto g4 = vecmax::successor_graph(inst, vecmax::kDefaultPointCap, 4);
    for (std::size_t a = 0; a < n; ++a) EXPECT_EQ(g1.successors(a), g4.successors(a));
    EXPECT_THROW(vecmax::successor_graph(inst, 10), vecmax::InvalidArgument);
}

}  // namespace
