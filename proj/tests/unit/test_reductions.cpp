#include <gtest/gtest.h>

#include <random>

#include "ccqbf/ccqbf.hpp"
#include "reference.hpp"

using namespace ccqbf;
using ref::clause;

namespace {

bool has_clause(const QbfFormula& f, const Clause& c) {
    for (const auto& a : f.matrix.tractable) {
        if (const auto* x = std::get_if<Clause>(&a); x && *x == c) return true;
    }
    return false;
}

}  // namespace

TEST(Graph, ParseWriteRoundTrip) {
    const auto g = parse_graph("c two parts\nparts 2 1\n1 3\n2 3\n");
    EXPECT_EQ(g.k(), 2u);
    EXPECT_EQ(g.vertex_count(), 3u);
    EXPECT_TRUE(g.adjacent(3, 1));
    EXPECT_FALSE(g.adjacent(1, 2));
    const auto again = parse_graph(write_graph(g));
    EXPECT_EQ(again.parts, g.parts);
    EXPECT_EQ(again.edges, g.edges);
    EXPECT_THROW(parse_graph("1 2\n"), ParseError);
    EXPECT_THROW(parse_graph("parts 1 1\n1 9\n"), ParseError);
}

TEST(Graph, ValidateRejectsSelfLoop) {
    auto g = make_partitioned_graph({2});
    g.edges.insert({1, 1});
    EXPECT_THROW(g.validate(), GraphError);
}

TEST(Mis, TwoSingletonParts) {
    auto g = make_partitioned_graph({1, 1});
    EXPECT_TRUE(mis_bruteforce(g));
    EXPECT_TRUE(ref::eval_qbf(mis_to_horn(g)) == false);
    g.add_edge(1, 2);
    EXPECT_FALSE(mis_bruteforce(g));
    EXPECT_TRUE(ref::eval_qbf(mis_to_horn(g)));
}

TEST(Mis, CapError) {
    const auto g = make_partitioned_graph({10, 10, 10});
    EXPECT_THROW(mis_bruteforce(g, 100), CapError);
}

TEST(MisToHorn, VertexClauseShape) {
    // V1 = {1}, V2 = {2}, edge 1-2: C_1 = {y1, ¬y2, ¬x1}, x1 = variable 3
    auto g = make_partitioned_graph({1, 1});
    g.add_edge(1, 2);
    const auto f = mis_to_horn(g);
    EXPECT_TRUE(has_clause(f, clause({1, -2, -3})));
    EXPECT_EQ(f.base_class, BaseClass::horn());
    ASSERT_EQ(f.matrix.backdoor.size(), 1u);
    EXPECT_EQ(f.matrix.backdoor[0], clause({3, 4}));
    for (const auto& a : f.matrix.tractable) EXPECT_TRUE(atom_in_class(a, BaseClass::horn()));
}

TEST(MisToIhsbMinus, Examples) {
    // triangle in a single part: any vertex is an MIS
    auto tri = make_partitioned_graph({3});
    tri.add_edge(1, 2);
    tri.add_edge(2, 3);
    tri.add_edge(1, 3);
    EXPECT_FALSE(ref::eval_qbf(mis_to_ihsb_minus(tri)));

    auto kb = make_partitioned_graph({2, 2});
    for (std::uint32_t a : {1u, 2u}) {
        for (std::uint32_t b : {3u, 4u}) kb.add_edge(a, b);
    }
    EXPECT_FALSE(mis_bruteforce(kb));
    EXPECT_TRUE(ref::eval_qbf(mis_to_ihsb_minus(kb)));

    // V1 = {1,2}, V2 = {3}, no edges: C_1 = {¬y2, ¬x1}, x1 = 4
    const auto f = mis_to_ihsb_minus(make_partitioned_graph({2, 1}));
    EXPECT_TRUE(has_clause(f, clause({-2, -4})));
    for (const auto& a : f.matrix.tractable) EXPECT_TRUE(atom_in_class(a, BaseClass::ihsb_minus()));
    EXPECT_EQ(f.matrix.backdoor.at(0).size(), 4u);
}

TEST(SplitHorn, OneRound) {
    const auto [a, b] = split_horn_clause(clause({1, -2, -3, -4, -5}), Var{6});
    EXPECT_EQ(a, clause({1, -2, -6}));
    EXPECT_EQ(b, clause({6, -3, -4, -5}));
}

TEST(HornTo3Horn, IdentityOnThreeHorn) {
    auto g = make_partitioned_graph({1, 1});
    const auto f = mis_to_horn(g);
    const auto h = horn_to_3horn(f);
    EXPECT_EQ(h.matrix, f.matrix);
    EXPECT_EQ(h.prefix, f.prefix);
}

TEST(HornTo3Horn, NonHornRejected) {
    QbfFormula f;
    f.prefix.exists(1);
    f.prefix.exists(2);
    f.matrix.tractable.emplace_back(clause({1, 2}));
    EXPECT_THROW(horn_to_3horn(f), ClassError);
}

TEST(ReductionProperty, MisSoundness) {
    std::mt19937_64 rng(91);
    for (int iter = 0; iter < 120; ++iter) {
        const std::size_t k = 2 + rng() % 3;
        const std::size_t n = k + rng() % (8 - k + 1);
        const auto g = gen_graph(n, k, 0.2 + 0.1 * (rng() % 6), rng());
        const bool mis = mis_bruteforce(g);
        ASSERT_EQ(mis, ref::mis_exists(g));
        const auto horn = mis_to_horn(g);
        const auto ihsb = mis_to_ihsb_minus(g);
        ASSERT_EQ(mis, !eval_bruteforce(horn)) << write_graph(g);
        ASSERT_EQ(mis, !eval_bruteforce(ihsb)) << write_graph(g);
        const auto h3 = horn_to_3horn(horn);
        EXPECT_EQ(eval_bruteforce(h3, 63), !mis);
        EXPECT_EQ(h3.backdoor_size(), horn.backdoor_size());
        for (const auto& a : h3.matrix.tractable) EXPECT_TRUE(atom_in_class(a, BaseClass::bounded_horn(3)));
    }
}

TEST(Dualize, Examples) {
    QbfFormula f;
    f.prefix.forall(1);
    f.matrix.tractable.emplace_back(clause({1}));
    const auto d = dualize(f);
    EXPECT_EQ(std::get<Clause>(d.matrix.tractable[0]), clause({-1}));
    EXPECT_FALSE(ref::eval_qbf(f));
    EXPECT_FALSE(ref::eval_qbf(d));

    QbfFormula e;
    e.prefix.exists(1);
    e.prefix.exists(2);
    e.prefix.exists(3);
    e.matrix.tractable.emplace_back(AffineEquation::from_ids({1, 2}, true));
    e.matrix.tractable.emplace_back(AffineEquation::from_ids({1, 2, 3}, true));
    const auto de = dualize(e);
    EXPECT_EQ(std::get<AffineEquation>(de.matrix.tractable[0]), AffineEquation::from_ids({1, 2}, true));
    EXPECT_EQ(std::get<AffineEquation>(de.matrix.tractable[1]), AffineEquation::from_ids({1, 2, 3}, false));
}

TEST(DualizeProperty, InvolutionAndTruth) {
    std::mt19937_64 rng(92);
    const BaseClass classes[] = {BaseClass::two_cnf(), BaseClass::aff(), BaseClass::horn(),
                                 BaseClass::pos_and_neg_units()};
    for (int iter = 0; iter < 500; ++iter) {
        RandomParams p;
        p.n = 1 + rng() % 12;
        p.k = rng() % (p.n + 1);
        p.cls = classes[rng() % 4];
        const auto f = gen_random(p, rng());
        const auto d = dualize(f);
        EXPECT_EQ(dualize(d), f);
        ASSERT_EQ(eval_bruteforce(d), eval_bruteforce(f));
        EXPECT_EQ(d.base_class, p.cls.dual());
    }
}

TEST(Generator, DeterministicAndValid) {
    RandomParams p;
    EXPECT_EQ(gen_random(p, 1), gen_random(p, 1));
    RandomParams x;
    x.k = 0;
    x.cls = BaseClass::aff();
    const auto f = gen_random(x, 5);
    EXPECT_TRUE(f.matrix.backdoor.empty());
    for (const auto& a : f.matrix.tractable) EXPECT_TRUE(std::holds_alternative<AffineEquation>(a));
    RandomParams bad;
    bad.n = 2;
    bad.k = 3;
    EXPECT_THROW(gen_random(bad, 1), ParamError);
    bad.n = 0;
    bad.k = 0;
    EXPECT_THROW(gen_random(bad, 1), ParamError);
}
