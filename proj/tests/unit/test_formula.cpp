#include <gtest/gtest.h>

#include <random>

#include "ccqbf/ccqbf.hpp"
#include "reference.hpp"

using namespace ccqbf;
using ref::clause;

TEST(Literal, DoubleNegationIsIdentity) {
    for (int v : {1, -1, 7, -42}) {
        const Lit l = Lit::from_dimacs(v);
        EXPECT_EQ(~~l, l);
        EXPECT_EQ(l.dimacs(), v);
        EXPECT_NE(~l, l);
    }
    EXPECT_THROW(Lit::from_dimacs(0), DomainError);
}

TEST(Clause, CanonicalOrderAndDeduplication) {
    const Clause c = clause({3, -1, 3, 2});
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c.literals()[0], Lit::from_dimacs(-1));
    EXPECT_EQ(c.literals()[2], Lit::from_dimacs(3));
    EXPECT_FALSE(c.is_tautology());
    EXPECT_TRUE(clause({1, -1}).is_tautology());
    EXPECT_TRUE(Clause{}.empty());
    EXPECT_EQ(clause({1, -2, -3}).positive_count(), 1u);
}

TEST(AffineEquation, RepeatedVariablesCancel) {
    const auto e = AffineEquation::from_ids({1, 2, 1, 3}, true);
    ASSERT_EQ(e.size(), 2u);
    EXPECT_FALSE(e.contains(Var{1}));
    EXPECT_TRUE(AffineEquation::from_ids({4, 4}, false).is_trivially_true());
    EXPECT_TRUE(AffineEquation::from_ids({}, true).is_contradiction());
}

TEST(ApplyAssignment, SatisfiedUnitClauseLeavesEmptyFormula) {
    QbfFormula f;
    f.prefix.exists(1);
    f.matrix.tractable.emplace_back(clause({1}));
    const auto g = apply_assignment(f, {{Var{1}, true}});
    EXPECT_TRUE(g.prefix.empty());
    EXPECT_TRUE(g.matrix.empty());
}

TEST(ApplyAssignment, WorkedExampleResidual) {
    const auto g = apply_assignment(ref::worked_example(), {{Var{1}, false}, {Var{3}, true}});
    ASSERT_EQ(g.prefix.size(), 3u);
    EXPECT_EQ(g.prefix[0], (PrefixEntry{Var{2}, Quant::Forall}));
    EXPECT_EQ(g.prefix[1], (PrefixEntry{Var{4}, Quant::Exists}));
    EXPECT_EQ(g.prefix[2], (PrefixEntry{Var{5}, Quant::Exists}));
    ASSERT_EQ(g.matrix.tractable.size(), 1u);
    EXPECT_EQ(std::get<Clause>(g.matrix.tractable[0]), clause({2, 5}));
    ASSERT_EQ(g.matrix.backdoor.size(), 1u);
    EXPECT_EQ(g.matrix.backdoor[0], clause({-4, -5}));
}

TEST(ApplyAssignment, EquationParityUpdate) {
    QbfFormula f;
    f.prefix.exists(1);
    f.prefix.exists(2);
    f.matrix.tractable.emplace_back(AffineEquation::from_ids({1, 2}, true));
    const auto g = apply_assignment(f, {{Var{1}, true}});
    ASSERT_EQ(g.matrix.tractable.size(), 1u);
    EXPECT_EQ(std::get<AffineEquation>(g.matrix.tractable[0]), AffineEquation::from_ids({2}, false));
}

TEST(ApplyAssignment, KeepsFalsifiedAtomsAsBottomMarkers) {
    QbfFormula f;
    f.prefix.exists(1);
    f.prefix.exists(2);
    f.matrix.tractable.emplace_back(clause({1}));
    f.matrix.tractable.emplace_back(AffineEquation::from_ids({2}, true));
    f.matrix.backdoor.push_back(clause({-1, -2}));
    const auto g = apply_assignment(f, {{Var{1}, false}, {Var{2}, false}});
    ASSERT_EQ(g.matrix.tractable.size(), 2u);
    EXPECT_TRUE(std::get<Clause>(g.matrix.tractable[0]).empty());
    EXPECT_TRUE(std::get<AffineEquation>(g.matrix.tractable[1]).is_contradiction());
    EXPECT_TRUE(g.matrix.backdoor.empty());
}

TEST(ApplyAssignment, RejectsForeignVariable) {
    EXPECT_THROW(apply_assignment(ref::worked_example(), {{Var{9}, true}}), DomainError);
}

TEST(EvalMatrix, GroundCases) {
    Matrix m;
    m.tractable.emplace_back(clause({1, 2}));
    EXPECT_TRUE(eval_matrix(m, {{Var{1}, false}, {Var{2}, true}}));
    Matrix x;
    x.tractable.emplace_back(AffineEquation::from_ids({1, 2}, true));
    EXPECT_FALSE(eval_matrix(x, {{Var{1}, true}, {Var{2}, true}}));
    const auto ex = ref::worked_example();
    EXPECT_FALSE(eval_matrix(ex.matrix, {{Var{1}, true}, {Var{2}, false}, {Var{3}, true}, {Var{4}, true}, {Var{5}, true}}));
    EXPECT_THROW(eval_matrix(m, {{Var{1}, false}}), DomainError);
}

TEST(Validate, ReportsViolations) {
    EXPECT_TRUE(validate(ref::worked_example()).empty());

    QbfFormula f;
    f.prefix.exists(1);
    f.matrix.tractable.emplace_back(clause({1, 2}));
    auto v = validate(f);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].kind, Violation::Kind::Unquantified);
    EXPECT_NE(v[0].message.find("x2 unquantified"), std::string::npos);

    QbfFormula t;
    t.prefix.exists(1);
    t.matrix.tractable.emplace_back(clause({1, -1}));
    v = validate(t);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].kind, Violation::Kind::Tautology);
    EXPECT_NE(v[0].message.find("tautological clause"), std::string::npos);

    QbfFormula d;
    d.prefix.exists(1);
    d.prefix.forall(1);
    EXPECT_EQ(validate(d).at(0).kind, Violation::Kind::DuplicatePrefixVar);

    QbfFormula c = ref::worked_example();
    c.matrix.tractable.emplace_back(clause({1, 2, 3}));
    EXPECT_EQ(validate(c).at(0).kind, Violation::Kind::TractableOutOfClass);
}

namespace {

QbfFormula random_mixed(std::mt19937_64& rng, std::size_t n) {
    RandomParams p;
    p.n = n;
    p.k = std::uniform_int_distribution<std::size_t>(0, n)(rng);
    p.cls = rng() % 2 ? BaseClass::aff() : BaseClass::two_cnf();
    return gen_random(p, rng());
}

PartialAssignment random_partial(std::mt19937_64& rng, const std::set<Var>& domain, double p) {
    PartialAssignment tau;
    for (Var v : domain) {
        if (std::bernoulli_distribution(p)(rng)) tau.set(v, rng() % 2);
    }
    return tau;
}

}  // namespace

TEST(ApplyAssignmentProperty, CompositionOfDisjointAssignments) {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        const auto f = random_mixed(rng, 8);
        const auto all = f.variables();
        const auto t1 = random_partial(rng, all, 0.3);
        std::set<Var> rest;
        for (Var v : all) {
            if (!t1.contains(v)) rest.insert(v);
        }
        const auto t2 = random_partial(rng, rest, 0.3);
        const auto stepwise = apply_assignment(apply_assignment(f, t1), t2);
        EXPECT_EQ(stepwise, apply_assignment(f, t1.merged(t2)));
    }
}

TEST(ApplyAssignmentProperty, AgreesWithGroundEvaluation) {
    std::mt19937_64 rng(12);
    for (int iter = 0; iter < 300; ++iter) {
        const auto f = random_mixed(rng, 7);
        const auto all = f.variables();
        const auto tau = random_partial(rng, all, 0.5);
        const auto g = apply_assignment(f, tau);
        for (int s = 0; s < 4; ++s) {
            PartialAssignment sigma = tau;
            PartialAssignment rest;
            for (Var v : all) {
                if (tau.contains(v)) continue;
                const bool b = rng() % 2;
                sigma.set(v, b);
                rest.set(v, b);
            }
            EXPECT_EQ(eval_matrix(f.matrix, sigma), eval_matrix(g.matrix, rest));
        }
        EXPECT_EQ(g.matrix.tractable.size() + g.matrix.backdoor.size() <= f.matrix.atom_count(), true);
    }
}

TEST(ApplyAssignmentProperty, PartitionsNeverMix) {
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 200; ++iter) {
        const auto f = random_mixed(rng, 8);
        const auto g = apply_assignment(f, random_partial(rng, f.variables(), 0.4));
        EXPECT_LE(g.matrix.backdoor.size(), f.matrix.backdoor.size());
        EXPECT_LE(g.matrix.tractable.size(), f.matrix.tractable.size());
        for (const auto& c : g.matrix.backdoor) {
            bool found = false;
            for (const auto& orig : f.matrix.backdoor) {
                found = found || std::includes(orig.literals().begin(), orig.literals().end(), c.literals().begin(),
                                               c.literals().end());
            }
            EXPECT_TRUE(found);
        }
    }
}
