#include <gtest/gtest.h>

#include <random>

#include "ccqbf/ccqbf.hpp"
#include "reference.hpp"

using namespace ccqbf;
using ref::clause;

TEST(BaseClassTags, RoundTrip) {
    for (auto c : {BaseClass::two_cnf(), BaseClass::horn(), BaseClass::dual_horn(), BaseClass::bounded_horn(3),
                   BaseClass::aff(), BaseClass::ihsb_minus(), BaseClass::ihsb_plus(),
                   BaseClass::bounded_ihsb_minus(3), BaseClass::bounded_ihsb_plus(4),
                   BaseClass::pos_and_neg_units(), BaseClass::neg_and_pos_units()}) {
        EXPECT_EQ(parse_base_class(to_string(c)), c) << to_string(c);
        EXPECT_EQ(c.dual().dual(), c);
    }
    EXPECT_THROW(parse_base_class("nope"), UnknownTag);
    EXPECT_EQ(BaseClass::horn().dual(), BaseClass::dual_horn());
    EXPECT_EQ(BaseClass::pos_and_neg_units().dual(), BaseClass::neg_and_pos_units());
}

TEST(AtomInClass, Examples) {
    const auto c345 = clause({-3, -4, -5});
    EXPECT_TRUE(atom_in_class(c345, BaseClass::horn()));
    EXPECT_FALSE(atom_in_class(c345, BaseClass::two_cnf()));
    EXPECT_TRUE(atom_in_class(clause({-1, 2}), BaseClass::ihsb_minus()));
    EXPECT_FALSE(atom_in_class(clause({1, 2, -3}), BaseClass::ihsb_plus()));
    EXPECT_TRUE(atom_in_class(clause({1, 2, 3}), BaseClass::ihsb_plus()));
    EXPECT_FALSE(atom_in_class(clause({1, 2, 3, 4}), BaseClass::bounded_ihsb_plus(3)));
    EXPECT_TRUE(atom_in_class(clause({1, 2, 3}), BaseClass::pos_and_neg_units()));
    EXPECT_TRUE(atom_in_class(clause({-1}), BaseClass::pos_and_neg_units()));
    EXPECT_FALSE(atom_in_class(clause({-1, -2}), BaseClass::pos_and_neg_units()));
    EXPECT_FALSE(atom_in_class(clause({1, -2}), BaseClass::pos_and_neg_units()));
    EXPECT_TRUE(atom_in_class(Atom{AffineEquation::from_ids({1, 2, 3}, true)}, BaseClass::aff()));
    EXPECT_FALSE(atom_in_class(Atom{clause({1})}, BaseClass::aff()));
    EXPECT_FALSE(atom_in_class(Atom{AffineEquation::from_ids({1, 2}, true)}, BaseClass::two_cnf()));
}

TEST(Detect, ExampleBackdoor) {
    const auto atoms = all_atoms(ref::worked_example().matrix);
    const auto d = detect_cc_backdoor(atoms, BaseClass::two_cnf());
    EXPECT_EQ(d.backdoor_vars, (std::set<Var>{Var{3}, Var{4}, Var{5}}));
    EXPECT_EQ(d.out_indices, (std::set<std::size_t>{4}));
    EXPECT_EQ(d.k(), 3u);
}

TEST(Detect, InClassMatrixHasEmptyBackdoor) {
    std::vector<Atom> atoms{clause({1, 2}), clause({-1})};
    const auto d = detect_cc_backdoor(atoms, BaseClass::two_cnf());
    EXPECT_TRUE(d.backdoor_vars.empty());
    EXPECT_TRUE(d.out_indices.empty());
}

TEST(Detect, ClausesOnlyIntoAffCoverEverything) {
    std::vector<Atom> atoms{clause({1, 2}), clause({-3})};
    const auto d = detect_cc_backdoor(atoms, BaseClass::aff());
    EXPECT_EQ(d.out_indices.size(), 2u);
    EXPECT_EQ(d.k(), 3u);
}

TEST(Detect, EquationOutsideClassIsRejected) {
    std::vector<Atom> atoms{AffineEquation::from_ids({1, 2}, true)};
    EXPECT_THROW(detect_cc_backdoor(atoms, BaseClass::two_cnf()), ClassError);
}

TEST(Partition, MovesOutOfClassClauses) {
    QbfFormula f = ref::worked_example();
    f.matrix.tractable.emplace_back(f.matrix.backdoor[0]);
    f.matrix.backdoor.clear();
    f.base_class.reset();
    EXPECT_EQ(partition(f, BaseClass::two_cnf()), ref::worked_example());
}

TEST(Rank, ExampleHasTwoCnfThree) {
    const auto ranks = rank_classes(all_atoms(ref::worked_example().matrix));
    bool found = false;
    for (const auto& r : ranks) {
        if (r.cls == BaseClass::two_cnf()) {
            found = true;
            EXPECT_EQ(r.k, 3u);
            EXPECT_TRUE(r.fpt);
        }
    }
    EXPECT_TRUE(found);
    for (std::size_t i = 1; i < ranks.size(); ++i) EXPECT_LE(ranks[i - 1].k, ranks[i].k);
}

TEST(Rank, PureXorPutsAffFirst) {
    std::vector<Atom> atoms{AffineEquation::from_ids({1, 2, 3}, true), AffineEquation::from_ids({2, 4}, false)};
    const auto ranks = rank_classes(atoms);
    ASSERT_EQ(ranks.size(), 1u);
    EXPECT_EQ(ranks[0].cls, BaseClass::aff());
    EXPECT_EQ(ranks[0].k, 0u);
}

TEST(Rank, NegativeClauses) {
    // three negative clauses: Horn k=0; posneg must cover the two wide ones
    std::vector<Atom> atoms{clause({-1, -2}), clause({-3, -4, -5}), clause({-6})};
    const auto ranks = rank_classes(atoms);
    std::map<std::string, std::size_t> ks;
    for (const auto& r : ranks) ks[to_string(r.cls)] = r.k;
    EXPECT_EQ(ks.at("horn"), 0u);
    EXPECT_EQ(ks.at("posneg"), 5u);
    EXPECT_EQ(ks.at("2cnf"), 3u);
    EXPECT_EQ(ks.at("negpos"), 0u);
    EXPECT_EQ(ks.at("dualhorn"), 5u);
    EXPECT_EQ(ranks.front().k, 0u);
}

TEST(DetectProperty, GeneratedInstancesRespectRequestedK) {
    std::mt19937_64 rng(31);
    const BaseClass classes[] = {BaseClass::two_cnf(), BaseClass::aff(), BaseClass::horn(),
                                 BaseClass::pos_and_neg_units(), BaseClass::ihsb_plus()};
    for (int iter = 0; iter < 1000; ++iter) {
        RandomParams p;
        p.n = 1 + rng() % 14;
        p.k = rng() % (p.n + 1);
        p.cls = classes[rng() % 5];
        const auto f = gen_random(p, rng());
        ASSERT_TRUE(validate(f).empty());
        const auto d = detect_cc_backdoor(all_atoms(f.matrix), p.cls);
        EXPECT_LE(d.k(), p.k);
        // the stored partition covers exactly the out-of-class clauses
        for (const auto& c : f.matrix.backdoor) EXPECT_FALSE(atom_in_class(c, p.cls));
        for (const auto& a : f.matrix.tractable) EXPECT_TRUE(atom_in_class(a, p.cls));
    }
}
