#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "ccqbf/ccqbf.hpp"
#include "languages.hpp"
#include "reference.hpp"

using namespace ccqbf;
using S = ClassifierVerdict::Status;
using namespace lang;

namespace {

S dual_status(S s) {
    if (s == S::OpenDIhsbPlus) return S::OpenDIhsbMinus;
    if (s == S::OpenDIhsbMinus) return S::OpenDIhsbPlus;
    return s;
}

}  // namespace

TEST(Functions, TruthTables) {
    const auto maj = named_function("maj");
    EXPECT_TRUE(maj.apply({true, true, false}));
    EXPECT_FALSE(maj.apply({true, false, false}));
    const auto mn = named_function("mnrty");
    EXPECT_FALSE(mn.apply({true, true, false}));
    EXPECT_TRUE(mn.apply({true, false, false}));
    const auto t3 = named_function("t3");
    EXPECT_TRUE(t3.apply({true, true, false}));
    // threshold "at least two ones": the all-ones input maps to 1
    EXPECT_TRUE(t3.apply({true, true, true}));
    EXPECT_FALSE(t3.apply({true, false, false}));
    EXPECT_EQ(named_function("t5").arity, 5u);
    EXPECT_THROW(named_function("t2"), UnknownTag);
    EXPECT_THROW(named_function("what"), UnknownTag);
}

TEST(Functions, Duals) {
    EXPECT_EQ(dual_function(named_function("min")).table, named_function("max").table);
    EXPECT_EQ(dual_function(named_function("maj")).table, named_function("maj").table);
    EXPECT_EQ(dual_function(named_function("x|(y&~z)")).table, named_function("x&(y|~z)").table);
    for (const char* tag : {"min", "maj", "mnrty", "x&(y|z)", "t4"}) {
        const auto f = named_function(tag);
        const auto dd = dual_function(dual_function(f));
        EXPECT_EQ(dd.table, f.table);
        EXPECT_EQ(dd.name, f.name);
    }
}

TEST(Polymorphism, ImplicationWitness) {
    const auto c = is_polymorphism(named_function("x|(y&~z)"), kImpl);
    ASSERT_FALSE(c.holds);
    EXPECT_FALSE(kImpl.contains(c.image));
    for (auto row : c.witness) EXPECT_TRUE(kImpl.contains(row));
    EXPECT_EQ(apply_columnwise(named_function("x|(y&~z)"), c.witness, 2), c.image);
    // the hand-derived witness: rows (0,0),(1,1),(0,1) give (1,0)
    const std::vector<std::uint32_t> rows{Relation::tuple_from_bits("00"), Relation::tuple_from_bits("11"),
                                          Relation::tuple_from_bits("01")};
    EXPECT_EQ(apply_columnwise(named_function("x|(y&~z)"), rows, 2), Relation::tuple_from_bits("10"));
}

TEST(Polymorphism, Examples) {
    EXPECT_TRUE(is_polymorphism(named_function("maj"), kImpl).holds);
    EXPECT_TRUE(is_polymorphism(named_function("mnrty"), Relation::from_bits("neq", 2, {"01", "10"})).holds);
    EXPECT_THROW(is_polymorphism(named_function("t6"), kOr3, 1000), ParamError);
}

TEST(PolymorphismProperty, AgreesWithIndependentCheck) {
    const char* tags[] = {"min", "max", "maj", "mnrty", "x&(y|z)", "x|(y&z)", "x&(y|~z)", "x|(y&~z)", "t3"};
    for (std::size_t r = 1; r <= 3; ++r) {
        for (std::uint32_t mask = 0; mask < (1u << (1u << r)); ++mask) {
            const auto rel = relation_of("r", r, [&](std::uint32_t t) { return (mask >> t) & 1u; });
            for (const char* tag : tags) {
                const auto f = named_function(tag);
                const auto c = is_polymorphism(f, rel);
                ASSERT_EQ(c.holds, ref::preserves(f, rel)) << tag << " r=" << r << " mask=" << mask;
                if (!c.holds) {
                    for (auto row : c.witness) EXPECT_TRUE(rel.contains(row));
                    EXPECT_FALSE(rel.contains(apply_columnwise(f, c.witness, r)));
                }
            }
        }
    }
}

TEST(PolymorphismProperty, TwoCnfAndAffineRelations) {
    // every relation definable by 2-clauses over 3 coordinates is closed under maj
    std::vector<Clause> all2;
    for (int a = -3; a <= 3; ++a) {
        for (int b = a; b <= 3; ++b) {
            if (a == 0 || b == 0 || a == -b) continue;
            all2.push_back(a == b ? ref::clause({a}) : ref::clause({a, b}));
        }
    }
    const std::vector<Var> vars{Var{1}, Var{2}, Var{3}};
    std::mt19937_64 rng(101);
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<Clause> cs;
        for (const auto& c : all2) {
            if (rng() % 4 == 0) cs.push_back(c);
        }
        const auto models = ref::models(cs, vars);
        if (models.empty()) continue;
        Relation rel{"m", 3, std::set<std::uint32_t>(models.begin(), models.end())};
        EXPECT_TRUE(is_polymorphism(named_function("maj"), rel).holds);
    }
    // affine: solution sets of parity systems over 3 coordinates
    for (std::uint32_t a = 0; a < 8; ++a) {
        for (std::uint32_t b = 0; b < 8; ++b) {
            for (int pa = 0; pa < 2; ++pa) {
                for (int pb = 0; pb < 2; ++pb) {
                    const auto rel = relation_of("aff", 3, [&](std::uint32_t t) {
                        return std::popcount(t & a) % 2 == pa && std::popcount(t & b) % 2 == pb;
                    });
                    if (rel.tuples.empty()) continue;
                    EXPECT_TRUE(is_polymorphism(named_function("mnrty"), rel).holds);
                }
            }
        }
    }
}

TEST(Classify, Goldens) {
    auto v = classify({kImpl}, 4);
    EXPECT_EQ(v.status, S::FPT);
    EXPECT_TRUE(verify_witness(v, {kImpl}));

    const auto two = two_cnf_language();
    v = classify(two, 4);
    EXPECT_EQ(v.status, S::FPT);
    EXPECT_TRUE(verify_witness(v, two));

    v = classify({kXor3}, 4);
    EXPECT_EQ(v.status, S::FPT);
    EXPECT_TRUE(verify_witness(v, {kXor3}));

    const auto horn = horn3_language();
    v = classify(horn, 4);
    EXPECT_EQ(v.status, S::W1Hard);
    EXPECT_TRUE(verify_witness(v, horn));

    const std::vector<Relation> orimpl{kOr3, kImpl};
    v = classify(orimpl, 4);
    EXPECT_EQ(v.status, S::OpenDIhsbPlus);
    EXPECT_EQ(v.d, 3);
    EXPECT_EQ(to_string(v), "Open_dIhsbPlus(3)");
    EXPECT_TRUE(verify_witness(v, orimpl));

    v = classify({kOneInThree}, 4);
    EXPECT_EQ(v.status, S::ParaPspaceHard);
    EXPECT_TRUE(verify_witness(v, {kOneInThree}));
}

TEST(Classify, WitnessRejectedForOtherLanguage) {
    const auto v = classify({kOr3, kImpl}, 4);
    EXPECT_FALSE(verify_witness(v, {kOneInThree}));
}

TEST(Classify, Errors) {
    EXPECT_THROW(classify({}, 4), ParamError);
    EXPECT_THROW(classify({kOr3}, 2), ParamError);
}

TEST(ClassifyProperty, DualitySymmetry) {
    const auto langs = symmetry_suite();
    ASSERT_EQ(langs.size(), 20u);
    for (const auto& g : langs) {
        const auto a = classify(g, 5);
        const auto b = classify(dual_language(g), 5);
        EXPECT_EQ(b.status, dual_status(a.status)) << g[0].name;
        EXPECT_EQ(a.d, b.d);
        EXPECT_TRUE(verify_witness(a, g));
        EXPECT_TRUE(verify_witness(b, dual_language(g)));
    }
}
