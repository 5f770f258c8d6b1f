#include <gtest/gtest.h>

#include "treeitp/interpolator.hpp"
#include "treeitp/oracle.hpp"
#include "treeitp/printer.hpp"
#include "treeitp/simplify.hpp"

#include "support/data.hpp"
#include "support/session.hpp"

using namespace treeitp;
using treeitp::testing::read_data;
using treeitp::testing::Session;

namespace {

const char* kDecls =
    "(declare-sort U)\n"
    "(declare-fun f (U) U)\n"
    "(declare-fun a () U)\n"
    "(declare-fun b () U)\n"
    "(declare-fun p (U) Bool)\n"
    "(tree (leaf L))\n";

void expect_equivalent(Session& s, Formula a, Formula b) {
    Oracle oracle(s.ctx, OracleBudget{});
    EXPECT_TRUE(oracle.implies(a, b).passed()) << to_string(a) << " => " << to_string(b);
    EXPECT_TRUE(oracle.implies(b, a).passed()) << to_string(b) << " => " << to_string(a);
}

}  // namespace

TEST(Simplify, DestructiveEqualityResolution) {
    Session s({kDecls});
    EXPECT_EQ(simplify(s.ctx, s.formula("(exists ((u U)) (and (= u a) (p (f u))))")),
              s.formula("(p (f a))"));
    EXPECT_EQ(simplify(s.ctx, s.formula("(forall ((u U)) (or (not (= u b)) (p u)))")),
              s.formula("(p b)"));
}

TEST(Simplify, MiniScoping) {
    Session s({kDecls});
    Formula f = simplify(s.ctx, s.formula("(forall ((u U)) (or (p a) (p u)))"));
    EXPECT_EQ(f, s.formula("(or (p a) (forall ((u U)) (p u)))"));
    Formula g = simplify(s.ctx, s.formula("(exists ((u U)) (and (p u) (p (f a))))"));
    EXPECT_EQ(g, s.formula("(and (p (f a)) (exists ((u U)) (p u)))")) << to_string(g);
    // The witness u = a makes this one trivially true.
    EXPECT_TRUE(simplify(s.ctx, s.formula("(exists ((u U)) (or (p u) (= u a)))"))->is_true());
}

TEST(Simplify, TrivialLiteralsAndDuplicates) {
    Session s({kDecls});
    EXPECT_TRUE(simplify(s.ctx, s.formula("(or (= a a) (p b))"))->is_true());
    EXPECT_TRUE(simplify(s.ctx, s.formula("(and (p a) (not (p a)))"))->is_false());
    EXPECT_EQ(simplify(s.ctx, s.formula("(and (p a) (or (p a) (p b)))")), s.formula("(p a)"));
    EXPECT_EQ(simplify(s.ctx, s.formula("(or (forall ((u U)) (p u)) (forall ((w U)) (p w)))")),
              s.formula("(forall ((u U)) (p u))"));
}

TEST(Simplify, PreservesEquivalenceOfInterpolants) {
    const std::vector<std::vector<std::string>> inputs{
        {read_data("example1.smt"), read_data("example1.proof")},
        {read_data("congruence_mono.smt"), read_data("congruence.proof")},
        {read_data("congruence_multi.smt"), read_data("congruence.proof")},
    };
    for (const auto& texts : inputs)
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            Session s(texts);
            ColouringOptions options{ColouringStrategy::Random, seed, {}};
            Colouring c = assign_colours(s.doc.proof, s.problem(), options);
            Interpolator itp(s.problem(), s.doc.proof, c);
            for (Formula f : itp.run().at(s.doc.proof.root()).at)
                expect_equivalent(s, f, simplify(s.ctx, f));
        }
}

TEST(Simplify, CongruenceInterpolantBecomesADisequality) {
    Session s({read_data("congruence_mono.smt"), read_data("congruence.proof")});
    ColouringOptions options{ColouringStrategy::Fixed, 0, s.doc.colours};
    Colouring c = assign_colours(s.doc.proof, s.problem(), options);
    Interpolator itp(s.problem(), s.doc.proof, c);
    Formula raw = itp.run().at(s.doc.proof.root()).at[s.tree_node("A")];
    Formula simple = simplify(s.ctx, raw);
    EXPECT_LT(to_string(simple).size(), to_string(raw).size());
    expect_equivalent(s, simple, s.formula("(not (= t s))"));
}
