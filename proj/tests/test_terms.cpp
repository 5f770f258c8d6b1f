#include <gtest/gtest.h>

#include "treeitp/ops.hpp"
#include "treeitp/printer.hpp"

#include "support/session.hpp"

using namespace treeitp;
using treeitp::testing::Session;

namespace {

const char* kDecls =
    "(declare-sort U)\n"
    "(declare-fun f (U) U)\n"
    "(declare-fun c () U)\n"
    "(declare-fun d () U)\n"
    "(declare-fun p (U) Bool)\n"
    "(declare-fun x () Real)\n"
    "(declare-fun y () Real)\n"
    "(declare-fun g (Real) Real)\n"
    "(tree (leaf L))\n";

}  // namespace

TEST(Terms, ApplicationsAreHashConsed) {
    Session s({kDecls});
    EXPECT_EQ(s.term("(f (f c))"), s.term("(f (f c))"));
    EXPECT_NE(s.term("(f c)"), s.term("(f d)"));
    EXPECT_EQ(s.formula("(and (= c d) (p c))"), s.formula("(and (= c d) (p c))"));
}

TEST(Terms, EqualityIsOrientedById) {
    Session s({kDecls});
    EXPECT_EQ(s.formula("(= c (f d))"), s.formula("(= (f d) c)"));
    Literal l = s.ctx.eq(s.term("(f d)"), s.term("c"));
    EXPECT_LE(l.atom->lhs.id(), l.atom->rhs.id());
}

TEST(Terms, InequalitiesAreNormalized) {
    Session s({kDecls});
    EXPECT_EQ(s.formula("(<= (* 2 x) 4)"), s.formula("(<= x 2)"));
    EXPECT_EQ(s.formula("(>= x y)"), s.formula("(<= (- y x) 0)"));
    EXPECT_EQ(s.formula("(< x y)"), s.ctx.mk_not(s.formula("(<= y x)")));
    EXPECT_TRUE(s.formula("(<= 1 2)")->is_true());
    EXPECT_TRUE(s.formula("(< 2 2)")->is_false());
}

TEST(Terms, LinearTermsCollectLikeMonomials) {
    Session s({kDecls});
    EXPECT_EQ(s.term("(+ x x (- y y))"), s.term("(* 2 x)"));
    EXPECT_EQ(s.term("(- (+ x 1) 1)"), s.term("x"));
    LinearForm form = s.ctx.linear_form(s.term("(+ (* 3 (g x)) y 5)"));
    EXPECT_EQ(form.monomials.size(), 2u);
    EXPECT_EQ(form.constant, 5);
}

TEST(Terms, NegationIsPushedInward) {
    Session s({kDecls});
    Formula f = s.formula("(forall ((z U)) (or (= z c) (p z)))");
    Formula n = s.ctx.mk_not(f);
    EXPECT_EQ(n->kind, FormulaKind::Exists);
    EXPECT_EQ(n->body()->kind, FormulaKind::And);
    EXPECT_EQ(s.ctx.mk_not(n), f);
    EXPECT_EQ(s.formula("(not (and (= c d) (<= x y)))"), s.formula("(or (not (= c d)) (> x y))"));
}

TEST(Terms, JunctionsFlattenAndFold) {
    Session s({kDecls});
    EXPECT_EQ(s.formula("(and (= c d) (and (p c) true))"), s.formula("(and (= c d) (p c))"));
    EXPECT_TRUE(s.formula("(or (= c d) true)")->is_true());
    EXPECT_TRUE(s.formula("(and (= c d) false)")->is_false());
}

TEST(Terms, SubstitutionAvoidsCapture) {
    Session s({kDecls});
    Sort u = s.ctx.find_sort("U");
    Term z = s.ctx.var("z", u);
    Term w = s.ctx.var("w", u);
    Formula body = s.ctx.equal(z, w);
    Formula f = s.ctx.forall({w}, body);  // forall w. z = w
    Formula g = substitute(s.ctx, f, Substitution{{z, w}});
    ASSERT_EQ(g->kind, FormulaKind::Forall);
    EXPECT_NE(g->bound.front(), w);
    EXPECT_EQ(g->free_vars, std::vector<Term>{w});
}

TEST(Terms, AlphaEquivalence) {
    Session s({kDecls});
    Formula a = s.formula("(forall ((u U)) (exists ((v U)) (= (f u) v)))");
    Formula b = s.formula("(forall ((v U)) (exists ((u U)) (= (f v) u)))");
    Formula c = s.formula("(exists ((v U)) (forall ((u U)) (= (f u) v)))");
    EXPECT_TRUE(alpha_equivalent(s.ctx, a, b));
    EXPECT_FALSE(alpha_equivalent(s.ctx, a, c));
}

TEST(Terms, SymbolsAndSubterms) {
    Session s({kDecls});
    SymbolSet syms = symbs(s.formula("(and (p (f c)) (<= (g x) 1))"));
    std::set<std::string> names;
    for (FunSym f : syms)
        names.insert(f->name);
    EXPECT_EQ(names, (std::set<std::string>{"p", "f", "c", "g", "x"}));
    EXPECT_EQ(subterms(s.term("(f (f c))")).size(), 3u);
    EXPECT_TRUE(occurs_in(s.term("c"), s.term("(f (f c))")));
    EXPECT_FALSE(occurs_in(s.term("d"), s.term("(f (f c))")));
}

TEST(Printer, OutputReparsesToTheSameFormula) {
    Session s({kDecls});
    const std::vector<std::string> inputs{
        "(forall ((u U)) (exists ((v U)) (and (= (f u) v) (not (p v)))))",
        "(or (< (+ (* 2 x) (g y)) 3) (= (g x) y))",
        "(and (p c) (not (= c d)) (>= (/ x 3) -1/2))",
        "(exists ((r Real)) (forall ((q Real)) (> (g q) r)))",
    };
    for (const std::string& text : inputs) {
        Formula f = s.formula(text);
        std::string printed = to_string(f);
        EXPECT_EQ(s.formula(printed), f) << printed;
        EXPECT_EQ(to_string(s.formula(printed)), printed);
    }
}
