#include <gtest/gtest.h>

#include <cstdlib>

#include "treeitp/fourier_motzkin.hpp"
#include "treeitp/model.hpp"
#include "treeitp/oracle.hpp"
#include "treeitp/printer.hpp"

#include "support/session.hpp"

using namespace treeitp;
using treeitp::testing::Session;

namespace {

const char* kDecls =
    "(declare-sort U)\n"
    "(declare-fun f (U) U)\n"
    "(declare-fun a () U)\n"
    "(declare-fun b () U)\n"
    "(declare-fun c () U)\n"
    "(declare-fun p (U) Bool)\n"
    "(declare-fun x () Real)\n"
    "(declare-fun y () Real)\n"
    "(declare-fun g (Real) Real)\n"
    "(declare-fun h (Real) Real)\n"
    "(tree (leaf L))\n";

LinearConstraint row(std::map<int, Rational> coeffs, Rational bound, bool strict = false) {
    return LinearConstraint{std::move(coeffs), bound, strict};
}

}  // namespace

TEST(FourierMotzkin, DetectsInfeasibility) {
    FourierMotzkin fm;
    EXPECT_EQ(fm.solve({row({{0, 1}}, 1), row({{0, -1}}, -2)}, 1), FmResult::Unsat);
    EXPECT_EQ(fm.solve({row({{0, 1}, {1, -1}}, 0), row({{1, 1}, {0, -1}}, 0, true)}, 2),
              FmResult::Unsat);
}

TEST(FourierMotzkin, ModelsSatisfyStrictConstraints) {
    FourierMotzkin fm;
    std::vector<LinearConstraint> rows{row({{0, 1}}, 1, true), row({{0, -1}}, 0, true),
                                       row({{0, 1}, {1, -1}}, 0, true)};
    std::vector<Rational> model;
    ASSERT_EQ(fm.solve(rows, 2, &model), FmResult::Sat);
    EXPECT_GT(model[0], 0);
    EXPECT_LT(model[0], 1);
    EXPECT_LT(model[0], model[1]);
}

TEST(FourierMotzkin, RespectsTheConstraintBudget) {
    FourierMotzkin fm(4);
    std::vector<LinearConstraint> rows;
    // Every variable occurs with both signs, so any elimination order blows up.
    for (int i = 0; i < 6; ++i) {
        int sign = i % 2 ? -1 : 1;
        rows.push_back(row({{0, sign}, {1, sign * (i + 1)}, {2, -sign * (7 - i)}}, 10));
        rows.push_back(row({{0, -sign}, {1, sign * (2 * i + 3)}, {2, sign * (i + 2)}}, 10));
    }
    EXPECT_EQ(fm.solve(rows, 3), FmResult::Budget);
    EXPECT_EQ(FourierMotzkin().solve(rows, 3), FmResult::Sat);
}

TEST(Theory, CongruenceConflicts) {
    Session s({kDecls});
    auto lit = [&](const char* t) { return s.parser.literal(read_sexprs(t).front()); };
    OracleBudget budget;
    EXPECT_EQ(theory_check(s.ctx, {lit("(= a b)"), lit("(not (= (f a) (f b)))")}, budget),
              TheoryResult::Unsat);
    EXPECT_EQ(theory_check(s.ctx, {lit("(= a b)"), lit("(not (= (f a) (f c)))")}, budget),
              TheoryResult::Sat);
    EXPECT_EQ(theory_check(s.ctx, {lit("(= a b)"), lit("(p a)"), lit("(not (p b))")}, budget),
              TheoryResult::Unsat);
}

TEST(Theory, ArithmeticEqualitiesReachUninterpretedFunctions) {
    Session s({kDecls});
    auto lit = [&](const char* t) { return s.parser.literal(read_sexprs(t).front()); };
    OracleBudget budget;
    EXPECT_EQ(theory_check(s.ctx, {lit("(<= x y)"), lit("(<= y x)"), lit("(not (= (g x) (g y)))")},
                           budget),
              TheoryResult::Unsat);
    EXPECT_EQ(theory_check(s.ctx, {lit("(<= x y)"), lit("(not (= (g x) (g y)))")}, budget),
              TheoryResult::Sat);
    EXPECT_EQ(theory_check(s.ctx, {lit("(= (g x) (+ y 1))"), lit("(<= (g x) y)")}, budget),
              TheoryResult::Unsat);
}

TEST(Theory, ModelsEvaluateTheLiterals) {
    Session s({kDecls});
    std::vector<Literal> lits;
    for (const char* t : {"(< x y)", "(= (g x) (h y))", "(not (= (g y) (h y)))", "(not (= a b))",
                          "(= (f a) b)"})
        lits.push_back(s.parser.literal(read_sexprs(t).front()));
    Model m;
    ASSERT_EQ(theory_check(s.ctx, lits, OracleBudget{}, &m), TheoryResult::Sat);
    for (const Literal& l : lits)
        EXPECT_EQ(m.eval(s.ctx.lit(l)), std::optional<bool>(true)) << to_string(l);
}

TEST(Oracle, GroundImplications) {
    Session s({kDecls});
    Oracle oracle(s.ctx, OracleBudget{});
    auto implies = [&](const char* p, const char* c) {
        return oracle.implies(s.formula(p), s.formula(c)).kind;
    };
    EXPECT_EQ(implies("(and (= a b) (= b c))", "(= (f a) (f c))"), VerdictKind::Valid);
    EXPECT_EQ(implies("(and (<= x 0) (<= (- x) -1))", "false"), VerdictKind::Valid);
    EXPECT_EQ(implies("(or (= a b) (= a c))", "(= a b)"), VerdictKind::Countermodel);
    EXPECT_EQ(implies("(< x y)", "(<= (g x) (g y))"), VerdictKind::Countermodel);
}

TEST(Oracle, CountermodelsNameTheSymbols) {
    Session s({kDecls});
    Oracle oracle(s.ctx, OracleBudget{});
    Verdict v = oracle.implies(s.formula("(= a b)"), s.formula("(= a c)"));
    ASSERT_EQ(v.kind, VerdictKind::Countermodel);
    EXPECT_NE(v.detail.find("c"), std::string::npos);
}

TEST(Oracle, QuantifiedImplications) {
    Session s({kDecls});
    Oracle oracle(s.ctx, OracleBudget{});
    Formula phi = s.formula("(forall ((u Real)) (<= (g (h u)) u))");
    EXPECT_EQ(oracle.implies(phi, s.formula("(forall ((u Real)) (exists ((w Real)) (<= (g w) u)))"))
                  .kind,
              VerdictKind::Valid);
    // Swapping the quantifiers gives a stronger formula that does not follow.
    Verdict swapped =
        oracle.implies(phi, s.formula("(exists ((w Real)) (forall ((u Real)) (<= (g w) u)))"));
    EXPECT_FALSE(swapped.passed());
    EXPECT_EQ(oracle.implies(s.formula("(forall ((u U)) (= (f u) a))"), s.formula("(= (f (f b)) a)"))
                  .kind,
              VerdictKind::Valid);
}

TEST(Oracle, FiniteModelsRefuteEufImplications) {
    Session s({kDecls});
    Oracle oracle(s.ctx, OracleBudget{});
    Verdict v = oracle.implies(s.formula("(forall ((u U)) (p (f u)))"),
                               s.formula("(forall ((u U)) (p u))"));
    EXPECT_EQ(v.kind, VerdictKind::Countermodel);
    Verdict w = oracle.implies(s.formula("(exists ((u U)) (not (= u a)))"),
                               s.formula("(exists ((u U) (w U)) (not (= u w)))"));
    EXPECT_TRUE(w.passed());
}

TEST(Oracle, FiniteModelSearch) {
    Session s({kDecls});
    Sort u = s.ctx.find_sort("U");
    Formula two = s.formula("(and (not (= a b)) (forall ((z U)) (or (= z a) (= z b))))");
    EXPECT_EQ(finite_model(s.ctx, two, {{u, 1}}, 10000), SearchResult::Unsat);
    Model m;
    EXPECT_EQ(finite_model(s.ctx, two, {{u, 2}}, 10000, &m), SearchResult::Sat);
    EXPECT_EQ(m.eval(two), std::optional<bool>(true));
}

TEST(Oracle, BudgetParsing) {
    OracleBudget b = OracleBudget::parse("fm=10,decisions=20,instances=30,rounds=2,nodes=40,domain=5",
                                         OracleBudget{});
    EXPECT_EQ(b.fm_constraints, 10u);
    EXPECT_EQ(b.decisions, 20u);
    EXPECT_EQ(b.instances, 30u);
    EXPECT_EQ(b.rounds, 2);
    EXPECT_EQ(b.model_nodes, 40u);
    EXPECT_EQ(b.domain_size, 5);
    EXPECT_THROW(OracleBudget::parse("fm=", OracleBudget{}), Error);
    EXPECT_THROW(OracleBudget::parse("colour=3", OracleBudget{}), Error);

    setenv("TREEITP_BUDGET", "domain=2", 1);
    EXPECT_EQ(OracleBudget::from_env(OracleBudget{}).domain_size, 2);
    unsetenv("TREEITP_BUDGET");
    EXPECT_EQ(OracleBudget::from_env(OracleBudget{}).domain_size, 3);
}

TEST(Oracle, SkolemizationRemovesExistentials) {
    Session s({kDecls});
    Formula f = skolemize(s.ctx, s.formula("(forall ((u U)) (exists ((w U)) (= (f w) u)))"));
    ASSERT_EQ(f->kind, FormulaKind::Forall);
    EXPECT_EQ(f->body()->kind, FormulaKind::Lit);
}
