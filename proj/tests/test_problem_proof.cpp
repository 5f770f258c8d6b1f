#include <gtest/gtest.h>

#include "treeitp/printer.hpp"
#include "treeitp/proof.hpp"

#include "support/data.hpp"
#include "support/session.hpp"

using namespace treeitp;
using treeitp::testing::read_data;
using treeitp::testing::Session;

namespace {

std::vector<std::string> example1() {
    return {read_data("example1.smt"), read_data("example1.proof")};
}

const char* kSmall =
    "(declare-sort U)\n"
    "(declare-fun a () U)\n"
    "(declare-fun b () U)\n"
    "(declare-fun c () U)\n"
    "(tree (node r L M) (leaf L (= a b)) (leaf M (= b c) (not (= a c))))\n";

}  // namespace

TEST(Parser, ReportsLineAndColumn) {
    Context ctx;
    TermParser parser(ctx);
    try {
        read_document(parser, {"(declare-sort U)\n(declare-fun a () U)\n(tree (leaf L (= a q)))"});
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
        EXPECT_GT(e.column(), 1);
    }
}

TEST(Parser, RejectsUnbalancedInput) {
    Context ctx;
    TermParser parser(ctx);
    EXPECT_THROW(read_document(parser, {"(declare-sort U"}), ParseError);
}

TEST(Parser, RejectsIllSortedTerms) {
    Context ctx;
    TermParser parser(ctx);
    EXPECT_THROW(read_document(parser, {"(declare-sort U)\n(declare-fun a () U)\n"
                                        "(declare-fun x () Real)\n(tree (leaf L (= a x)))"}),
                 Error);
}

TEST(Problem, TreeStructure) {
    Session s(example1());
    const TreeProblem& p = s.problem();
    EXPECT_EQ(p.num_nodes(), 5u);
    EXPECT_EQ(p.num_partitions(), 3u);
    EXPECT_EQ(p.node(p.root()).name, "123");
    EXPECT_EQ(p.subtree_leaves("23").count(), 2u);
    EXPECT_EQ(p.subtree_leaves("123"), p.all());
    EXPECT_FALSE(p.subtree_leaves("1").intersects(p.subtree_leaves("23")));
    // Children come before parents.
    const auto& post = p.postorder();
    EXPECT_EQ(post.back(), p.root());
}

TEST(Problem, OccurrenceMap) {
    Session s(example1());
    const TreeProblem& p = s.problem();
    FunSym g = s.parser.find_fun("g");
    FunSym f = s.parser.find_fun("f");
    EXPECT_EQ(p.partitions(g), p.all());
    EXPECT_EQ(p.partitions(f), p.singleton(p.find_partition("3")));
}

TEST(Problem, BinarizesWideAndLabelledNodes) {
    Session s({"(declare-sort U)\n(declare-fun a () U)\n"
               "(tree (node r A B C :label (= a a)) (leaf A) (leaf B) (leaf C))"});
    EXPECT_TRUE(s.doc.binarized);
    const TreeProblem& p = s.problem();
    EXPECT_EQ(p.num_partitions(), 4u);
    for (int v = 0; v < static_cast<int>(p.num_nodes()); ++v)
        EXPECT_TRUE(p.node(v).children.empty() || p.node(v).children.size() == 2);
}

TEST(Problem, RejectsCycles) {
    Context ctx;
    TermParser parser(ctx);
    EXPECT_THROW(read_document(parser, {"(tree (node r A r) (leaf A))"}), Error);
}

TEST(Proof, ExampleChecks) {
    Session s(example1());
    EXPECT_EQ(s.doc.proof.size(), 15u);
    CheckReport report = check_proof(s.doc.proof, s.problem());
    EXPECT_TRUE(report.ok());
    EXPECT_TRUE(s.doc.proof.node(s.doc.proof.root()).clause.empty());
    EXPECT_EQ(s.doc.proof.node(s.doc.proof.root()).name, "bot");
}

TEST(Proof, DerivesImplicitClauses) {
    Session s({kSmall,
               "(input i1 :partition L (= a b))\n"
               "(input i2 :partition M (= b c))\n"
               "(input i3 :partition M (not (= a c)))\n"
               "(lemma t :trans (a b c))\n"
               "(res r1 :pos i1 :neg t :pivot (= a b))\n"
               "(res r2 :pos i2 :neg r1 :pivot (= b c))\n"
               "(res r3 :pos r2 :neg i3 :pivot (= a c))\n"});
    EXPECT_TRUE(check_proof(s.doc.proof, s.problem()).ok());
    const ProofNode& t = s.doc.proof.node(s.proof_node("t"));
    EXPECT_EQ(to_string(t.clause).find("(= a c)") != std::string::npos, true);
    EXPECT_TRUE(s.doc.proof.node(s.proof_node("r3")).clause.empty());
}

TEST(Proof, FlagsInputOutsideItsPartition) {
    Session s({kSmall, "(input i1 :partition M (= a b))\n"});
    EXPECT_FALSE(check_proof(s.doc.proof, s.problem()).ok());
}

TEST(Proof, FlagsWrongPivotPolarity) {
    Context ctx;
    TermParser parser(ctx);
    auto read = [&] {
        Document d = read_document(
            parser, {kSmall,
                     "(input i1 :partition L (= a b))\n"
                     "(input i2 :partition M (= b c))\n"
                     "(input i3 :partition M (not (= a c)))\n"
                     "(lemma t :trans (a b c))\n"
                     "(res r1 :pos t :neg i1 :pivot (= a b))\n"});
        return check_proof(d.proof, d.problem->problem).ok();
    };
    bool ok = true;
    try {
        ok = read();
    } catch (const MalformedProof&) {
        ok = false;
    }
    EXPECT_FALSE(ok);
}

TEST(Proof, RejectsDanglingAndCyclicReferences) {
    Context ctx;
    TermParser parser(ctx);
    EXPECT_THROW(read_document(parser, {kSmall, "(res r1 :pos nowhere :neg r1 :pivot (= a b))\n"}),
                 MalformedProof);
    Context ctx2;
    TermParser parser2(ctx2);
    EXPECT_THROW(read_document(parser2, {kSmall, "(res r1 :pos r2 :neg r2 :pivot (= a b))\n"
                                                 "(res r2 :pos r1 :neg r1 :pivot (= a b))\n"}),
                 MalformedProof);
}

TEST(Proof, FarkasCoefficientsAreChecked) {
    Session s({"(declare-fun x () Real)\n(declare-fun y () Real)\n"
               "(tree (node r L M) (leaf L (<= x y)) (leaf M (< y x)))\n"});
    Literal le = s.parser.literal(read_sexprs("(<= x y)").front());
    Literal lt = s.parser.literal(read_sexprs("(< y x)").front());
    EXPECT_EQ(farkas_problem(FarkasStep{{{1, le}, {1, lt}}}), "");
    EXPECT_NE(farkas_problem(FarkasStep{{{2, le}, {1, lt}}}), "");
    EXPECT_NE(farkas_problem(FarkasStep{{{-1, le}, {-1, lt}}}), "");
    Inequality q = as_inequality(lt);
    EXPECT_TRUE(q.strict);
}

TEST(Proof, TrichotomyAndCongruenceClauses) {
    Session s(example1());
    Clause tricho = lemma_clause(s.ctx, TrichotomyStep{s.term("(g (h b))"), s.term("b")});
    EXPECT_EQ(tricho.size(), 3u);
    Clause cong = lemma_clause(
        s.ctx, CongruenceStep{s.parser.find_fun("f"), {s.term("(g (h b))")}, {s.term("b")}, {}});
    EXPECT_EQ(cong, s.doc.proof.node(s.proof_node("cong")).clause);
}
