#include <gtest/gtest.h>

#include "treeitp/printer.hpp"
#include "treeitp/validator.hpp"

#include "support/data.hpp"
#include "support/random_proof.hpp"
#include "support/session.hpp"

using namespace treeitp;
using namespace treeitp::testing;

namespace {

std::vector<std::string> example1() {
    return {read_data("example1.smt"), read_data("example1.proof")};
}

std::vector<std::string> congruence() {
    return {read_data("congruence_mono.smt"), read_data("congruence.proof")};
}

struct Pipeline {
    Session session;
    Colouring colouring;
    Interpolator interpolator;
    Validator validator;

    Pipeline(const std::vector<std::string>& texts, ColouringOptions options, bool from_file = false)
        : session(texts),
          colouring(assign_colours(session.doc.proof, session.problem(),
                                   from_file ? ColouringOptions{ColouringStrategy::Fixed, 0,
                                                                session.doc.colours}
                                             : options)),
          interpolator(session.problem(), session.doc.proof, colouring),
          validator(session.problem(), session.doc.proof, interpolator, OracleBudget{}) {}
};

}  // namespace

TEST(Validator, ObligationCounts) {
    Pipeline r(example1(), {}, true);
    std::vector<Obligation> all = r.validator.obligations(ValidationLevel::Full);
    // Per proof node: root, 5 symbol, 3 leaf-ind, and the disjoint pairs of 5 nodes.
    std::size_t per_node = 1 + 5 + 3 + 4;
    EXPECT_EQ(all.size(), 15 * per_node);
    EXPECT_EQ(r.validator.obligations(ValidationLevel::Syntactic).size(), 15u * 6);
    EXPECT_TRUE(r.validator.obligations(ValidationLevel::Off).empty());
    EXPECT_EQ(r.validator.obligations(ValidationLevel::Full, 0).size(), per_node);
}

TEST(Validator, ExamplesValidateWithoutUnknowns) {
    for (const auto& texts : {example1(), congruence()}) {
        Pipeline r(texts, {}, true);
        ValidationReport report = r.validator.check_all(ValidationLevel::Full);
        EXPECT_EQ(report.failed(), 0u);
        EXPECT_EQ(report.unknown(), 0u);
        EXPECT_TRUE(report.ok());
    }
}

TEST(Validator, SerialAndParallelReportsAgree) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        Pipeline a(example1(), ColouringOptions{ColouringStrategy::Random, seed, {}});
        EXPECT_EQ(a.validator.check_all(ValidationLevel::Full),
                  a.validator.check_all_serial(ValidationLevel::Full));
        Pipeline b(congruence(), ColouringOptions{ColouringStrategy::Random, seed, {}});
        EXPECT_EQ(b.validator.check_all(ValidationLevel::Full),
                  b.validator.check_all_serial(ValidationLevel::Full));
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        RandomProof rp = random_proof(seed);
        Pipeline r({rp.problem, rp.proof}, ColouringOptions{ColouringStrategy::Random, seed, {}});
        EXPECT_EQ(r.validator.check_all(ValidationLevel::Full),
                  r.validator.check_all_serial(ValidationLevel::Full));
    }
}

TEST(Validator, FlippedPartialLiteralIsCaught) {
    Pipeline r(example1(), {}, true);
    Context& ctx = r.session.ctx;
    const TreeProblem& problem = r.session.problem();
    Oracle oracle(ctx, OracleBudget{});
    int mutated = 0;
    for (const char* name : {"inst1", "r0", "r1", "r3", "cong", "r5"}) {
        int i = r.session.proof_node(name);
        const InterpolantVector& vec = r.interpolator.at(i);
        std::vector<Obligation> obligations = r.validator.obligations(ValidationLevel::Full, i);
        for (int v = 0; v < static_cast<int>(problem.num_nodes()); ++v) {
            if (!vec.at[v]->is_lit())
                continue;
            Formula flipped = ctx.mk_not(vec.at[v]);
            auto entry = [&](int w) { return w == v ? flipped : vec.at[w]; };
            int failing = 0;
            for (Obligation o : obligations) {
                if (o.kind == ObligationKind::LeafInd && o.tree_nodes[0] == v) {
                    o.conclusion = flipped;
                } else if (o.kind == ObligationKind::TreeInd) {
                    int a = o.tree_nodes[0];
                    int b = o.tree_nodes[1];
                    if (a == v || b == v)
                        o.premise = ctx.mk_and({entry(a), entry(b)});
                    else if ((problem.subtree_leaves(a) | problem.subtree_leaves(b)) ==
                             problem.subtree_leaves(v))
                        o.conclusion = flipped;
                    else
                        continue;
                } else {
                    continue;
                }
                if (r.validator.check(o, oracle).failed())
                    ++failing;
            }
            EXPECT_GE(failing, 1) << name << " at " << problem.node(v).name;
            ++mutated;
        }
    }
    EXPECT_EQ(mutated, 16);
}

TEST(Validator, SymbolConditionRejectsLocalSymbols) {
    Pipeline r(example1(), {}, true);
    const TreeProblem& problem = r.session.problem();
    int bot = r.session.doc.proof.root();
    ValidationReport report = r.validator.check_all(ValidationLevel::Syntactic, bot);
    EXPECT_EQ(report.failed(), 0u);
    // h occurs only in partition 1, so it cannot appear in the interpolant of node 1.
    SymbolSet shared = symbs(r.interpolator.at(bot).at[problem.find_node("1")]);
    EXPECT_EQ(shared.count(r.session.parser.find_fun("h")), 0u);
}
