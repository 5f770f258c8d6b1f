#include <gtest/gtest.h>

#include <sstream>

#include "treeitp/printer.hpp"

#include "support/data.hpp"
#include "support/mutations.hpp"
#include "support/session.hpp"

using namespace treeitp;
using namespace treeitp::testing;

namespace {

std::vector<std::string> example1() {
    return {read_data("example1.smt"), read_data("example1.proof")};
}

RunConfig from_file() {
    RunConfig config;
    config.colouring = ColouringSource::File;
    return config;
}

std::vector<std::string> lines_starting(const std::string& text, const std::string& prefix) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (line.starts_with(prefix))
            out.push_back(line);
    return out;
}

}  // namespace

TEST(Driver, ExampleRunSucceeds) {
    RunOutput r = run_texts(from_file(), example1());
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(lines_starting(r.out, "(interpolant ").size(), 4u);
    EXPECT_NE(r.out.find("(summary :obligations 195 :valid 195 :bounded 0 :failed 0 :unknown 0)"),
              std::string::npos);
    EXPECT_TRUE(r.err.empty()) << r.err;
}

TEST(Driver, OutputIsDeterministic) {
    for (ColouringSource source : {ColouringSource::File, ColouringSource::Heuristic}) {
        RunConfig config;
        config.colouring = source;
        config.dump_partials = true;
        config.simplify = true;
        RunOutput a = run_texts(config, example1());
        RunOutput b = run_texts(config, example1());
        EXPECT_EQ(a.out, b.out);
        RunConfig serial = config;
        serial.parallel = false;
        EXPECT_EQ(run_texts(serial, example1()).out, a.out);
    }
    RunConfig random;
    random.colouring = ColouringSource::Random;
    random.seed = 11;
    EXPECT_EQ(run_texts(random, example1()).out, run_texts(random, example1()).out);
}

TEST(Driver, PrintedInterpolantsReparse) {
    for (bool simplify : {false, true}) {
        RunConfig config = from_file();
        config.simplify = simplify;
        config.validate = ValidationLevel::Off;
        RunOutput r = run_texts(config, example1());
        ASSERT_EQ(r.code, kExitOk);
        Session s(example1());
        for (const std::string& line : lines_starting(r.out, "(interpolant ")) {
            SExpr e = read_sexprs(line).front();
            ASSERT_EQ(e.items.size(), 3u);
            Formula f = s.formula(e.items[2].str());
            EXPECT_EQ(to_string(f), e.items[2].str());
        }
    }
}

TEST(Driver, PartialsAreDumpedForEveryProofAndTreeNode) {
    RunConfig config = from_file();
    config.dump_partials = true;
    config.validate = ValidationLevel::Off;
    RunOutput r = run_texts(config, example1());
    EXPECT_EQ(lines_starting(r.out, "(partial ").size(), 15u * 5);
    EXPECT_NE(r.out.find("(partial tricho 2 false)"), std::string::npos);
}

TEST(Driver, ExitCodes) {
    EXPECT_EQ(run_texts(from_file(), {"(declare-sort"}).code, kExitInputError);
    EXPECT_EQ(run_texts(from_file(), {"(declare-sort U)"}).code, kExitInputError);

    RunConfig random;
    random.colouring = ColouringSource::Random;
    EXPECT_EQ(run_texts(random, example1()).code, kExitInputError);

    std::string bad_colour =
        read_data("example1.smt") + "(colour (forall ((x Real)) (<= (g (h x)) x)) 3)\n";
    EXPECT_EQ(run_texts(from_file(), {bad_colour, read_data("example1.proof")}).code,
              kExitInputError);

    std::string dangling = read_data("example1.proof") + "(res extra :pos nowhere :neg bot :pivot (= b b))\n";
    EXPECT_EQ(run_texts(from_file(), {read_data("example1.smt"), dangling}).code,
              kExitProofRejected);
}

TEST(Driver, EveryScriptedMutationIsRejected) {
    const std::string problem = read_data("example1.smt");
    const std::string proof = read_data("example1.proof");
    ASSERT_EQ(example1_mutations().size(), 20u);
    for (const Mutation& m : example1_mutations()) {
        RunOutput r = run_texts(from_file(), {problem, apply(m, proof)});
        EXPECT_NE(r.code, kExitOk) << m.name;
        EXPECT_FALSE(r.err.empty()) << m.name;
    }
}

TEST(Driver, BinarizedNodesAreReported) {
    std::string problem =
        "(declare-sort U)\n(declare-fun a () U)\n(declare-fun b () U)\n(declare-fun c () U)\n"
        "(tree (node r A B C) (leaf A (= a b)) (leaf B (= b c)) (leaf C (not (= a c))))\n";
    std::string proof =
        "(input i1 :partition A (= a b))\n(input i2 :partition B (= b c))\n"
        "(input i3 :partition C (not (= a c)))\n(lemma t :trans (a b c))\n"
        "(res r1 :pos i1 :neg t :pivot (= a b))\n(res r2 :pos i2 :neg r1 :pivot (= b c))\n"
        "(res r3 :pos r2 :neg i3 :pivot (= a c))\n";
    RunOutput r = run_texts(RunConfig{}, {problem, proof});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("(interpolant A "), std::string::npos);
    EXPECT_NE(r.out.find(":failed 0 :unknown 0"), std::string::npos);
}
