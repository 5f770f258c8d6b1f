#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "treeitp/driver.hpp"
#include "treeitp/parser.hpp"
#include "treeitp/reader.hpp"
#include "treeitp/sexpr.hpp"

namespace treeitp::testing {

// One problem and proof read into a fresh context.
struct Session {
    Context ctx;
    TermParser parser{ctx};
    Document doc;

    explicit Session(const std::vector<std::string>& texts) : doc(read_document(parser, texts)) {}

    const TreeProblem& problem() const { return doc.problem->problem; }
    int tree_node(const std::string& name) const { return problem().find_node(name); }
    int proof_node(const std::string& name) const { return doc.proof.index_of(name); }

    Term term(const std::string& text) { return parser.term(read_sexprs(text).front()); }
    Formula formula(const std::string& text) { return parser.formula(read_sexprs(text).front()); }
};

struct RunOutput {
    int code = 0;
    std::string out;
    std::string err;
};

inline RunOutput run_texts(const RunConfig& config, const std::vector<std::string>& texts) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run(config, texts, out, err);
    return RunOutput{code, out.str(), err.str()};
}

}  // namespace treeitp::testing
