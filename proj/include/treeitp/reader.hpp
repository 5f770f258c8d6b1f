#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treeitp/parser.hpp"
#include "treeitp/problem.hpp"
#include "treeitp/proof.hpp"

namespace treeitp {

struct ColourEntry {
    Literal literal;
    int partition;
    int line;
};

// Everything read from the problem and proof files of one run.
struct Document {
    std::optional<BinarizedProblem> problem;
    Proof proof;
    std::vector<ColourEntry> colours;
    bool binarized = false;  // the input tree was not already binary and leaf-labelled
};

// Reads the files in order against one signature. Proof commands may refer to nodes
// defined later. Throws ParseError, MalformedTree and MalformedProof.
Document read_document(TermParser& parser, const std::vector<std::string>& texts);

// The partition holding the label of an original tree node (leaf or labelled inner node).
std::optional<int> label_partition(const BinarizedProblem& problem, const std::string& name);

}  // namespace treeitp
