#pragma once

#include <vector>

#include "treeitp/colouring.hpp"
#include "treeitp/problem.hpp"
#include "treeitp/proof.hpp"

namespace treeitp {

// One partial tree interpolant per tree node, for the clause of one proof node.
struct InterpolantVector {
    std::vector<Formula> at;       // indexed by tree node
    std::vector<Term> supported;   // auxiliary variables supported by the clause, by id
};

class Interpolator {
public:
    Interpolator(const TreeProblem& problem, const Proof& proof, const Colouring& colouring);

    // Vectors for every proof node, computed in topological order.
    const std::vector<InterpolantVector>& run();
    const InterpolantVector& at(int proof_node) const { return vectors_.at(proof_node); }
    const InterpolantVector& root() const { return vectors_.at(proof_.root()); }
    const std::vector<InterpolantVector>& vectors() const { return vectors_; }

    // Partial interpolants of every proof node for an arbitrary set of partitions.
    std::vector<Formula> for_set(const PartitionSet& parts);

    // The leaf rules for an input, instantiation or theory-lemma node and A = parts.
    Formula leaf_interpolant(int proof_node, const PartitionSet& parts);
    // Combines the premises by pivot colour, then eliminates unsupported variables.
    Formula resolution_interpolant(int proof_node, const PartitionSet& parts, Formula first,
                                   Formula second);
    // Replaces or quantifies the auxiliary variables of f outside `supported`,
    // outermost first, smallest term id among the candidates.
    Formula eliminate_unsupported(Formula f, const PartitionSet& parts,
                                  const std::vector<Term>& supported);

    // The partition chosen for a congruence lemma.
    int congruence_partition(const CongruenceStep& step) const;
    Projector& projector() { return projector_; }

private:
    Formula input_rule(const Clause& c, int partition, const PartitionSet& parts);
    Formula transitivity(const TransitivityStep& step, const PartitionSet& parts);
    Formula trichotomy(const Clause& c, const PartitionSet& parts);
    Formula farkas(const FarkasStep& step, const PartitionSet& parts);

    const TreeProblem& problem_;
    const Proof& proof_;
    const Colouring& colouring_;
    Projector projector_;
    std::vector<InterpolantVector> vectors_;
};

}  // namespace treeitp
