#pragma once

#include <map>
#include <string>
#include <vector>

#include "treeitp/interpolator.hpp"
#include "treeitp/oracle.hpp"

namespace treeitp {

enum class ValidationLevel { Off, Syntactic, Full };

enum class ObligationKind { Root, Symbol, LeafInd, TreeInd };

std::string to_string(ObligationKind k);

struct Obligation {
    int proof_node = 0;
    ObligationKind kind = ObligationKind::Root;
    // Root, Symbol: the tree node checked; LeafInd: the leaf; TreeInd: the two subtrees.
    std::vector<int> tree_nodes;
    Formula premise;     // LeafInd, TreeInd
    Formula conclusion;  // LeafInd, TreeInd
};

struct ObligationResult {
    Obligation obligation;
    Verdict verdict;
};

struct ValidationReport {
    std::vector<ObligationResult> results;  // in obligation order

    std::size_t count(VerdictKind k) const;
    std::size_t failed() const { return count(VerdictKind::Countermodel); }
    std::size_t unknown() const { return count(VerdictKind::Unknown); }
    std::size_t passed() const {
        return count(VerdictKind::Valid) + count(VerdictKind::ValidUpToSize);
    }
    bool ok() const { return failed() == 0; }

    // Same obligations with the same verdict kinds. Countermodel descriptions may
    // differ between runs, as they depend on the order terms were created in.
    friend bool operator==(const ValidationReport& a, const ValidationReport& b);
};

// Checks the root condition and the symbol condition syntactically, and leaf-ind and
// tree-ind (over every pair of disjoint subtrees) with the implication oracle, for the
// partial interpolants of every proof node.
class Validator {
public:
    Validator(const TreeProblem& problem, const Proof& proof, Interpolator& interpolator,
              OracleBudget budget);

    // Obligations of one proof node, or of every proof node when proof_node < 0.
    std::vector<Obligation> obligations(ValidationLevel level, int proof_node = -1);

    // Parallel over obligations; each call uses a fresh oracle.
    ValidationReport check_all(ValidationLevel level, int proof_node = -1);
    ValidationReport check_all_serial(ValidationLevel level, int proof_node = -1);

    // Decides one obligation with the given oracle.
    Verdict check(const Obligation& o, Oracle& oracle) const;

private:
    const std::vector<Formula>& interpolants_for(const PartitionSet& parts);
    Verdict symbol_condition(int proof_node, int tree_node) const;

    const TreeProblem& problem_;
    const Proof& proof_;
    Interpolator& interpolator_;
    OracleBudget budget_;
    std::map<PartitionSet, std::vector<Formula>> by_set_;
};

}  // namespace treeitp
