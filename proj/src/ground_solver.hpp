#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "treeitp/model.hpp"
#include "treeitp/oracle.hpp"

namespace treeitp {

// DPLL over a polarity-aware definitional clause form of NNF formulas, with theory
// checks at every propagation fixpoint. Quantified subformulas are opaque Boolean
// variables whose instances the caller adds as clauses.
class GroundSolver {
public:
    GroundSolver(Context& ctx, const OracleBudget& budget);

    // A literal that, when true, forces f to hold.
    int encode(Formula f);
    void add_clause(std::vector<int> clause);
    void assert_formula(Formula f) { add_clause({encode(f)}); }

    SearchResult solve();

    // After Sat.
    bool holds(int lit) const;
    // Universal subformulas whose variable is true in the last assignment.
    std::vector<Formula> active_quantifiers() const;
    int quantifier_var(Formula f) const { return quantifier_vars_.at(f); }
    const std::vector<Atom>& atoms() const { return atoms_; }
    // Theory model of the last assignment covering every atom's terms.
    TheoryResult model(Model& m);
    // True when an existential subformula was treated as opaque, so a satisfying
    // assignment does not describe a model.
    bool has_opaque() const { return opaque_; }

private:
    int new_var();
    std::size_t code(int lit) const { return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0); }
    int value(int lit) const;
    void assign(int lit);
    bool propagate();
    TheoryResult theory();
    std::vector<Literal> theory_literals() const;
    int choose() const;
    void backtrack_to(std::size_t level);

    Context& ctx_;
    const OracleBudget& budget_;
    int num_vars_ = 0;
    int true_var_;
    std::vector<std::vector<int>> clauses_;
    std::vector<int> units_;
    bool empty_clause_ = false;
    std::unordered_map<Formula, int> gates_;
    std::unordered_map<Atom, int> atom_vars_;
    std::vector<Atom> atoms_;
    std::vector<Atom> var_atom_;  // per variable, null unless a theory atom
    std::map<Formula, int> quantifier_vars_;
    bool opaque_ = false;

    std::vector<signed char> assignment_;
    std::vector<int> trail_;
    std::vector<std::size_t> level_start_;
    std::vector<bool> flipped_;
    std::size_t head_ = 0;
    std::vector<std::vector<std::size_t>> watches_;
    std::map<std::vector<int>, TheoryResult> theory_cache_;
};

}  // namespace treeitp
