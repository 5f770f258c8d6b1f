#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "treeitp/problem.hpp"
#include "treeitp/proof.hpp"
#include "treeitp/reader.hpp"

namespace treeitp {

// Auxiliary variables are named "!v<id>" after the intern id of their term.
Term aux_var(Context& ctx, Term t);
// The term an auxiliary variable stands for; null for other terms.
Term aux_term(const Context& ctx, Term v);
bool is_aux(Term v);

// One defining equation v_t = f(flat args) of FlatEQ.
struct FlatEq {
    Term var;   // v_t
    Term term;  // t
    FunSym fun;
    Literal literal;
};

// Flattening of terms and literals. Stateless apart from interning.
class Flattener {
public:
    explicit Flattener(Context& ctx) : ctx_(ctx) {}

    // Uninterpreted applications become their auxiliary variable; interpreted
    // structure (sums, constants, true/false) is kept.
    Term flat_term(Term t);
    Literal flatten(Literal l);  // proxies are returned unchanged
    FlatEq flat_eq(Term app);
    // FlatEQ of a literal: one entry per uninterpreted application subterm, outermost first.
    std::vector<FlatEq> flat_eqs(Literal l);
    // Auxiliary variables of the application subterms of the non-proxy literals, by id.
    std::vector<Term> supported(const Clause& c);

private:
    Context& ctx_;
};

enum class ColouringStrategy { Heuristic, Fixed, Random };

struct ColouringOptions {
    ColouringStrategy strategy = ColouringStrategy::Heuristic;
    std::uint64_t seed = 0;
    std::vector<ColourEntry> fixed;  // Fixed: user colours, the rest by heuristic
};

// One partition per atom; a literal and its negation share the colour.
class Colouring {
public:
    int colour(Literal l) const;  // MissingColour
    bool has(Literal l) const { return colours_.count(l.atom) > 0; }
    void set(Literal l, int partition) { colours_[l.atom] = partition; }
    ColouringStrategy strategy() const { return strategy_; }
    const std::unordered_map<Atom, int>& entries() const { return colours_; }

private:
    friend Colouring assign_colours(const Proof&, const TreeProblem&, const ColouringOptions&);
    std::unordered_map<Atom, int> colours_;
    ColouringStrategy strategy_ = ColouringStrategy::Heuristic;
};

// Atoms of the proof in order of first appearance (clauses, then Farkas literals).
std::vector<Literal> proof_literals(const Proof& proof);

// The partition with the most head symbols of the literal's top-level terms,
// ties to the lowest index.
int heuristic_colour(const TreeProblem& problem, Literal l);

// Proxies get the partition of their first input clause. Throws InvalidColouring when
// a fixed colour moves a proxy away from it or names an unknown partition.
Colouring assign_colours(const Proof& proof, const TreeProblem& problem,
                         const ColouringOptions& options);

// Projection kernels and projections with respect to a fixed colouring.
class Projector {
public:
    Projector(const TreeProblem& problem, const Colouring& colouring)
        : problem_(problem), colouring_(colouring), flat_(problem.context()) {}

    Flattener& flattener() { return flat_; }
    const Colouring& colouring() const { return colouring_; }

    // flatten(l) if colour(l) is in `parts`, else true.
    Formula kernel(Literal l, const PartitionSet& parts);
    Formula kernel(Literal l, int partition) { return kernel(l, problem_.singleton(partition)); }
    // kernel plus the FlatEQ entries whose symbol occurs in some partition of `parts`.
    Formula proj(Literal l, const PartitionSet& parts);
    Formula proj(Literal l, int partition) { return proj(l, problem_.singleton(partition)); }
    // Literal-wise conjunctions.
    Formula kernel_conj(const std::vector<Literal>& lits, const PartitionSet& parts);
    Formula proj_conj(const std::vector<Literal>& lits, const PartitionSet& parts);

private:
    const TreeProblem& problem_;
    const Colouring& colouring_;
    Flattener flat_;
};

// The negation of a clause as a list of literals.
std::vector<Literal> negated(const Clause& c);

}  // namespace treeitp
