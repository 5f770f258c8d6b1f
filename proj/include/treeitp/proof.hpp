#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "treeitp/clause.hpp"
#include "treeitp/problem.hpp"
#include "treeitp/terms.hpp"

namespace treeitp {

struct InputStep {
    int partition;
};

// Instantiates the whole quantifier block of the proxy literal of `source`.
struct InstantiationStep {
    int source;
    std::vector<Term> terms;
};

// Conflict t1 = t2, ..., t(n-1) = tn, t1 != tn.
struct TransitivityStep {
    std::vector<Term> chain;
};

// Conflict f(lhs) != f(rhs) together with lhs_i = rhs_i.
struct CongruenceStep {
    FunSym fun;
    std::vector<Term> lhs_args;
    std::vector<Term> rhs_args;
    std::optional<int> pf;  // partition override for the interpolant
};

// Clause lhs = rhs or lhs > rhs or lhs < rhs.
struct TrichotomyStep {
    Term lhs;
    Term rhs;
};

// Conflict literals with positive coefficients whose weighted sum is 0 <= c, c < 0
// (or 0 < 0 when a strict literal takes part).
struct FarkasStep {
    std::vector<std::pair<Rational, Literal>> parts;
};

struct ResolutionStep {
    int pos;
    int neg;
    Literal pivot;  // occurs in pos, its negation in neg
};

using ProofStep = std::variant<InputStep, InstantiationStep, TransitivityStep, CongruenceStep,
                               TrichotomyStep, FarkasStep, ResolutionStep>;

struct ProofNode {
    std::string name;
    ProofStep step;
    std::optional<Clause> stated;  // clause as written, if any
    Clause clause;                 // stated clause, or the one implied by the step
    int line = 0;
};

class Proof {
public:
    // Antecedents may be referenced before they are added; finalize() resolves them.
    int add(ProofNode node);
    int index_of(const std::string& name) const;  // -1 when absent
    // Orders the DAG, derives missing clauses and picks the root. Throws MalformedProof
    // on dangling references and cycles.
    void finalize(Context& ctx);

    const std::vector<ProofNode>& nodes() const { return nodes_; }
    const ProofNode& node(int i) const { return nodes_.at(i); }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<int>& order() const { return order_; }
    int root() const { return root_; }
    const std::vector<int>& sinks() const { return sinks_; }

private:
    std::vector<ProofNode> nodes_;
    std::vector<int> order_;
    std::vector<int> sinks_;
    int root_ = -1;
};

struct Violation {
    std::string node;
    std::string message;
};

struct CheckReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// A Farkas conflict literal read as sum <= bound, or sum < bound when strict.
struct Inequality {
    std::vector<Monomial> sum;
    Rational bound;
    bool strict = false;
};
Inequality as_inequality(Literal l);  // MalformedLemma unless l is an inequality

// Antecedents first; ties broken by node index. Throws MalformedProof on a cycle.
std::vector<int> topo_order(const Proof& proof);

// The clause a theory lemma stands for. Throws MalformedLemma on malformed data.
Clause lemma_clause(Context& ctx, const ProofStep& step);
// The clause {not proxy} union body{vars -> terms}. Throws MalformedLemma.
Clause instantiation_clause(Context& ctx, Literal proxy, const std::vector<Term>& terms);
// Empty string when the Farkas coefficients certify the conflict, else the reason.
std::string farkas_problem(const FarkasStep& step);

CheckReport check_proof(const Proof& proof, const TreeProblem& problem);

}  // namespace treeitp
