#include <algorithm>

#include "treeitp/ops.hpp"
#include "treeitp/printer.hpp"
#include "treeitp/validator.hpp"

namespace treeitp {

std::string to_string(ObligationKind k) {
    switch (k) {
    case ObligationKind::Root:
        return "root";
    case ObligationKind::Symbol:
        return "symbol";
    case ObligationKind::LeafInd:
        return "leaf-ind";
    case ObligationKind::TreeInd:
        return "tree-ind";
    }
    return "unknown";
}

std::size_t ValidationReport::count(VerdictKind k) const {
    return static_cast<std::size_t>(std::count_if(
        results.begin(), results.end(), [&](const ObligationResult& r) { return r.verdict.kind == k; }));
}

bool operator==(const ValidationReport& a, const ValidationReport& b) {
    if (a.results.size() != b.results.size())
        return false;
    for (std::size_t i = 0; i < a.results.size(); ++i) {
        const ObligationResult& x = a.results[i];
        const ObligationResult& y = b.results[i];
        if (x.obligation.proof_node != y.obligation.proof_node ||
            x.obligation.kind != y.obligation.kind ||
            x.obligation.tree_nodes != y.obligation.tree_nodes ||
            x.obligation.premise != y.obligation.premise ||
            x.obligation.conclusion != y.obligation.conclusion ||
            x.verdict.kind != y.verdict.kind)
            return false;
    }
    return true;
}

Validator::Validator(const TreeProblem& problem, const Proof& proof, Interpolator& interpolator,
                     OracleBudget budget)
    : problem_(problem), proof_(proof), interpolator_(interpolator), budget_(budget) {
    interpolator_.run();
}

const std::vector<Formula>& Validator::interpolants_for(const PartitionSet& parts) {
    auto it = by_set_.find(parts);
    if (it == by_set_.end())
        it = by_set_.emplace(parts, interpolator_.for_set(parts)).first;
    return it->second;
}

std::vector<Obligation> Validator::obligations(ValidationLevel level, int proof_node) {
    std::vector<Obligation> out;
    if (level == ValidationLevel::Off)
        return out;
    Context& ctx = problem_.context();
    const int nodes = static_cast<int>(problem_.num_nodes());
    std::vector<int> proof_nodes;
    if (proof_node >= 0)
        proof_nodes.push_back(proof_node);
    else
        proof_nodes = proof_.order();
    for (int i : proof_nodes) {
        const InterpolantVector& vec = interpolator_.at(i);
        out.push_back(Obligation{i, ObligationKind::Root, {problem_.root()}, {}, {}});
        for (int v = 0; v < nodes; ++v)
            out.push_back(Obligation{i, ObligationKind::Symbol, {v}, {}, {}});
        if (level != ValidationLevel::Full)
            continue;
        std::vector<Literal> conflict = negated(proof_.node(i).clause);
        for (int p = 0; p < static_cast<int>(problem_.num_partitions()); ++p) {
            int leaf = problem_.leaf_node(p);
            Formula projected =
                interpolator_.projector().proj_conj(conflict, problem_.singleton(p));
            Formula premise = ctx.mk_and({problem_.label_formula(p), projected});
            out.push_back(Obligation{i, ObligationKind::LeafInd, {leaf}, premise, vec.at[leaf]});
        }
        for (int a = 0; a < nodes; ++a)
            for (int b = a + 1; b < nodes; ++b) {
                const PartitionSet& sa = problem_.subtree_leaves(a);
                const PartitionSet& sb = problem_.subtree_leaves(b);
                if (sa.intersects(sb))
                    continue;
                PartitionSet joined = sa | sb;
                Formula conclusion;
                for (int w = 0; w < nodes && !conclusion; ++w)
                    if (problem_.subtree_leaves(w) == joined)
                        conclusion = vec.at[w];
                if (!conclusion)
                    conclusion = interpolants_for(joined)[i];
                out.push_back(Obligation{i, ObligationKind::TreeInd, {a, b},
                                         ctx.mk_and({vec.at[a], vec.at[b]}), conclusion});
            }
    }
    return out;
}

Verdict Validator::symbol_condition(int proof_node, int tree_node) const {
    const InterpolantVector& vec = interpolator_.at(proof_node);
    Formula f = vec.at[tree_node];
    const PartitionSet& inside = problem_.subtree_leaves(tree_node);
    SymbolSet in_syms;
    SymbolSet out_syms;
    for (int p = 0; p < static_cast<int>(problem_.num_partitions()); ++p) {
        const SymbolSet& s = problem_.label_symbols(p);
        (inside.test(p) ? in_syms : out_syms).insert(s.begin(), s.end());
    }
    for (FunSym s : symbs(f))
        if (!in_syms.count(s) || !out_syms.count(s))
            return Verdict{VerdictKind::Countermodel, "symbol " + s->name + " is not shared"};
    for (Term v : f->free_vars) {
        if (!is_aux(v))
            return Verdict{VerdictKind::Countermodel, "free variable " + v->name};
        if (!std::binary_search(vec.supported.begin(), vec.supported.end(), v))
            return Verdict{VerdictKind::Countermodel, "unsupported variable " + v->name};
    }
    return Verdict{VerdictKind::Valid, ""};
}

Verdict Validator::check(const Obligation& o, Oracle& oracle) const {
    switch (o.kind) {
    case ObligationKind::Root: {
        Formula f = interpolator_.at(o.proof_node).at[o.tree_nodes.front()];
        if (f->is_false())
            return Verdict{VerdictKind::Valid, ""};
        return Verdict{VerdictKind::Countermodel, "root interpolant is " + to_string(f)};
    }
    case ObligationKind::Symbol:
        return symbol_condition(o.proof_node, o.tree_nodes.front());
    case ObligationKind::LeafInd:
    case ObligationKind::TreeInd:
        try {
            return oracle.implies(o.premise, o.conclusion);
        } catch (const std::exception& e) {
            return Verdict{VerdictKind::Unknown, e.what()};
        }
    }
    return Verdict{};
}

ValidationReport Validator::check_all(ValidationLevel level, int proof_node) {
    std::vector<Obligation> obs = obligations(level, proof_node);
    Oracle oracle(problem_.context(), budget_);
    ValidationReport report;
    report.results.resize(obs.size());
    const long n = static_cast<long>(obs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i)
        report.results[i] = ObligationResult{obs[i], check(obs[i], oracle)};
    return report;
}

ValidationReport Validator::check_all_serial(ValidationLevel level, int proof_node) {
    std::vector<Obligation> obs = obligations(level, proof_node);
    Oracle oracle(problem_.context(), budget_);
    ValidationReport report;
    for (const Obligation& o : obs)
        report.results.push_back(ObligationResult{o, check(o, oracle)});
    return report;
}

}  // namespace treeitp
