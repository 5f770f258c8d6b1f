#include "treeitp/interpolator.hpp"
#include "treeitp/ops.hpp"

namespace treeitp {

Interpolator::Interpolator(const TreeProblem& problem, const Proof& proof,
                           const Colouring& colouring)
    : problem_(problem), proof_(proof), colouring_(colouring), projector_(problem, colouring) {}

int Interpolator::congruence_partition(const CongruenceStep& step) const {
    if (step.pf)
        return *step.pf;
    PartitionSet parts = problem_.partitions(step.fun);
    if (parts.none())
        throw InternalInvariantViolation("symbol '" + step.fun->name + "' occurs in no partition");
    return static_cast<int>(parts.find_first());
}

Formula Interpolator::input_rule(const Clause& c, int partition, const PartitionSet& parts) {
    Context& ctx = problem_.context();
    std::vector<Literal> conflict = negated(c);
    if (parts.test(partition))
        return ctx.mk_not(projector_.kernel_conj(conflict, ~parts));
    return projector_.kernel_conj(conflict, parts);
}

Formula Interpolator::transitivity(const TransitivityStep& step, const PartitionSet& parts) {
    Context& ctx = problem_.context();
    const auto& t = step.chain;
    const std::size_t n = t.size();
    // Conflict literal e_i = (t_i = t_{i+1}) for i = 1..n-1; e_0 = e_n = (t_1 != t_n).
    auto in_a = [&](std::size_t i) {
        if (i == 0 || i == n)
            return parts.test(colouring_.colour(ctx.eq(t.front(), t.back())));
        return parts.test(colouring_.colour(ctx.eq(t[i - 1], t[i])));
    };
    std::vector<std::size_t> boundary;  // 1-based chain positions
    for (std::size_t i = 1; i <= n; ++i)
        if (in_a(i - 1) != in_a(i))
            boundary.push_back(i);
    if (boundary.empty())
        return in_a(0) ? ctx.bottom() : ctx.top();
    Flattener& flat = projector_.flattener();
    auto v = [&](std::size_t i) { return flat.flat_term(t[boundary[i] - 1]); };
    std::vector<Formula> conj;
    const std::size_t m = boundary.size();
    if (!in_a(0)) {
        for (std::size_t j = 0; j + 1 < m; j += 2)
            conj.push_back(ctx.equal(v(j), v(j + 1)));
    } else {
        for (std::size_t j = 1; j + 2 < m; j += 2)
            conj.push_back(ctx.equal(v(j), v(j + 1)));
        conj.push_back(ctx.mk_not(ctx.equal(v(m - 1), v(0))));
    }
    return ctx.mk_and(std::move(conj));
}

Formula Interpolator::trichotomy(const Clause& c, const PartitionSet& parts) {
    Context& ctx = problem_.context();
    std::vector<Literal> conflict = negated(c);
    std::size_t inside = 0;
    for (const Literal& l : conflict)
        inside += parts.test(colouring_.colour(l)) ? 1 : 0;
    if (inside <= 1)
        return projector_.kernel_conj(conflict, parts);
    if (conflict.size() - inside <= 1)
        return ctx.mk_not(projector_.kernel_conj(conflict, ~parts));
    return projector_.kernel_conj(conflict, parts);
}

Formula Interpolator::farkas(const FarkasStep& step, const PartitionSet& parts) {
    Context& ctx = problem_.context();
    Flattener& flat = projector_.flattener();
    LinearForm form;
    bool strict = false;
    for (const auto& [k, l] : step.parts) {
        if (!parts.test(colouring_.colour(l)))
            continue;
        Inequality q = as_inequality(flat.flatten(l));
        for (const auto& m : q.sum)
            form.monomials.push_back(Monomial{k * m.coeff, m.term});
        form.constant -= k * q.bound;
        strict = strict || q.strict;
    }
    return ctx.linear_constraint(form, strict);
}

Formula Interpolator::leaf_interpolant(int proof_node, const PartitionSet& parts) {
    const ProofNode& n = proof_.node(proof_node);
    if (const auto* s = std::get_if<InputStep>(&n.step))
        return input_rule(n.clause, s->partition, parts);
    if (std::holds_alternative<InstantiationStep>(n.step)) {
        for (const Literal& l : n.clause)
            if (l.atom->kind == AtomKind::Proxy && !l.positive)
                return input_rule(n.clause, colouring_.colour(l), parts);
        throw InternalInvariantViolation("instantiation lemma without a quantified literal");
    }
    if (const auto* s = std::get_if<TransitivityStep>(&n.step))
        return transitivity(*s, parts);
    if (const auto* s = std::get_if<CongruenceStep>(&n.step))
        return input_rule(n.clause, congruence_partition(*s), parts);
    if (std::holds_alternative<TrichotomyStep>(n.step))
        return trichotomy(n.clause, parts);
    if (const auto* s = std::get_if<FarkasStep>(&n.step))
        return farkas(*s, parts);
    throw InternalInvariantViolation("leaf_interpolant on a resolution node");
}

Formula Interpolator::resolution_interpolant(int proof_node, const PartitionSet& parts,
                                             Formula first, Formula second) {
    Context& ctx = problem_.context();
    const ProofNode& n = proof_.node(proof_node);
    const auto& step = std::get<ResolutionStep>(n.step);
    Formula combined = parts.test(colouring_.colour(step.pivot)) ? ctx.mk_or({first, second})
                                                                 : ctx.mk_and({first, second});
    return eliminate_unsupported(combined, parts, projector_.flattener().supported(n.clause));
}

Formula Interpolator::eliminate_unsupported(Formula f, const PartitionSet& parts,
                                            const std::vector<Term>& supported) {
    Context& ctx = problem_.context();
    for (;;) {
        std::vector<Term> free_aux;
        for (Term v : f->free_vars)
            if (is_aux(v))
                free_aux.push_back(v);
        Term chosen;
        Term chosen_term;
        bool any_unsupported = false;
        for (Term v : free_aux) {
            if (std::binary_search(supported.begin(), supported.end(), v))
                continue;
            any_unsupported = true;
            Term t = aux_term(ctx, v);
            bool inner = false;
            for (Term w : free_aux)
                if (w != v && occurs_in(t, aux_term(ctx, w))) {
                    inner = true;
                    break;
                }
            if (!inner && (!chosen_term || t.id() < chosen_term.id())) {
                chosen = v;
                chosen_term = t;
            }
        }
        if (!any_unsupported)
            return f;
        if (!chosen)
            throw InternalInvariantViolation("no outermost unsupported variable");
        PartitionSet occurs = problem_.partitions(chosen_term->fun);
        if (!occurs.is_subset_of(parts) && occurs.intersects(parts)) {
            FlatEq def = projector_.flattener().flat_eq(chosen_term);
            Term replacement = def.literal.atom->lhs == chosen ? def.literal.atom->rhs
                                                               : def.literal.atom->lhs;
            f = substitute(ctx, f, Substitution{{chosen, replacement}});
            continue;
        }
        Term x = ctx.var("!b" + std::to_string(chosen_term.id()), chosen->sort);
        Formula body = substitute(ctx, f, Substitution{{chosen, x}});
        f = ctx.quantifier(occurs.is_subset_of(parts) ? FormulaKind::Exists : FormulaKind::Forall,
                           {x}, body);
    }
}

const std::vector<InterpolantVector>& Interpolator::run() {
    if (!vectors_.empty())
        return vectors_;
    vectors_.resize(proof_.size());
    const std::size_t nodes = problem_.num_nodes();
    Flattener& flat = projector_.flattener();
    for (int i : proof_.order()) {
        const ProofNode& n = proof_.node(i);
        InterpolantVector& out = vectors_[i];
        out.supported = flat.supported(n.clause);
        out.at.resize(nodes);
        const auto* res = std::get_if<ResolutionStep>(&n.step);
        for (std::size_t v = 0; v < nodes; ++v) {
            const PartitionSet& parts = problem_.subtree_leaves(static_cast<int>(v));
            out.at[v] = res ? resolution_interpolant(i, parts, vectors_[res->pos].at[v],
                                                     vectors_[res->neg].at[v])
                            : leaf_interpolant(i, parts);
        }
    }
    return vectors_;
}

std::vector<Formula> Interpolator::for_set(const PartitionSet& parts) {
    std::vector<Formula> out(proof_.size());
    for (int i : proof_.order()) {
        const auto* res = std::get_if<ResolutionStep>(&proof_.node(i).step);
        out[i] = res ? resolution_interpolant(i, parts, out[res->pos], out[res->neg])
                     : leaf_interpolant(i, parts);
    }
    return out;
}

}  // namespace treeitp
