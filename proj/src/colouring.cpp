#include <random>
#include <unordered_set>

#include "treeitp/colouring.hpp"
#include "treeitp/ops.hpp"
#include "treeitp/printer.hpp"

namespace treeitp {

Term aux_var(Context& ctx, Term t) { return ctx.var("!v" + std::to_string(t.id()), t->sort); }

bool is_aux(Term v) {
    if (!v->is_var() || !v->name.starts_with("!v") || v->name.size() < 3)
        return false;
    return v->name.find_first_not_of("0123456789", 2) == std::string::npos;
}

Term aux_term(const Context& ctx, Term v) {
    if (!is_aux(v))
        return Term();
    return ctx.term_by_id(static_cast<std::uint32_t>(std::stoul(v->name.substr(2))));
}

namespace {

bool uninterpreted_app(Term t) { return t->is_app() && !t->fun->interpreted; }

}  // namespace

Term Flattener::flat_term(Term t) {
    if (uninterpreted_app(t))
        return aux_var(ctx_, t);
    if (t->is_linear()) {
        LinearForm form;
        form.constant = t->value;
        for (const auto& m : t->monomials)
            form.monomials.push_back(Monomial{m.coeff, flat_term(m.term)});
        return ctx_.linear(form);
    }
    return t;
}

Literal Flattener::flatten(Literal l) {
    switch (l.atom->kind) {
    case AtomKind::Eq: {
        Literal f = ctx_.eq(flat_term(l.atom->lhs), flat_term(l.atom->rhs));
        return l.positive ? f : ~f;
    }
    case AtomKind::Leq: {
        LinearForm form;
        form.constant = -l.atom->bound;
        for (const auto& m : l.atom->sum)
            form.monomials.push_back(Monomial{m.coeff, flat_term(m.term)});
        Literal f = ctx_.leq(form);
        return l.positive ? f : ~f;
    }
    case AtomKind::Proxy:
        return l;
    }
    return l;
}

FlatEq Flattener::flat_eq(Term app) {
    std::vector<Term> args;
    for (Term a : app->args)
        args.push_back(flat_term(a));
    Term var = aux_var(ctx_, app);
    return FlatEq{var, app, app->fun, ctx_.eq(var, ctx_.app(app->fun, std::move(args)))};
}

std::vector<FlatEq> Flattener::flat_eqs(Literal l) {
    std::vector<FlatEq> out;
    std::unordered_set<Term> seen;
    for (Term top : top_terms(l))
        for (Term t : subterms(top))
            if (uninterpreted_app(t) && seen.insert(t).second)
                out.push_back(flat_eq(t));
    return out;
}

std::vector<Term> Flattener::supported(const Clause& c) {
    std::vector<Term> out;
    for (const Literal& l : c)
        for (const FlatEq& e : flat_eqs(l))
            out.push_back(e.var);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int Colouring::colour(Literal l) const {
    auto it = colours_.find(l.atom);
    if (it == colours_.end())
        throw MissingColour("literal " + to_string(l) + " has no colour");
    return it->second;
}

std::vector<Literal> proof_literals(const Proof& proof) {
    std::vector<Literal> out;
    std::unordered_set<Atom> seen;
    auto add = [&](Literal l) {
        if (seen.insert(l.atom).second)
            out.push_back(Literal{l.atom, true});
    };
    for (const ProofNode& n : proof.nodes())
        for (const Literal& l : n.clause)
            add(l);
    for (const ProofNode& n : proof.nodes()) {
        if (const auto* f = std::get_if<FarkasStep>(&n.step))
            for (const auto& [k, l] : f->parts)
                add(l);
        if (const auto* r = std::get_if<ResolutionStep>(&n.step))
            add(r->pivot);
    }
    return out;
}

int heuristic_colour(const TreeProblem& problem, Literal l) {
    std::vector<int> count(problem.num_partitions(), 0);
    auto count_head = [&](Term t) {
        if (!uninterpreted_app(t))
            return;
        PartitionSet parts = problem.partitions(t->fun);
        for (auto p = parts.find_first(); p != PartitionSet::npos; p = parts.find_next(p))
            ++count[p];
    };
    for (Term t : top_terms(l)) {
        if (t->is_linear())
            for (const auto& m : t->monomials)
                count_head(m.term);
        else
            count_head(t);
    }
    int best = 0;
    for (int p = 1; p < static_cast<int>(count.size()); ++p)
        if (count[p] > count[best])
            best = p;
    return best;
}

Colouring assign_colours(const Proof& proof, const TreeProblem& problem,
                         const ColouringOptions& options) {
    Colouring c;
    c.strategy_ = options.strategy;
    for (const ProofNode& n : proof.nodes()) {
        const auto* in = std::get_if<InputStep>(&n.step);
        if (!in)
            continue;
        for (const Literal& l : n.clause)
            if (l.atom->kind == AtomKind::Proxy && !c.has(l))
                c.set(l, in->partition);
    }
    if (options.strategy == ColouringStrategy::Fixed) {
        for (const ColourEntry& e : options.fixed) {
            if (e.partition < 0 || e.partition >= static_cast<int>(problem.num_partitions()))
                throw InvalidColouring("line " + std::to_string(e.line) + ": unknown partition");
            if (e.literal.atom->kind == AtomKind::Proxy) {
                if (!c.has(e.literal) || c.colour(e.literal) != e.partition)
                    throw InvalidColouring("line " + std::to_string(e.line) +
                                           ": quantified clause " + to_string(e.literal) +
                                           " must keep the partition of its input clause");
                continue;
            }
            c.set(e.literal, e.partition);
        }
    }
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(problem.num_partitions()) - 1);
    for (const Literal& l : proof_literals(proof)) {
        if (c.has(l))
            continue;
        if (options.strategy == ColouringStrategy::Random)
            c.set(l, pick(rng));
        else
            c.set(l, heuristic_colour(problem, l));
    }
    return c;
}

Formula Projector::kernel(Literal l, const PartitionSet& parts) {
    Context& ctx = problem_.context();
    if (!parts.test(colouring_.colour(l)))
        return ctx.top();
    return ctx.lit(flat_.flatten(l));
}

Formula Projector::proj(Literal l, const PartitionSet& parts) {
    Context& ctx = problem_.context();
    std::vector<Formula> conj{kernel(l, parts)};
    for (const FlatEq& e : flat_.flat_eqs(l))
        if (problem_.partitions(e.fun).intersects(parts))
            conj.push_back(ctx.lit(e.literal));
    return ctx.mk_and(std::move(conj));
}

Formula Projector::kernel_conj(const std::vector<Literal>& lits, const PartitionSet& parts) {
    std::vector<Formula> conj;
    for (const Literal& l : lits)
        conj.push_back(kernel(l, parts));
    return problem_.context().mk_and(std::move(conj));
}

Formula Projector::proj_conj(const std::vector<Literal>& lits, const PartitionSet& parts) {
    std::vector<Formula> conj;
    for (const Literal& l : lits)
        conj.push_back(proj(l, parts));
    return problem_.context().mk_and(std::move(conj));
}

std::vector<Literal> negated(const Clause& c) {
    std::vector<Literal> out;
    for (const Literal& l : c)
        out.push_back(~l);
    return out;
}

}  // namespace treeitp
