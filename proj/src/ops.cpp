#include <algorithm>
#include <functional>
#include <unordered_set>

#include "treeitp/ops.hpp"

namespace treeitp {

namespace {

bool touches(const std::vector<Term>& vars, const Substitution& map) {
    for (Term v : vars)
        if (map.count(v))
            return true;
    return false;
}

Substitution restrict_to(const std::vector<Term>& vars, const Substitution& map) {
    Substitution out;
    for (Term v : vars)
        if (auto it = map.find(v); it != map.end() && it->second != v)
            out.emplace(v, it->second);
    return out;
}

void collect_term_symbs(Term t, SymbolSet& out) {
    switch (t->kind) {
    case TermKind::App:
        if (!t->fun->interpreted)
            out.insert(t->fun);
        for (Term a : t->args)
            collect_term_symbs(a, out);
        break;
    case TermKind::Linear:
        for (const auto& m : t->monomials)
            collect_term_symbs(m.term, out);
        break;
    default:
        break;
    }
}

void collect_literal_symbs(Literal l, SymbolSet& out) {
    switch (l.atom->kind) {
    case AtomKind::Eq:
        collect_term_symbs(l.atom->lhs, out);
        collect_term_symbs(l.atom->rhs, out);
        break;
    case AtomKind::Leq:
        for (const auto& m : l.atom->sum)
            collect_term_symbs(m.term, out);
        break;
    case AtomKind::Proxy:
        collect_symbs(l.atom->quantified, out);
        break;
    }
}

bool name_taken(const std::string& name, Sort sort, const std::vector<Term>& avoid) {
    for (Term v : avoid)
        if (v->name == name && v->sort == sort)
            return true;
    return false;
}

}  // namespace

Term substitute(Context& ctx, Term t, const Substitution& map) {
    if (map.empty() || !touches(t->free_vars, map))
        return t;
    switch (t->kind) {
    case TermKind::Var: {
        Term r = map.at(t);
        if (r->sort != t->sort)
            throw SortError("substituting " + r->sort->name + " term for variable '" + t->name +
                            "' of sort " + t->sort->name);
        return r;
    }
    case TermKind::App: {
        std::vector<Term> args;
        args.reserve(t->args.size());
        for (Term a : t->args)
            args.push_back(substitute(ctx, a, map));
        return ctx.app(t->fun, std::move(args));
    }
    case TermKind::Linear: {
        LinearForm f;
        f.constant = t->value;
        for (const auto& m : t->monomials)
            f.monomials.push_back(Monomial{m.coeff, substitute(ctx, m.term, map)});
        return ctx.linear(f);
    }
    case TermKind::Const:
        return t;
    }
    return t;
}

Formula substitute(Context& ctx, Literal l, const Substitution& map) {
    const AtomNode& a = *l.atom;
    if (map.empty() || !touches(a.free_vars, map))
        return ctx.lit(l);
    Formula positive;
    switch (a.kind) {
    case AtomKind::Eq:
        positive = ctx.equal(substitute(ctx, a.lhs, map), substitute(ctx, a.rhs, map));
        break;
    case AtomKind::Leq: {
        LinearForm f;
        f.constant = -a.bound;
        for (const auto& m : a.sum)
            f.monomials.push_back(Monomial{m.coeff, substitute(ctx, m.term, map)});
        positive = ctx.linear_constraint(f, false);
        break;
    }
    case AtomKind::Proxy:
        return ctx.lit(l);
    }
    return l.positive ? positive : ctx.mk_not(positive);
}

Formula substitute(Context& ctx, Formula f, const Substitution& map) {
    if (map.empty() || !touches(f->free_vars, map))
        return f;
    Substitution local = restrict_to(f->free_vars, map);
    if (local.empty())
        return f;
    switch (f->kind) {
    case FormulaKind::True:
    case FormulaKind::False:
        return f;
    case FormulaKind::Lit:
        return substitute(ctx, f->lit, local);
    case FormulaKind::And:
    case FormulaKind::Or: {
        std::vector<Formula> children;
        children.reserve(f->children.size());
        for (Formula c : f->children)
            children.push_back(substitute(ctx, c, local));
        return f->is_and() ? ctx.mk_and(std::move(children)) : ctx.mk_or(std::move(children));
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
        std::vector<Term> range_vars;
        for (const auto& [v, r] : local)
            range_vars.insert(range_vars.end(), r->free_vars.begin(), r->free_vars.end());
        std::vector<Term> avoid = range_vars;
        avoid.insert(avoid.end(), f->body()->free_vars.begin(), f->body()->free_vars.end());
        avoid.insert(avoid.end(), f->bound.begin(), f->bound.end());
        std::vector<Term> vars;
        Substitution inner = local;
        for (Term x : f->bound) {
            bool captured =
                std::find(range_vars.begin(), range_vars.end(), x) != range_vars.end();
            if (!captured) {
                vars.push_back(x);
                continue;
            }
            std::string name = x->name + "'";
            while (name_taken(name, x->sort, avoid))
                name += "'";
            Term fresh = ctx.var(name, x->sort);
            avoid.push_back(fresh);
            inner[x] = fresh;
            vars.push_back(fresh);
        }
        return ctx.quantifier(f->kind, std::move(vars), substitute(ctx, f->body(), inner));
    }
    }
    return f;
}

SymbolSet symbs(Term t) {
    SymbolSet out;
    collect_term_symbs(t, out);
    return out;
}

SymbolSet symbs(Literal l) {
    SymbolSet out;
    collect_literal_symbs(l, out);
    return out;
}

void collect_symbs(Formula f, SymbolSet& out) {
    switch (f->kind) {
    case FormulaKind::Lit:
        collect_literal_symbs(f->lit, out);
        break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Forall:
    case FormulaKind::Exists:
        for (Formula c : f->children)
            collect_symbs(c, out);
        break;
    default:
        break;
    }
}

SymbolSet symbs(Formula f) {
    SymbolSet out;
    collect_symbs(f, out);
    return out;
}

FunSym hd(Term t) {
    if (!t->is_app())
        throw NotApplication("term has no head symbol");
    return t->fun;
}

std::vector<Term> subterms(Term t) {
    std::vector<Term> out;
    std::unordered_set<Term> seen;
    std::function<void(Term)> visit = [&](Term u) {
        if (!seen.insert(u).second)
            return;
        out.push_back(u);
        if (u->is_app())
            for (Term a : u->args)
                visit(a);
        else if (u->is_linear())
            for (const auto& m : u->monomials)
                visit(m.term);
    };
    visit(t);
    return out;
}

std::vector<Term> top_terms(Literal l) {
    switch (l.atom->kind) {
    case AtomKind::Eq:
        return {l.atom->lhs, l.atom->rhs};
    case AtomKind::Leq: {
        std::vector<Term> out;
        for (const auto& m : l.atom->sum)
            out.push_back(m.term);
        return out;
    }
    case AtomKind::Proxy:
        return {};
    }
    return {};
}

bool occurs_in(Term needle, Term haystack) {
    if (needle == haystack)
        return true;
    if (haystack->is_app())
        return std::any_of(haystack->args.begin(), haystack->args.end(),
                           [&](Term a) { return occurs_in(needle, a); });
    if (haystack->is_linear())
        return std::any_of(haystack->monomials.begin(), haystack->monomials.end(),
                           [&](const Monomial& m) { return occurs_in(needle, m.term); });
    return false;
}

bool is_ground(Term t) { return t->free_vars.empty(); }

namespace {

std::pair<Formula, int> canonicalize(Context& ctx, Formula f,
                                     std::unordered_map<Formula, std::pair<Formula, int>>& memo) {
    if (!f->has_quantifier)
        return {f, 0};
    if (auto it = memo.find(f); it != memo.end())
        return it->second;
    std::pair<Formula, int> result{f, 0};
    switch (f->kind) {
    case FormulaKind::And:
    case FormulaKind::Or: {
        std::vector<Formula> children;
        int height = 0;
        for (Formula c : f->children) {
            auto [cc, h] = canonicalize(ctx, c, memo);
            children.push_back(cc);
            height = std::max(height, h);
        }
        result = {f->is_and() ? ctx.mk_and(std::move(children)) : ctx.mk_or(std::move(children)),
                  height};
        break;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
        auto [body, h] = canonicalize(ctx, f->body(), memo);
        Substitution rename;
        std::vector<Term> vars;
        int next = h;
        for (Term x : f->bound) {
            Term y = ctx.var("!h" + std::to_string(next++), x->sort);
            rename[x] = y;
            vars.push_back(y);
        }
        result = {ctx.quantifier(f->kind, std::move(vars), substitute(ctx, body, rename)), next};
        break;
    }
    default:
        break;
    }
    memo.emplace(f, result);
    return result;
}

}  // namespace

Formula alpha_canonical(Context& ctx, Formula f) {
    std::unordered_map<Formula, std::pair<Formula, int>> memo;
    return canonicalize(ctx, f, memo).first;
}

bool alpha_equivalent(Context& ctx, Formula a, Formula b) {
    return a == b || alpha_canonical(ctx, a) == alpha_canonical(ctx, b);
}

bool as_clause(Formula f, std::vector<Literal>& out) {
    out.clear();
    if (f->is_false())
        return true;
    if (f->is_lit()) {
        out.push_back(f->lit);
        return true;
    }
    if (!f->is_or())
        return false;
    for (Formula c : f->children) {
        if (!c->is_lit())
            return false;
        out.push_back(c->lit);
    }
    return true;
}

}  // namespace treeitp
