#include <algorithm>
#include <set>

#include "treeitp/ops.hpp"
#include "treeitp/simplify.hpp"

namespace treeitp {

namespace {

bool mentions(Formula f, Term x) {
    return std::binary_search(f->free_vars.begin(), f->free_vars.end(), x);
}

bool mentions(Term t, Term x) {
    return std::binary_search(t->free_vars.begin(), t->free_vars.end(), x);
}

// The sort s when f is a closed formula saying that s has two distinct elements.
Sort two_elements(Formula f) {
    std::vector<Term> bound;
    while (f->kind == FormulaKind::Exists) {
        bound.insert(bound.end(), f->bound.begin(), f->bound.end());
        f = f->body();
    }
    if (bound.size() != 2 || !f->is_lit() || f->lit.positive ||
        f->lit.atom->kind != AtomKind::Eq)
        return nullptr;
    Term a = f->lit.atom->lhs;
    Term b = f->lit.atom->rhs;
    std::sort(bound.begin(), bound.end());
    std::vector<Term> sides{std::min(a, b), std::max(a, b)};
    return sides == bound && a != b ? a->sort : nullptr;
}

class Simplifier {
public:
    explicit Simplifier(Context& ctx) : ctx_(ctx) {}

    Formula run(Formula f);

private:
    Formula junction(FormulaKind kind, std::vector<Formula> children);
    Formula quantify(FormulaKind kind, Term x, Formula body);

    Context& ctx_;
};

Formula Simplifier::run(Formula f) {
    switch (f->kind) {
    case FormulaKind::Lit: {
        const AtomNode& a = *f->lit.atom;
        if (a.kind == AtomKind::Eq && a.lhs == a.rhs)
            return f->lit.positive ? ctx_.top() : ctx_.bottom();
        return f;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
        std::vector<Formula> children;
        for (Formula c : f->children)
            children.push_back(run(c));
        return junction(f->kind, std::move(children));
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
        Formula body = run(f->body());
        for (auto it = f->bound.rbegin(); it != f->bound.rend(); ++it)
            body = quantify(f->kind, *it, body);
        return body;
    }
    default:
        return f;
    }
}

Formula Simplifier::junction(FormulaKind kind, std::vector<Formula> children) {
    const bool conj = kind == FormulaKind::And;
    Formula joined = conj ? ctx_.mk_and(children) : ctx_.mk_or(children);
    if (joined->kind != kind)
        return joined;
    children = joined->children;

    std::set<Literal> lits;
    for (Formula c : children)
        if (c->is_lit())
            lits.insert(c->lit);
    for (const Literal& l : lits)
        if (lits.count(~l))
            return conj ? ctx_.bottom() : ctx_.top();

    // Alpha-equivalent duplicates.
    std::vector<Formula> unique;
    std::set<Formula> keys;
    for (Formula c : children)
        if (keys.insert(c->has_quantifier ? alpha_canonical(ctx_, c) : c).second)
            unique.push_back(c);
    children = std::move(unique);

    // A and (A or B) is A; A or (A and B) is A.
    std::set<Formula> present(children.begin(), children.end());
    std::vector<Formula> kept;
    for (Formula c : children) {
        bool absorbed = false;
        if (c->kind == (conj ? FormulaKind::Or : FormulaKind::And))
            for (Formula d : c->children)
                if (present.count(d)) {
                    absorbed = true;
                    break;
                }
        if (!absorbed)
            kept.push_back(c);
    }
    children = std::move(kept);

    if (conj) {
        std::set<Sort> distinct;
        for (Formula c : children)
            if (c->is_lit() && !c->lit.positive && c->lit.atom->kind == AtomKind::Eq)
                distinct.insert(c->lit.atom->lhs->sort);
        std::erase_if(children, [&](Formula c) {
            Sort s = c->free_vars.empty() ? two_elements(c) : nullptr;
            return s && distinct.count(s);
        });
    }
    return conj ? ctx_.mk_and(std::move(children)) : ctx_.mk_or(std::move(children));
}

Formula Simplifier::quantify(FormulaKind kind, Term x, Formula body) {
    if (!mentions(body, x))
        return body;
    const bool exists = kind == FormulaKind::Exists;
    const FormulaKind spread = exists ? FormulaKind::Or : FormulaKind::And;
    const FormulaKind gather = exists ? FormulaKind::And : FormulaKind::Or;

    // Destructive equality resolution: exists x. x = t and A, forall x. x != t or A.
    std::vector<Formula> operands =
        body->kind == gather ? body->children : std::vector<Formula>{body};
    for (Formula c : operands) {
        if (!c->is_lit() || c->lit.positive != exists || c->lit.atom->kind != AtomKind::Eq)
            continue;
        Term a = c->lit.atom->lhs;
        Term b = c->lit.atom->rhs;
        Term t = a == x ? b : (b == x ? a : Term());
        if (t && !mentions(t, x))
            return run(substitute(ctx_, body, Substitution{{x, t}}));
    }

    if (body->kind == spread) {
        std::vector<Formula> parts;
        for (Formula c : body->children)
            parts.push_back(quantify(kind, x, c));
        return junction(spread, std::move(parts));
    }
    if (body->kind == gather) {
        std::vector<Formula> with;
        std::vector<Formula> without;
        for (Formula c : body->children)
            (mentions(c, x) ? with : without).push_back(c);
        if (!without.empty()) {
            without.push_back(quantify(kind, x, junction(gather, std::move(with))));
            return junction(gather, std::move(without));
        }
    }
    return ctx_.quantifier(kind, {x}, body);
}

}  // namespace

Formula simplify(Context& ctx, Formula f) {
    Simplifier s(ctx);
    for (int i = 0; i < 16; ++i) {
        Formula next = s.run(f);
        if (next == f)
            break;
        f = next;
    }
    return f;
}

}  // namespace treeitp
