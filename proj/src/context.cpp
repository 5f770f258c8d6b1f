#include <algorithm>
#include <cassert>
#include <map>

#include "treeitp/ops.hpp"
#include "treeitp/terms.hpp"

namespace treeitp {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_rational(const Rational& q) {
    std::size_t h = std::hash<long>{}(mpz_get_si(q.get_num_mpz_t()));
    return mix(h, std::hash<long>{}(mpz_get_si(q.get_den_mpz_t())));
}

std::vector<Term> merge_vars(const std::vector<Term>& a, const std::vector<Term>& b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

LinearForm normalize_form(const Context& ctx, const LinearForm& form) {
    std::map<std::uint32_t, Monomial> acc;
    Rational constant = form.constant;
    for (const auto& m : form.monomials) {
        LinearForm inner = ctx.linear_form(m.term);
        constant += m.coeff * inner.constant;
        for (const auto& im : inner.monomials) {
            auto [it, fresh] = acc.try_emplace(im.term.id(), Monomial{0, im.term});
            it->second.coeff += m.coeff * im.coeff;
        }
    }
    LinearForm out;
    out.constant = constant;
    for (auto& [id, m] : acc)
        if (m.coeff != 0)
            out.monomials.push_back(m);
    return out;
}

bool same_monomials(const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].term != b[i].term || a[i].coeff != b[i].coeff)
            return false;
    return true;
}

// The pair (s, t) when l is the atom s - t <= 0 or t - s <= 0 with unit coefficients.
bool unit_difference(const Literal& l, Term& s, Term& t) {
    const AtomNode& a = *l.atom;
    if (a.kind != AtomKind::Leq || a.sum.size() != 2 || a.bound != 0)
        return false;
    if (abs(a.sum[0].coeff) != 1 || a.sum[0].coeff != -a.sum[1].coeff)
        return false;
    s = a.sum[0].term;
    t = a.sum[1].term;
    return true;
}

}  // namespace

Context::Context() {
    sorts_.push_back(SortDecl{"Real", SortKind::Rational, 0});
    sorts_.push_back(SortDecl{"Bool", SortKind::Boolean, 1});
    rational_ = &sorts_[0];
    bool_ = &sorts_[1];
    sort_names_["Real"] = rational_;
    sort_names_["Bool"] = bool_;
    term_index_.push_back(nullptr);
    true_fun_ = intern_fun("true", {}, bool_, true);
    false_fun_ = intern_fun("false", {}, bool_, true);
}

Context::~Context() = default;

Sort Context::declare_sort(const std::string& name) {
    std::lock_guard lock(mutex_);
    if (sort_names_.count(name))
        throw SortError("sort '" + name + "' already declared");
    sorts_.push_back(SortDecl{name, SortKind::Uninterpreted,
                              static_cast<std::uint32_t>(sorts_.size())});
    Sort s = &sorts_.back();
    sort_names_[name] = s;
    return s;
}

Sort Context::find_sort(std::string_view name) const {
    std::lock_guard lock(mutex_);
    auto it = sort_names_.find(std::string(name));
    return it == sort_names_.end() ? nullptr : it->second;
}

FunSym Context::intern_fun(const std::string& name, std::vector<Sort> arg_sorts, Sort result,
                           bool interpreted) {
    std::string key = name + "/";
    for (Sort s : arg_sorts)
        key += std::to_string(s->id) + ",";
    key += "/" + std::to_string(result->id);
    std::lock_guard lock(mutex_);
    if (auto it = fun_keys_.find(key); it != fun_keys_.end())
        return it->second;
    funs_.push_back(FunDecl{name, std::move(arg_sorts), result, interpreted,
                            static_cast<std::uint32_t>(funs_.size())});
    FunSym f = &funs_.back();
    fun_keys_[key] = f;
    return f;
}

FunSym Context::fresh_fun(const std::string& prefix, std::vector<Sort> arg_sorts, Sort result) {
    return intern_fun(prefix + std::to_string(fresh_counter_++), std::move(arg_sorts), result);
}

bool Context::TermKey::operator()(const TermNode* a, const TermNode* b) const {
    if (a->kind != b->kind || a->sort != b->sort)
        return false;
    switch (a->kind) {
    case TermKind::Var:
        return a->name == b->name;
    case TermKind::App:
        return a->fun == b->fun && a->args == b->args;
    case TermKind::Const:
        return a->value == b->value;
    case TermKind::Linear:
        return a->value == b->value && same_monomials(a->monomials, b->monomials);
    }
    return false;
}

bool Context::AtomKey::operator()(const AtomNode* a, const AtomNode* b) const {
    if (a->kind != b->kind)
        return false;
    switch (a->kind) {
    case AtomKind::Eq:
        return a->lhs == b->lhs && a->rhs == b->rhs;
    case AtomKind::Leq:
        return a->bound == b->bound && same_monomials(a->sum, b->sum);
    case AtomKind::Proxy:
        return a->quantified == b->quantified;
    }
    return false;
}

bool Context::FormulaKey::operator()(const FormulaNode* a, const FormulaNode* b) const {
    return a->kind == b->kind && a->lit == b->lit && a->children == b->children &&
           a->bound == b->bound;
}

Term Context::intern_term(TermNode&& node) {
    std::size_t h = mix(static_cast<std::size_t>(node.kind), std::hash<const void*>{}(node.sort));
    switch (node.kind) {
    case TermKind::Var:
        h = mix(h, std::hash<std::string>{}(node.name));
        break;
    case TermKind::App:
        h = mix(h, std::hash<const void*>{}(node.fun));
        for (Term a : node.args)
            h = mix(h, a.id());
        break;
    case TermKind::Const:
        h = mix(h, hash_rational(node.value));
        break;
    case TermKind::Linear:
        h = mix(h, hash_rational(node.value));
        for (const auto& m : node.monomials)
            h = mix(mix(h, m.term.id()), hash_rational(m.coeff));
        break;
    }
    node.hash = h;
    std::lock_guard lock(mutex_);
    if (auto it = term_table_.find(&node); it != term_table_.end())
        return Term(*it);
    node.id = static_cast<std::uint32_t>(term_index_.size());
    terms_.push_back(std::move(node));
    TermNode* stored = &terms_.back();
    if (stored->kind == TermKind::Var)
        stored->free_vars = {Term(stored)};
    term_table_.insert(stored);
    term_index_.push_back(stored);
    return Term(stored);
}

Atom Context::intern_atom(AtomNode&& node) {
    std::size_t h = static_cast<std::size_t>(node.kind);
    switch (node.kind) {
    case AtomKind::Eq:
        h = mix(mix(h, node.lhs.id()), node.rhs.id());
        break;
    case AtomKind::Leq:
        h = mix(h, hash_rational(node.bound));
        for (const auto& m : node.sum)
            h = mix(mix(h, m.term.id()), hash_rational(m.coeff));
        break;
    case AtomKind::Proxy:
        h = mix(h, node.quantified.id());
        break;
    }
    node.hash = h;
    std::lock_guard lock(mutex_);
    if (auto it = atom_table_.find(&node); it != atom_table_.end())
        return Atom(*it);
    node.id = static_cast<std::uint32_t>(atoms_.size() + 1);
    atoms_.push_back(std::move(node));
    atom_table_.insert(&atoms_.back());
    return Atom(&atoms_.back());
}

Formula Context::intern_formula(FormulaNode&& node) {
    std::size_t h = static_cast<std::size_t>(node.kind);
    if (node.lit.atom)
        h = mix(mix(h, node.lit.atom.id()), node.lit.positive);
    for (Formula c : node.children)
        h = mix(h, c.id());
    for (Term v : node.bound)
        h = mix(h, v.id());
    node.hash = h;
    std::lock_guard lock(mutex_);
    if (auto it = formula_table_.find(&node); it != formula_table_.end())
        return Formula(*it);
    node.id = static_cast<std::uint32_t>(formulas_.size() + 1);
    formulas_.push_back(std::move(node));
    formula_table_.insert(&formulas_.back());
    return Formula(&formulas_.back());
}

Term Context::var(const std::string& name, Sort sort) {
    TermNode n;
    n.kind = TermKind::Var;
    n.sort = sort;
    n.name = name;
    return intern_term(std::move(n));
}

Term Context::app(FunSym f, std::vector<Term> args) {
    if (args.size() != f->arity())
        throw SortError("'" + f->name + "' expects " + std::to_string(f->arity()) +
                        " arguments, got " + std::to_string(args.size()));
    TermNode n;
    n.kind = TermKind::App;
    n.sort = f->result;
    n.fun = f;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i]->sort != f->arg_sorts[i])
            throw SortError("argument " + std::to_string(i + 1) + " of '" + f->name +
                            "' has sort " + args[i]->sort->name + ", expected " +
                            f->arg_sorts[i]->name);
        if (!args[i]->free_vars.empty())
            n.free_vars = merge_vars(n.free_vars, args[i]->free_vars);
    }
    n.args = std::move(args);
    return intern_term(std::move(n));
}

Term Context::constant(const Rational& value) {
    TermNode n;
    n.kind = TermKind::Const;
    n.sort = rational_;
    n.value = value;
    n.value.canonicalize();
    return intern_term(std::move(n));
}

LinearForm Context::linear_form(Term t) const {
    if (t->sort != rational_)
        throw SortError("term of sort " + t->sort->name + " used in arithmetic");
    LinearForm f;
    switch (t->kind) {
    case TermKind::Const:
        f.constant = t->value;
        break;
    case TermKind::Linear:
        f.monomials = t->monomials;
        f.constant = t->value;
        break;
    default:
        f.monomials.push_back(Monomial{1, t});
        f.constant = 0;
        break;
    }
    return f;
}

Term Context::linear(const LinearForm& form) {
    LinearForm f = normalize_form(*this, form);
    if (f.monomials.empty())
        return constant(f.constant);
    if (f.monomials.size() == 1 && f.constant == 0 && f.monomials[0].coeff == 1)
        return f.monomials[0].term;
    TermNode n;
    n.kind = TermKind::Linear;
    n.sort = rational_;
    n.value = f.constant;
    for (const auto& m : f.monomials)
        n.free_vars = merge_vars(n.free_vars, m.term->free_vars);
    n.monomials = std::move(f.monomials);
    return intern_term(std::move(n));
}

Term Context::add(Term a, Term b) {
    return linear(LinearForm{{Monomial{1, a}, Monomial{1, b}}, 0});
}

Term Context::sub(Term a, Term b) {
    return linear(LinearForm{{Monomial{1, a}, Monomial{-1, b}}, 0});
}

Term Context::scale(const Rational& k, Term t) {
    return linear(LinearForm{{Monomial{k, t}}, 0});
}

Term Context::true_term() { return app(true_fun_, {}); }
Term Context::false_term() { return app(false_fun_, {}); }

Term Context::term_by_id(std::uint32_t id) const {
    std::lock_guard lock(mutex_);
    if (id == 0 || id >= term_index_.size())
        return Term();
    return Term(term_index_[id]);
}

std::size_t Context::num_terms() const {
    std::lock_guard lock(mutex_);
    return term_index_.size() - 1;
}

Literal Context::eq(Term a, Term b) {
    if (a->sort != b->sort)
        throw SortError("equality between sorts " + a->sort->name + " and " + b->sort->name);
    if (b.id() < a.id())
        std::swap(a, b);
    AtomNode n;
    n.kind = AtomKind::Eq;
    n.lhs = a;
    n.rhs = b;
    n.free_vars = merge_vars(a->free_vars, b->free_vars);
    return Literal{intern_atom(std::move(n)), true};
}

Literal Context::leq(const LinearForm& lhs_minus_rhs) {
    LinearForm f = normalize_form(*this, lhs_minus_rhs);
    if (f.monomials.empty())
        throw SortError("inequality without uninterpreted terms");
    mpz_class denominators = 1;
    for (const auto& m : f.monomials)
        denominators = lcm(denominators, m.coeff.get_den());
    mpz_class numerators = 0;
    for (const auto& m : f.monomials)
        numerators = gcd(numerators, mpz_class(m.coeff.get_num() * (denominators / m.coeff.get_den())));
    Rational factor(denominators, numerators);
    factor.canonicalize();
    AtomNode n;
    n.kind = AtomKind::Leq;
    for (auto& m : f.monomials) {
        m.coeff *= factor;
        n.free_vars = merge_vars(n.free_vars, m.term->free_vars);
    }
    n.sum = std::move(f.monomials);
    n.bound = -f.constant * factor;
    return Literal{intern_atom(std::move(n)), true};
}

Literal Context::leq(Term a, Term b) {
    LinearForm f = linear_form(a);
    for (const auto& m : linear_form(b).monomials)
        f.monomials.push_back(Monomial{-m.coeff, m.term});
    f.constant -= linear_form(b).constant;
    return leq(f);
}

Literal Context::proxy(Formula quantified) {
    if (quantified->kind != FormulaKind::Forall || !quantified->free_vars.empty())
        throw SortError("quantified literals must be closed universal formulas");
    Formula canonical = alpha_canonical(*this, quantified);
    std::lock_guard lock(mutex_);
    if (auto it = proxy_by_canonical_.find(canonical.id()); it != proxy_by_canonical_.end())
        return Literal{it->second, true};
    AtomNode n;
    n.kind = AtomKind::Proxy;
    n.quantified = quantified;
    Atom a = intern_atom(std::move(n));
    proxy_by_canonical_[canonical.id()] = a;
    return Literal{a, true};
}

Formula Context::top() {
    FormulaNode n;
    n.kind = FormulaKind::True;
    return intern_formula(std::move(n));
}

Formula Context::bottom() {
    FormulaNode n;
    n.kind = FormulaKind::False;
    return intern_formula(std::move(n));
}

Formula Context::lit(Literal l) {
    FormulaNode n;
    n.kind = FormulaKind::Lit;
    n.lit = l;
    n.free_vars = l.atom->free_vars;
    n.has_quantifier = l.atom->kind == AtomKind::Proxy;
    return intern_formula(std::move(n));
}

Formula Context::literal_formula(Literal l) {
    if (l.atom->kind != AtomKind::Proxy)
        return lit(l);
    return l.positive ? l.atom->quantified : mk_not(l.atom->quantified);
}

Formula Context::linear_constraint(const LinearForm& form, bool strict) {
    LinearForm f = normalize_form(*this, form);
    if (f.monomials.empty()) {
        bool holds = strict ? f.constant < 0 : f.constant <= 0;
        return holds ? top() : bottom();
    }
    if (!strict)
        return lit(leq(f));
    LinearForm negated;
    for (const auto& m : f.monomials)
        negated.monomials.push_back(Monomial{-m.coeff, m.term});
    negated.constant = -f.constant;
    return lit(~leq(negated));
}

Formula Context::le(Term a, Term b) {
    LinearForm f = linear_form(a);
    LinearForm g = linear_form(b);
    for (const auto& m : g.monomials)
        f.monomials.push_back(Monomial{-m.coeff, m.term});
    f.constant -= g.constant;
    return linear_constraint(f, false);
}

Formula Context::lt(Term a, Term b) {
    LinearForm f = linear_form(a);
    LinearForm g = linear_form(b);
    for (const auto& m : g.monomials)
        f.monomials.push_back(Monomial{-m.coeff, m.term});
    f.constant -= g.constant;
    return linear_constraint(f, true);
}

Formula Context::junction(FormulaKind kind, std::vector<Formula> children) {
    const bool is_and = kind == FormulaKind::And;
    const FormulaKind absorbing = is_and ? FormulaKind::False : FormulaKind::True;
    const FormulaKind neutral = is_and ? FormulaKind::True : FormulaKind::False;

    std::vector<Formula> flat;
    std::unordered_set<Formula> seen;
    std::vector<Formula> stack(children.rbegin(), children.rend());
    while (!stack.empty()) {
        Formula c = stack.back();
        stack.pop_back();
        if (c->kind == absorbing)
            return is_and ? bottom() : top();
        if (c->kind == neutral)
            continue;
        if (c->kind == kind) {
            for (auto it = c->children.rbegin(); it != c->children.rend(); ++it)
                stack.push_back(*it);
            continue;
        }
        if (seen.insert(c).second)
            flat.push_back(c);
    }

    std::unordered_map<Literal, std::size_t> lits;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        if (!flat[i]->is_lit())
            continue;
        Literal l = flat[i]->lit;
        if (lits.count(~l))
            return is_and ? bottom() : top();
        lits.emplace(l, i);
    }

    // Or: s - t > 0 together with s = t becomes s - t >= 0; dually for And.
    std::vector<bool> dropped(flat.size(), false);
    for (std::size_t i = 0; i < flat.size(); ++i) {
        if (dropped[i] || !flat[i]->is_lit())
            continue;
        Literal l = flat[i]->lit;
        Term s, t;
        if (l.positive == !is_and || !unit_difference(l, s, t))
            continue;
        Literal equality = eq(s, t);
        auto it = lits.find(is_and ? ~equality : equality);
        if (it == lits.end() || dropped[it->second])
            continue;
        LinearForm reversed;
        for (const auto& m : l.atom->sum)
            reversed.monomials.push_back(Monomial{-m.coeff, m.term});
        reversed.constant = l.atom->bound;
        Literal merged = leq(reversed);
        flat[i] = lit(is_and ? ~merged : merged);
        dropped[it->second] = true;
    }
    std::vector<Formula> out;
    for (std::size_t i = 0; i < flat.size(); ++i)
        if (!dropped[i])
            out.push_back(flat[i]);

    if (out.empty())
        return is_and ? top() : bottom();
    if (out.size() == 1)
        return out.front();
    FormulaNode n;
    n.kind = kind;
    for (Formula c : out) {
        if (!c->free_vars.empty())
            n.free_vars = merge_vars(n.free_vars, c->free_vars);
        n.has_quantifier = n.has_quantifier || c->has_quantifier;
    }
    n.children = std::move(out);
    return intern_formula(std::move(n));
}

Formula Context::mk_and(std::vector<Formula> children) {
    return junction(FormulaKind::And, std::move(children));
}

Formula Context::mk_or(std::vector<Formula> children) {
    return junction(FormulaKind::Or, std::move(children));
}

Formula Context::mk_not(Formula f) {
    {
        std::lock_guard lock(mutex_);
        if (auto it = negation_cache_.find(f.id()); it != negation_cache_.end())
            return it->second;
    }
    Formula result;
    switch (f->kind) {
    case FormulaKind::True:
        result = bottom();
        break;
    case FormulaKind::False:
        result = top();
        break;
    case FormulaKind::Lit:
        result = lit(~f->lit);
        break;
    case FormulaKind::And:
    case FormulaKind::Or: {
        std::vector<Formula> negated;
        for (Formula c : f->children)
            negated.push_back(mk_not(c));
        result = f->is_and() ? mk_or(std::move(negated)) : mk_and(std::move(negated));
        break;
    }
    case FormulaKind::Forall:
        result = exists(f->bound, mk_not(f->body()));
        break;
    case FormulaKind::Exists:
        result = forall(f->bound, mk_not(f->body()));
        break;
    }
    std::lock_guard lock(mutex_);
    negation_cache_.emplace(f.id(), result);
    return result;
}

Formula Context::quantifier(FormulaKind kind, std::vector<Term> vars, Formula body) {
    if (kind != FormulaKind::Forall && kind != FormulaKind::Exists)
        throw InternalInvariantViolation("quantifier() needs Forall or Exists");
    std::vector<Term> kept;
    for (Term v : vars) {
        if (!v->is_var())
            throw SortError("only variables can be quantified");
        bool free = std::binary_search(body->free_vars.begin(), body->free_vars.end(), v);
        if (free && std::find(kept.begin(), kept.end(), v) == kept.end())
            kept.push_back(v);
    }
    if (kept.empty() || body->is_true() || body->is_false())
        return body;
    FormulaNode n;
    n.kind = kind;
    std::vector<Term> sorted = kept;
    std::sort(sorted.begin(), sorted.end());
    std::set_difference(body->free_vars.begin(), body->free_vars.end(), sorted.begin(),
                        sorted.end(), std::back_inserter(n.free_vars));
    n.bound = std::move(kept);
    n.children = {body};
    n.has_quantifier = true;
    return intern_formula(std::move(n));
}

Formula Context::forall(std::vector<Term> vars, Formula body) {
    return quantifier(FormulaKind::Forall, std::move(vars), body);
}

Formula Context::exists(std::vector<Term> vars, Formula body) {
    return quantifier(FormulaKind::Exists, std::move(vars), body);
}

}  // namespace treeitp
