#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

#include "ground_solver.hpp"
#include "treeitp/ops.hpp"
#include "treeitp/oracle.hpp"
#include "treeitp/simplify.hpp"

namespace treeitp {

OracleBudget OracleBudget::parse(const std::string& text, OracleBudget base) {
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty())
            continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error("budget entry without '=': " + item);
        std::string key = item.substr(0, eq);
        std::size_t value;
        try {
            value = std::stoul(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error("bad budget value: " + item);
        }
        if (key == "fm")
            base.fm_constraints = value;
        else if (key == "decisions")
            base.decisions = value;
        else if (key == "instances")
            base.instances = value;
        else if (key == "rounds")
            base.rounds = static_cast<int>(value);
        else if (key == "nodes")
            base.model_nodes = value;
        else if (key == "domain")
            base.domain_size = static_cast<int>(value);
        else
            throw Error("unknown budget key: " + key);
    }
    return base;
}

OracleBudget OracleBudget::from_env(OracleBudget base) {
    if (const char* text = std::getenv("TREEITP_BUDGET"))
        return parse(text, base);
    return base;
}

std::string to_string(VerdictKind k) {
    switch (k) {
    case VerdictKind::Valid:
        return "valid";
    case VerdictKind::ValidUpToSize:
        return "valid-bounded";
    case VerdictKind::Countermodel:
        return "countermodel";
    case VerdictKind::Unknown:
        return "unknown";
    }
    return "unknown";
}

Formula open_proxies(Context& ctx, Formula f) {
    if (!f->has_quantifier)
        return f;
    switch (f->kind) {
    case FormulaKind::Lit:
        return f->lit.atom->kind == AtomKind::Proxy ? ctx.literal_formula(f->lit) : f;
    case FormulaKind::And:
    case FormulaKind::Or: {
        std::vector<Formula> children;
        for (Formula c : f->children)
            children.push_back(open_proxies(ctx, c));
        return f->is_and() ? ctx.mk_and(std::move(children)) : ctx.mk_or(std::move(children));
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists:
        return ctx.quantifier(f->kind, f->bound, open_proxies(ctx, f->body()));
    default:
        return f;
    }
}

namespace {

Formula skolemize_under(Context& ctx, Formula f, std::vector<Term>& universals) {
    if (!f->has_quantifier)
        return f;
    switch (f->kind) {
    case FormulaKind::And:
    case FormulaKind::Or: {
        std::vector<Formula> children;
        for (Formula c : f->children)
            children.push_back(skolemize_under(ctx, c, universals));
        return f->is_and() ? ctx.mk_and(std::move(children)) : ctx.mk_or(std::move(children));
    }
    case FormulaKind::Forall: {
        std::size_t mark = universals.size();
        universals.insert(universals.end(), f->bound.begin(), f->bound.end());
        Formula body = skolemize_under(ctx, f->body(), universals);
        universals.resize(mark);
        return ctx.forall(f->bound, body);
    }
    case FormulaKind::Exists: {
        std::vector<Term> args;
        std::vector<Sort> sorts;
        for (Term u : universals)
            if (std::binary_search(f->free_vars.begin(), f->free_vars.end(), u)) {
                args.push_back(u);
                sorts.push_back(u->sort);
            }
        Substitution map;
        for (Term x : f->bound)
            map[x] = ctx.app(ctx.fresh_fun("!sk", sorts, x->sort), args);
        return skolemize_under(ctx, substitute(ctx, f->body(), map), universals);
    }
    default:
        return f;
    }
}

struct Signature {
    bool arithmetic = false;
    std::set<Sort> sorts;  // uninterpreted sorts in use
};

void note_sort(Signature& sig, Context& ctx, Sort s) {
    if (s == ctx.rational_sort())
        sig.arithmetic = true;
    else if (s->kind == SortKind::Uninterpreted)
        sig.sorts.insert(s);
}

void scan_term(Signature& sig, Context& ctx, Term t) {
    for (Term s : subterms(t)) {
        note_sort(sig, ctx, s->sort);
        if (s->is_app())
            for (Sort a : s->fun->arg_sorts)
                note_sort(sig, ctx, a);
    }
}

void scan(Signature& sig, Context& ctx, Formula f) {
    switch (f->kind) {
    case FormulaKind::Lit: {
        const AtomNode& a = *f->lit.atom;
        if (a.kind == AtomKind::Leq) {
            sig.arithmetic = true;
        } else if (a.kind == AtomKind::Eq) {
            scan_term(sig, ctx, a.lhs);
            scan_term(sig, ctx, a.rhs);
        } else {
            scan(sig, ctx, a.quantified);
        }
        break;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Forall:
    case FormulaKind::Exists:
        for (Term v : f->bound)
            note_sort(sig, ctx, v->sort);
        for (Formula c : f->children)
            scan(sig, ctx, c);
        break;
    default:
        break;
    }
}

int depth(Term t) {
    int d = 0;
    for (Term a : t->args)
        d = std::max(d, depth(a) + 1);
    return d;
}

// Subterms of f built from the given constants only.
void ground_terms(Formula f, const std::vector<Term>& constants, std::set<Term>& out) {
    auto closed = [&](Term t) {
        return std::all_of(t->free_vars.begin(), t->free_vars.end(), [&](Term v) {
            return std::binary_search(constants.begin(), constants.end(), v);
        });
    };
    switch (f->kind) {
    case FormulaKind::Lit: {
        Literal l = f->lit;
        if (l.atom->kind == AtomKind::Proxy)
            return;
        for (Term top : top_terms(l))
            for (Term s : subterms(top))
                if (!s->is_linear() && closed(s))
                    out.insert(s);
        break;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Forall:
    case FormulaKind::Exists:
        for (Formula c : f->children)
            ground_terms(c, constants, out);
        break;
    default:
        break;
    }
}

std::string describe(const Model& m, Formula premise, Formula conclusion) {
    std::set<Term> vars(premise->free_vars.begin(), premise->free_vars.end());
    vars.insert(conclusion->free_vars.begin(), conclusion->free_vars.end());
    std::vector<Term> sorted_vars(vars.begin(), vars.end());
    std::sort(sorted_vars.begin(), sorted_vars.end(),
              [](Term a, Term b) { return a->name < b->name; });
    SymbolSet syms = symbs(premise);
    collect_symbs(conclusion, syms);
    std::vector<FunSym> funs;
    for (FunSym f : syms)
        if (f->name.rfind("!sk", 0) != 0)
            funs.push_back(f);
    std::sort(funs.begin(), funs.end(), [](FunSym a, FunSym b) {
        return a->name != b->name ? a->name < b->name : a->id < b->id;
    });
    return m.describe(sorted_vars, funs);
}

// All size vectors over `count` sorts with entries in 1..k, by increasing total.
std::vector<std::vector<int>> size_vectors(std::size_t count, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(count, 1);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == count) {
            out.push_back(cur);
            return;
        }
        for (int s = 1; s <= k; ++s) {
            cur[i] = s;
            rec(i + 1);
        }
    };
    rec(0);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int sa = 0, sb = 0;
        for (int x : a)
            sa += x;
        for (int x : b)
            sb += x;
        return sa < sb;
    });
    return out;
}

// Rounds of instantiating the universal subformulas that the current ground model
// relies on with the pool of closed terms. Unsat refutes phi.
SearchResult instantiate(Context& ctx, const OracleBudget& budget, Formula phi,
                         Formula skolemized, std::size_t cap, bool& capped) {
    capped = false;
    GroundSolver solver(ctx, budget);
    solver.assert_formula(skolemized);
    std::set<std::pair<std::uint32_t, std::vector<std::uint32_t>>> done;
    std::size_t instances = 0;
    for (int round = 0;; ++round) {
        SearchResult r = solver.solve();
        if (r == SearchResult::Unsat)
            return SearchResult::Unsat;
        if (r == SearchResult::Unknown)
            return r;
        if (instances >= cap)
            capped = true;
        if (round >= budget.rounds || instances >= cap)
            break;
        std::vector<Formula> active = solver.active_quantifiers();
        if (active.empty())
            break;

        std::set<Term> found;
        for (Atom a : solver.atoms())
            ground_terms(ctx.lit(Literal{a, true}), phi->free_vars, found);
        for (Formula q : active)
            ground_terms(q, phi->free_vars, found);
        std::map<Sort, std::vector<Term>> pool;
        for (Term t : found)
            pool[t->sort].push_back(t);
        for (auto& [s, ts] : pool)
            std::stable_sort(ts.begin(), ts.end(),
                             [](Term a, Term b) { return depth(a) < depth(b); });

        const std::size_t share = std::max<std::size_t>(
            8, cap / std::max(1, budget.rounds) / active.size());
        bool added = false;
        for (Formula q : active) {
            std::vector<const std::vector<Term>*> choices;
            for (Term x : q->bound) {
                auto& ts = pool[x->sort];
                if (ts.empty())
                    ts.push_back(ctx.app(ctx.intern_fun("!e" + x->sort->name, {}, x->sort), {}));
                choices.push_back(&ts);
            }
            std::size_t made = 0;
            std::size_t widest = 0;
            for (const auto* c : choices)
                widest = std::max(widest, c->size());
            // Tuples in order of their largest pool index, so shallow terms come first.
            std::vector<std::size_t> idx(choices.size());
            for (std::size_t level = 0; level < widest && made < share; ++level) {
                std::function<void(std::size_t, bool)> rec = [&](std::size_t i, bool hit) {
                    if (made >= share || instances >= cap)
                        return;
                    if (i == choices.size()) {
                        if (!hit)
                            return;
                        std::vector<std::uint32_t> ids;
                        Substitution map;
                        for (std::size_t j = 0; j < idx.size(); ++j) {
                            Term t = (*choices[j])[idx[j]];
                            ids.push_back(t.id());
                            map[q->bound[j]] = t;
                        }
                        if (!done.emplace(q.id(), ids).second)
                            return;
                        Formula inst = substitute(ctx, q->body(), map);
                        solver.add_clause({-solver.quantifier_var(q), solver.encode(inst)});
                        ++made;
                        ++instances;
                        added = true;
                        return;
                    }
                    std::size_t limit = std::min(level + 1, choices[i]->size());
                    for (std::size_t k = 0; k < limit; ++k) {
                        idx[i] = k;
                        rec(i + 1, hit || k == level);
                    }
                };
                rec(0, false);
            }
        }
        if (!added)
            break;
    }
    return SearchResult::Sat;
}

}  // namespace

Formula skolemize(Context& ctx, Formula f) {
    std::vector<Term> universals;
    return skolemize_under(ctx, f, universals);
}

SearchResult ground_satisfiable(Context& ctx, Formula f, const OracleBudget& budget, Model* model) {
    GroundSolver solver(ctx, budget);
    solver.assert_formula(f);
    SearchResult r = solver.solve();
    if (r != SearchResult::Sat)
        return r;
    if (f->has_quantifier)
        return SearchResult::Unknown;
    if (!model)
        return r;
    if (solver.model(*model) != TheoryResult::Sat)
        return SearchResult::Unknown;
    auto v = model->eval(f);
    return v && *v ? SearchResult::Sat : SearchResult::Unknown;
}

SearchResult finite_model(Context&, Formula f, const std::map<Sort, int>& sizes,
                          std::size_t max_nodes, Model* model) {
    Model m;
    for (const auto& [s, n] : sizes)
        m.set_domain(s, n);
    // Constants of uninterpreted sorts are assigned first, each either to an element
    // already used by an earlier constant of its sort or to the next unused one.
    std::vector<Cell> constants;
    for (Term v : f->free_vars)
        if (v->sort->kind == SortKind::Uninterpreted)
            constants.push_back(Cell{nullptr, v, {}});
    for (FunSym s : symbs(f))
        if (s->arity() == 0 && s->result->kind == SortKind::Uninterpreted)
            constants.push_back(Cell{s, Term(), {}});
    auto sort_of = [](const Cell& c) { return c.fun ? c.fun->result : c.var->sort; };

    std::size_t nodes = 0;
    bool unknown = false;
    std::function<bool()> search = [&]() -> bool {
        if (++nodes > max_nodes) {
            unknown = true;
            return false;
        }
        auto v = m.eval(f);
        if (v)
            return *v;
        if (!m.missing()) {
            unknown = true;
            return false;
        }
        Cell c = *m.missing();
        int d = m.domain(sort_of(c));
        if (d <= 0) {
            unknown = true;
            return false;
        }
        for (int x = 0; x < d; ++x) {
            m.set(c, x);
            if (search())
                return true;
            if (unknown)
                return false;
        }
        m.erase(c);
        return false;
    };
    std::map<Sort, int> used;
    std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
        if (i == constants.size())
            return search();
        Sort s = sort_of(constants[i]);
        int d = m.domain(s);
        if (d <= 0) {
            unknown = true;
            return false;
        }
        int prev = used[s];
        for (int x = 0; x < std::min(d, prev + 1); ++x) {
            m.set(constants[i], x);
            used[s] = std::max(prev, x + 1);
            if (place(i + 1))
                return true;
            if (unknown)
                return false;
        }
        used[s] = prev;
        m.erase(constants[i]);
        return false;
    };
    if (place(0)) {
        if (model)
            *model = m;
        return SearchResult::Sat;
    }
    return unknown ? SearchResult::Unknown : SearchResult::Unsat;
}

Verdict Oracle::implies(Formula premise, Formula conclusion) {
    auto key = std::make_pair(premise.id(), conclusion.id());
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
    }
    Verdict v = decide(premise, conclusion);
    std::lock_guard lock(mutex_);
    return cache_.emplace(key, v).first->second;
}

Verdict Oracle::decide(Formula premise, Formula conclusion) {
    if (conclusion->is_true() || premise->is_false() || premise == conclusion)
        return Verdict{VerdictKind::Valid, ""};
    if (premise->is_and() && std::find(premise->children.begin(), premise->children.end(),
                                       conclusion) != premise->children.end())
        return Verdict{VerdictKind::Valid, ""};
    if (conclusion->is_and()) {
        Verdict worst{VerdictKind::Valid, ""};
        for (Formula c : conclusion->children) {
            Verdict v = implies(premise, c);
            if (v.failed())
                return v;
            if (v.kind == VerdictKind::Unknown ||
                (v.kind == VerdictKind::ValidUpToSize && worst.kind == VerdictKind::Valid))
                worst = v;
        }
        return worst;
    }
    return refute(ctx_.mk_and({premise, ctx_.mk_not(conclusion)}), premise, conclusion);
}

Verdict Oracle::ground_implication(Formula premise, Formula conclusion) {
    Formula phi = open_proxies(ctx_, ctx_.mk_and({premise, ctx_.mk_not(conclusion)}));
    if (phi->has_quantifier)
        return Verdict{VerdictKind::Unknown, "not ground"};
    return refute(phi, premise, conclusion);
}

Verdict Oracle::quantified_implication(Formula premise, Formula conclusion) {
    return refute(ctx_.mk_and({premise, ctx_.mk_not(conclusion)}), premise, conclusion);
}

Verdict Oracle::refute(Formula f, Formula premise, Formula conclusion) {
    // Equality resolution and mini-scoping first: they often remove every quantifier.
    Formula phi = simplify(ctx_, open_proxies(ctx_, f));
    if (!phi->has_quantifier) {
        Model m;
        switch (ground_satisfiable(ctx_, phi, budget_, &m)) {
        case SearchResult::Unsat:
            return Verdict{VerdictKind::Valid, ""};
        case SearchResult::Sat:
            return Verdict{VerdictKind::Countermodel, describe(m, premise, conclusion)};
        case SearchResult::Unknown:
            return Verdict{VerdictKind::Unknown, "ground search inconclusive"};
        }
    }

    // Instance limits grow geometrically, so easy refutations stay cheap.
    Formula skolemized = skolemize(ctx_, phi);
    std::string reason = "instantiation inconclusive";
    for (std::size_t cap = std::min<std::size_t>(64, budget_.instances);; cap *= 4) {
        cap = std::min(cap, budget_.instances);
        bool capped = false;
        SearchResult r = instantiate(ctx_, budget_, phi, skolemized, cap, capped);
        if (r == SearchResult::Unsat)
            return Verdict{VerdictKind::Valid, ""};
        if (r == SearchResult::Unknown)
            reason = "ground search budget exhausted";
        if (!capped || cap >= budget_.instances)
            break;
    }

    Signature sig;
    scan(sig, ctx_, phi);
    if (sig.arithmetic)
        return Verdict{VerdictKind::Unknown, reason};
    std::vector<Sort> sorts(sig.sorts.begin(), sig.sorts.end());
    bool unknown = false;
    for (const auto& sizes : size_vectors(sorts.size(), budget_.domain_size)) {
        std::map<Sort, int> domains;
        for (std::size_t i = 0; i < sorts.size(); ++i)
            domains[sorts[i]] = sizes[i];
        Model m;
        SearchResult r = finite_model(ctx_, phi, domains, budget_.model_nodes, &m);
        if (r == SearchResult::Sat)
            return Verdict{VerdictKind::Countermodel, describe(m, premise, conclusion)};
        if (r == SearchResult::Unknown)
            unknown = true;
    }
    if (unknown)
        return Verdict{VerdictKind::Unknown, "finite model search budget exhausted"};
    return Verdict{VerdictKind::ValidUpToSize,
                   "no countermodel with domains up to " + std::to_string(budget_.domain_size)};
}

}  // namespace treeitp
