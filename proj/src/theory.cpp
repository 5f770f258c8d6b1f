#include <algorithm>
#include <map>
#include <unordered_map>

#include "treeitp/fourier_motzkin.hpp"
#include "treeitp/oracle.hpp"

namespace treeitp {

namespace {

using Form = std::map<int, Rational>;  // LRA variable -> coefficient

struct Affine {
    Form coeffs;
    Rational constant;
};

// Congruence closure over the literals' terms combined with Fourier-Motzkin for the
// arithmetic part. Equalities implied by arithmetic between shared terms are found by
// grouping terms by their value in a sample solution.
class Combination {
public:
    Combination(Context& ctx, const OracleBudget& budget) : ctx_(ctx), budget_(budget) {}

    TheoryResult run(const std::vector<Literal>& lits, const std::vector<Term>& extra,
                     Model* model);

private:
    enum class Step { Sat, Unsat, Unknown };

    int add(Term t);
    int find(int i);
    bool unite(int a, int b);
    void close();
    void prepare();
    Step saturate(std::uint64_t seed);
    bool implied_equal(const std::vector<LinearConstraint>& cs, int a, int b);
    LinearConstraint difference(int a, int b, bool strict) const;
    std::vector<LinearConstraint> constraints();
    bool build(Model& m, const std::vector<Rational>& values);
    Rational value(int i, const std::vector<Rational>& values) const;

    Context& ctx_;
    const OracleBudget& budget_;
    std::vector<Term> terms_;
    std::unordered_map<Term, int> index_;
    std::vector<int> parent_;
    std::vector<bool> shared_;
    std::vector<int> lra_var_;  // per term, -1 unless an atomic arithmetic term
    int num_lra_ = 0;
    std::vector<Affine> forms_;  // per arithmetic term
    std::vector<std::pair<int, int>> eqs_;
    std::vector<std::pair<int, int>> diseqs_;
    std::vector<LinearConstraint> base_;
    std::vector<Rational> values_;
    int true_ = -1;
    int false_ = -1;
};

int Combination::add(Term t) {
    if (auto it = index_.find(t); it != index_.end())
        return it->second;
    if (t->is_app())
        for (Term a : t->args)
            add(a);
    if (t->is_linear())
        for (const auto& m : t->monomials)
            add(m.term);
    int i = static_cast<int>(terms_.size());
    terms_.push_back(t);
    index_.emplace(t, i);
    parent_.push_back(i);
    return i;
}

int Combination::find(int i) {
    while (parent_[i] != i) {
        parent_[i] = parent_[parent_[i]];
        i = parent_[i];
    }
    return i;
}

bool Combination::unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b)
        return false;
    if (b < a)
        std::swap(a, b);
    parent_[b] = a;
    return true;
}

void Combination::close() {
    for (auto [a, b] : eqs_)
        unite(a, b);
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::pair<std::uint32_t, std::vector<int>>, int> signatures;
        for (int i = 0; i < static_cast<int>(terms_.size()); ++i) {
            Term t = terms_[i];
            if (!t->is_app() || t->fun->interpreted || t->args.empty())
                continue;
            std::vector<int> args;
            for (Term a : t->args)
                args.push_back(find(index_.at(a)));
            auto [it, fresh] = signatures.try_emplace({t->fun->id, std::move(args)}, i);
            if (!fresh && unite(it->second, i))
                changed = true;
        }
    }
}

void Combination::prepare() {
    const int n = static_cast<int>(terms_.size());
    shared_.assign(n, false);
    lra_var_.assign(n, -1);
    forms_.assign(n, Affine{});
    for (int i = 0; i < n; ++i) {
        Term t = terms_[i];
        if (t->is_app())
            for (Term a : t->args)
                shared_[index_.at(a)] = true;
        if (t->sort == ctx_.rational_sort() && (t->is_var() || t->is_app()))
            lra_var_[i] = num_lra_++;
    }
    for (auto [a, b] : eqs_)
        shared_[a] = shared_[b] = true;
    for (auto [a, b] : diseqs_)
        shared_[a] = shared_[b] = true;
    for (int i = 0; i < n; ++i) {
        Term t = terms_[i];
        if (t->sort != ctx_.rational_sort())
            continue;
        if (lra_var_[i] >= 0) {
            forms_[i].coeffs[lra_var_[i]] = 1;
            continue;
        }
        forms_[i].constant = t->value;
        for (const auto& m : t->monomials) {
            const Affine& inner = forms_[index_.at(m.term)];
            forms_[i].constant += m.coeff * inner.constant;
            for (const auto& [v, c] : inner.coeffs)
                forms_[i].coeffs[v] += m.coeff * c;
        }
    }
}

LinearConstraint Combination::difference(int a, int b, bool strict) const {
    // form(a) - form(b) <= 0, or < 0
    LinearConstraint c;
    for (const auto& [v, k] : forms_[a].coeffs)
        c.coeffs[v] += k;
    for (const auto& [v, k] : forms_[b].coeffs)
        c.coeffs[v] -= k;
    c.bound = forms_[b].constant - forms_[a].constant;
    c.strict = strict;
    return c;
}

std::vector<LinearConstraint> Combination::constraints() {
    std::vector<LinearConstraint> cs = base_;
    for (int i = 0; i < static_cast<int>(terms_.size()); ++i) {
        if (terms_[i]->sort != ctx_.rational_sort())
            continue;
        int r = find(i);
        if (r == i)
            continue;
        cs.push_back(difference(i, r, false));
        cs.push_back(difference(r, i, false));
    }
    return cs;
}

bool Combination::implied_equal(const std::vector<LinearConstraint>& cs, int a, int b) {
    for (bool below : {true, false}) {
        std::vector<LinearConstraint> probe = cs;
        probe.push_back(below ? difference(a, b, true) : difference(b, a, true));
        if (FourierMotzkin(budget_.fm_constraints).solve(probe, num_lra_) != FmResult::Unsat)
            return false;
    }
    return true;
}

Combination::Step Combination::saturate(std::uint64_t seed) {
    for (;;) {
        close();
        for (auto [a, b] : diseqs_)
            if (find(a) == find(b))
                return Step::Unsat;
        std::vector<LinearConstraint> cs = constraints();
        FmResult r = FourierMotzkin(budget_.fm_constraints, seed).solve(cs, num_lra_, &values_);
        if (r == FmResult::Unsat)
            return Step::Unsat;
        if (r == FmResult::Budget)
            return Step::Unknown;
        std::map<Rational, std::vector<int>> by_value;
        std::vector<bool> seen(terms_.size(), false);
        for (int i = 0; i < static_cast<int>(terms_.size()); ++i) {
            if (!shared_[i] || terms_[i]->sort != ctx_.rational_sort() || seen[find(i)])
                continue;
            seen[find(i)] = true;
            by_value[value(i, values_)].push_back(find(i));
        }
        bool changed = false;
        for (const auto& [v, group] : by_value) {
            std::vector<int> clusters;
            for (int g : group) {
                bool joined = false;
                for (int c : clusters)
                    if (implied_equal(cs, c, g)) {
                        eqs_.emplace_back(c, g);
                        joined = changed = true;
                        break;
                    }
                if (!joined)
                    clusters.push_back(g);
            }
        }
        if (!changed)
            return Step::Sat;
    }
}

Rational Combination::value(int i, const std::vector<Rational>& values) const {
    Rational v = forms_[i].constant;
    for (const auto& [var, c] : forms_[i].coeffs)
        v += c * values[var];
    return v;
}

bool Combination::build(Model& m, const std::vector<Rational>& values) {
    const int n = static_cast<int>(terms_.size());
    std::vector<Value> val(n);
    std::map<Sort, std::map<int, int>> classes;
    for (int i = 0; i < n; ++i) {
        Term t = terms_[i];
        if (t->sort == ctx_.rational_sort()) {
            val[i] = value(i, values);
        } else if (t->sort == ctx_.bool_sort()) {
            val[i] = find(i) == find(true_) ? 1 : 0;
        } else {
            auto& ids = classes[t->sort];
            auto [it, fresh] = ids.try_emplace(find(i), static_cast<int>(ids.size()));
            val[i] = it->second;
        }
    }
    for (const auto& [sort, ids] : classes)
        m.set_domain(sort, static_cast<int>(ids.size()));
    for (int i = 0; i < n; ++i) {
        Term t = terms_[i];
        Cell c;
        if (t->is_var()) {
            c.var = t;
        } else if (t->is_app() && !t->fun->interpreted) {
            c.fun = t->fun;
            for (Term a : t->args)
                c.args.push_back(val[index_.at(a)]);
        } else {
            continue;
        }
        if (auto old = m.get(c); old && *old != val[i])
            return false;
        m.set(c, val[i]);
    }
    for (auto [a, b] : diseqs_)
        if (val[a] == val[b])
            return false;
    return true;
}

TheoryResult Combination::run(const std::vector<Literal>& lits, const std::vector<Term>& extra,
                              Model* model) {
    std::vector<const Literal*> bool_diseqs;
    for (const Literal& l : lits) {
        switch (l.atom->kind) {
        case AtomKind::Eq: {
            int a = add(l.atom->lhs);
            int b = add(l.atom->rhs);
            (l.positive ? eqs_ : diseqs_).emplace_back(a, b);
            if (!l.positive && l.atom->lhs->sort == ctx_.bool_sort())
                bool_diseqs.push_back(&l);
            break;
        }
        case AtomKind::Leq:
            for (const auto& m : l.atom->sum)
                add(m.term);
            break;
        case AtomKind::Proxy:
            throw Error("quantified literal passed to the theory solver");
        }
    }
    for (Term t : extra)
        add(t);
    bool has_bool = std::any_of(terms_.begin(), terms_.end(),
                                [&](Term t) { return t->sort == ctx_.bool_sort(); });
    if (has_bool) {
        true_ = add(ctx_.true_term());
        false_ = add(ctx_.false_term());
        diseqs_.emplace_back(true_, false_);
        for (const Literal* l : bool_diseqs) {
            int a = index_.at(l->atom->lhs);
            int b = index_.at(l->atom->rhs);
            for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
                if (x == true_)
                    eqs_.emplace_back(y, false_);
                else if (x == false_)
                    eqs_.emplace_back(y, true_);
            }
        }
    }
    prepare();
    for (const Literal& l : lits) {
        if (l.atom->kind != AtomKind::Leq)
            continue;
        LinearConstraint c;
        for (const auto& m : l.atom->sum) {
            const Affine& f = forms_[index_.at(m.term)];
            for (const auto& [v, k] : f.coeffs)
                c.coeffs[v] += m.coeff * k;
            c.bound -= m.coeff * f.constant;
        }
        c.bound += l.atom->bound;
        if (!l.positive) {
            for (auto& [v, k] : c.coeffs)
                k = -k;
            c.bound = -c.bound;
            c.strict = true;
        }
        base_.push_back(std::move(c));
    }

    Step s = saturate(1);
    if (s != Step::Sat)
        return s == Step::Unsat ? TheoryResult::Unsat : TheoryResult::Unknown;
    if (has_bool) {
        // Boolean terms equal to neither constant are set to false; a conflict caused
        // by this choice is not a proof of unsatisfiability.
        bool forced = false;
        for (int i = 0; i < static_cast<int>(terms_.size()); ++i)
            if (terms_[i]->sort == ctx_.bool_sort() && find(i) != find(true_) &&
                find(i) != find(false_)) {
                eqs_.emplace_back(i, false_);
                unite(i, false_);
                forced = true;
            }
        if (forced && saturate(1) != Step::Sat)
            return TheoryResult::Unknown;
    }
    if (!model)
        return TheoryResult::Sat;
    std::vector<LinearConstraint> cs = constraints();
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        std::vector<Rational> values;
        if (FourierMotzkin(budget_.fm_constraints, seed).solve(cs, num_lra_, &values) !=
            FmResult::Sat)
            return TheoryResult::Unknown;
        Model m;
        if (build(m, values)) {
            *model = std::move(m);
            return TheoryResult::Sat;
        }
    }
    return TheoryResult::Unknown;
}

}  // namespace

TheoryResult theory_check(Context& ctx, const std::vector<Literal>& lits,
                          const OracleBudget& budget, Model* model,
                          const std::vector<Term>& extra) {
    Combination c(ctx, budget);
    return c.run(lits, extra, model);
}

}  // namespace treeitp
