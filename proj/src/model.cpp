#include <sstream>

#include "treeitp/model.hpp"
#include "treeitp/printer.hpp"

namespace treeitp {

bool operator<(const Cell& a, const Cell& b) {
    std::uint32_t fa = a.fun ? a.fun->id + 1 : 0;
    std::uint32_t fb = b.fun ? b.fun->id + 1 : 0;
    if (fa != fb)
        return fa < fb;
    std::uint32_t va = a.var ? a.var.id() : 0;
    std::uint32_t vb = b.var ? b.var.id() : 0;
    if (va != vb)
        return va < vb;
    return a.args < b.args;
}

int Model::domain(Sort s) const {
    if (s->kind == SortKind::Boolean)
        return 2;
    auto it = domains_.find(s);
    return it == domains_.end() ? -1 : it->second;
}

std::optional<Value> Model::get(const Cell& c) const {
    auto it = cells_.find(c);
    if (it == cells_.end())
        return std::nullopt;
    return it->second;
}

std::optional<Value> Model::lookup(Cell c) {
    auto it = cells_.find(c);
    if (it != cells_.end())
        return it->second;
    if (!missing_)
        missing_ = std::move(c);
    return std::nullopt;
}

std::optional<Value> Model::eval(Term t) {
    missing_.reset();
    return eval_term(t);
}

std::optional<bool> Model::eval(Formula f) {
    missing_.reset();
    return eval_formula(f);
}

std::optional<Value> Model::eval_term(Term t) {
    switch (t->kind) {
    case TermKind::Var: {
        if (auto it = env_.find(t); it != env_.end())
            return it->second;
        return lookup(Cell{nullptr, t, {}});
    }
    case TermKind::Const:
        return t->value;
    case TermKind::Linear: {
        Value sum = t->value;
        for (const auto& m : t->monomials) {
            auto v = eval_term(m.term);
            if (!v)
                return std::nullopt;
            sum += m.coeff * *v;
        }
        return sum;
    }
    case TermKind::App: {
        if (t->fun->interpreted)
            return Value(t->fun->name == "true" ? 1 : 0);
        Cell c{t->fun, Term(), {}};
        for (Term a : t->args) {
            auto v = eval_term(a);
            if (!v)
                return std::nullopt;
            c.args.push_back(*v);
        }
        return lookup(std::move(c));
    }
    }
    return std::nullopt;
}

std::optional<bool> Model::eval_formula(Formula f) {
    switch (f->kind) {
    case FormulaKind::True:
        return true;
    case FormulaKind::False:
        return false;
    case FormulaKind::Lit: {
        const Literal& l = f->lit;
        std::optional<bool> value;
        switch (l.atom->kind) {
        case AtomKind::Eq: {
            auto a = eval_term(l.atom->lhs);
            auto b = eval_term(l.atom->rhs);
            if (a && b)
                value = *a == *b;
            break;
        }
        case AtomKind::Leq: {
            Value sum = 0;
            bool ok = true;
            for (const auto& m : l.atom->sum) {
                auto v = eval_term(m.term);
                if (!v) {
                    ok = false;
                    break;
                }
                sum += m.coeff * *v;
            }
            if (ok)
                value = sum <= l.atom->bound;
            break;
        }
        case AtomKind::Proxy:
            value = eval_formula(l.atom->quantified);
            break;
        }
        if (!value)
            return std::nullopt;
        return *value == l.positive;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
        const bool conj = f->is_and();
        bool unknown = false;
        for (Formula c : f->children) {
            auto v = eval_formula(c);
            if (!v)
                unknown = true;
            else if (*v != conj)
                return !conj;
        }
        if (unknown)
            return std::nullopt;
        return conj;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
        const bool universal = f->kind == FormulaKind::Forall;
        std::vector<int> sizes;
        for (Term v : f->bound) {
            int d = domain(v->sort);
            if (d < 0)
                return std::nullopt;
            sizes.push_back(d);
        }
        std::vector<std::optional<Value>> saved;
        for (Term v : f->bound) {
            auto it = env_.find(v);
            saved.push_back(it == env_.end() ? std::nullopt : std::optional<Value>(it->second));
        }
        std::vector<int> index(f->bound.size(), 0);
        bool unknown = false;
        std::optional<bool> result = universal;
        bool empty = std::any_of(sizes.begin(), sizes.end(), [](int s) { return s == 0; });
        while (!empty) {
            for (std::size_t i = 0; i < index.size(); ++i)
                env_[f->bound[i]] = Value(index[i]);
            auto v = eval_formula(f->body());
            if (!v) {
                unknown = true;
            } else if (*v != universal) {
                result = !universal;
                break;
            }
            std::size_t i = 0;
            while (i < index.size() && ++index[i] == sizes[i])
                index[i++] = 0;
            if (i == index.size())
                break;
        }
        for (std::size_t i = 0; i < f->bound.size(); ++i) {
            if (saved[i])
                env_[f->bound[i]] = *saved[i];
            else
                env_.erase(f->bound[i]);
        }
        if (*result == universal && unknown)
            return std::nullopt;
        return result;
    }
    }
    return std::nullopt;
}

std::string Model::describe(const std::vector<Term>& vars, const std::vector<FunSym>& funs) const {
    std::ostringstream out;
    bool first = true;
    auto sep = [&] {
        if (!first)
            out << "; ";
        first = false;
    };
    for (const auto& [sort, size] : domains_) {
        sep();
        out << "|" << sort->name << "| = " << size;
    }
    for (Term v : vars)
        if (auto val = get(Cell{nullptr, v, {}})) {
            sep();
            out << v->name << " = " << to_string(*val);
        }
    for (FunSym f : funs)
        for (const auto& [cell, val] : cells_) {
            if (cell.fun != f)
                continue;
            sep();
            out << f->name;
            if (!cell.args.empty()) {
                out << "(";
                for (std::size_t i = 0; i < cell.args.size(); ++i)
                    out << (i ? "," : "") << to_string(cell.args[i]);
                out << ")";
            }
            out << " = " << to_string(val);
        }
    return out.str();
}

}  // namespace treeitp
