#include <sstream>

#include "treeitp/printer.hpp"

namespace treeitp {

namespace {

void print_term(std::ostream& os, Term t);

void print_rational(std::ostream& os, const Rational& q) {
    if (q < 0) {
        os << "(- ";
        print_rational(os, -q);
        os << ')';
    } else if (q.get_den() == 1) {
        os << q.get_num().get_str();
    } else {
        os << "(/ " << q.get_num().get_str() << ' ' << q.get_den().get_str() << ')';
    }
}

void print_monomial(std::ostream& os, const Rational& coeff, Term t) {
    if (coeff == 1) {
        print_term(os, t);
        return;
    }
    os << "(* ";
    print_rational(os, coeff);
    os << ' ';
    print_term(os, t);
    os << ')';
}

// Sum of monomials plus a constant, omitting a zero constant.
void print_sum(std::ostream& os, const std::vector<Monomial>& monos, const Rational& constant) {
    std::size_t parts = monos.size() + (constant != 0 ? 1 : 0);
    if (parts == 0) {
        os << '0';
        return;
    }
    if (parts == 1) {
        if (monos.empty())
            print_rational(os, constant);
        else
            print_monomial(os, monos[0].coeff, monos[0].term);
        return;
    }
    os << "(+";
    for (const auto& m : monos) {
        os << ' ';
        print_monomial(os, m.coeff, m.term);
    }
    if (constant != 0) {
        os << ' ';
        print_rational(os, constant);
    }
    os << ')';
}

void print_term(std::ostream& os, Term t) {
    switch (t->kind) {
    case TermKind::Var:
        os << t->name;
        break;
    case TermKind::App:
        if (t->args.empty()) {
            os << t->fun->name;
            break;
        }
        os << '(' << t->fun->name;
        for (Term a : t->args) {
            os << ' ';
            print_term(os, a);
        }
        os << ')';
        break;
    case TermKind::Const:
        print_rational(os, t->value);
        break;
    case TermKind::Linear:
        print_sum(os, t->monomials, t->value);
        break;
    }
}

bool is_bool_constant(Term t, const char* name) {
    return t->is_app() && t->fun->interpreted && t->fun->name == name;
}

void print_formula(std::ostream& os, Formula f);

void print_atom(std::ostream& os, const AtomNode& a, bool positive) {
    switch (a.kind) {
    case AtomKind::Eq: {
        Term other;
        if (is_bool_constant(a.rhs, "true"))
            other = a.lhs;
        else if (is_bool_constant(a.lhs, "true"))
            other = a.rhs;
        if (!positive)
            os << "(not ";
        if (other) {
            print_term(os, other);
        } else {
            os << "(= ";
            print_term(os, a.lhs);
            os << ' ';
            print_term(os, a.rhs);
            os << ')';
        }
        if (!positive)
            os << ')';
        break;
    }
    case AtomKind::Leq: {
        std::vector<Monomial> left, right;
        for (const auto& m : a.sum) {
            if (m.coeff > 0)
                left.push_back(m);
            else
                right.push_back(Monomial{-m.coeff, m.term});
        }
        os << (positive ? "(<= " : "(> ");
        print_sum(os, left, 0);
        os << ' ';
        print_sum(os, right, a.bound);
        os << ')';
        break;
    }
    case AtomKind::Proxy:
        if (!positive)
            os << "(not ";
        print_formula(os, a.quantified);
        if (!positive)
            os << ')';
        break;
    }
}

void print_formula(std::ostream& os, Formula f) {
    switch (f->kind) {
    case FormulaKind::True:
        os << "true";
        break;
    case FormulaKind::False:
        os << "false";
        break;
    case FormulaKind::Lit:
        print_atom(os, *f->lit.atom, f->lit.positive);
        break;
    case FormulaKind::And:
    case FormulaKind::Or:
        os << (f->is_and() ? "(and" : "(or");
        for (Formula c : f->children) {
            os << ' ';
            print_formula(os, c);
        }
        os << ')';
        break;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
        os << (f->kind == FormulaKind::Forall ? "(forall (" : "(exists (");
        for (std::size_t i = 0; i < f->bound.size(); ++i) {
            if (i)
                os << ' ';
            os << '(' << f->bound[i]->name << ' ' << f->bound[i]->sort->name << ')';
        }
        os << ") ";
        print_formula(os, f->body());
        os << ')';
        break;
    }
}

}  // namespace

std::string to_string(const Rational& q) {
    std::ostringstream os;
    print_rational(os, q);
    return os.str();
}

std::string to_string(Sort s) { return s->name; }

std::string to_string(Term t) {
    std::ostringstream os;
    print_term(os, t);
    return os.str();
}

std::string to_string(Literal l) {
    std::ostringstream os;
    print_atom(os, *l.atom, l.positive);
    return os.str();
}

std::string to_string(Formula f) {
    std::ostringstream os;
    print_formula(os, f);
    return os.str();
}

std::string to_string(const std::vector<Literal>& clause) {
    if (clause.empty())
        return "false";
    if (clause.size() == 1)
        return to_string(clause.front());
    std::string out = "(or";
    for (const Literal& l : clause)
        out += " " + to_string(l);
    return out + ")";
}

}  // namespace treeitp
