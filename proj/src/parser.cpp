#include <cctype>

#include "treeitp/errors.hpp"
#include "treeitp/parser.hpp"

namespace treeitp {

std::optional<Rational> parse_numeral(const std::string& text) {
    std::size_t i = 0;
    bool negative = false;
    if (!text.empty() && text[0] == '-') {
        negative = true;
        i = 1;
    }
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        return std::nullopt;
    std::string digits;
    std::string fraction;
    std::string denominator;
    char mode = 'i';
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            (mode == 'i' ? digits : mode == '.' ? fraction : denominator) += c;
        } else if ((c == '.' || c == '/') && mode == 'i') {
            mode = c;
        } else {
            return std::nullopt;
        }
    }
    Rational value;
    if (mode == '/') {
        if (denominator.empty() || mpz_class(denominator) == 0)
            return std::nullopt;
        value = Rational(mpz_class(digits), mpz_class(denominator));
    } else if (mode == '.') {
        mpz_class scale = 1;
        for (std::size_t k = 0; k < fraction.size(); ++k)
            scale *= 10;
        value = Rational(mpz_class(digits + fraction), scale);
    } else {
        value = Rational(mpz_class(digits));
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

void TermParser::fail(const SExpr& e, const std::string& msg) const {
    throw ParseError(msg, e.line, e.column);
}

Sort TermParser::sort(const SExpr& e) const {
    if (!e.is_symbol())
        fail(e, "expected a sort name");
    if (e.text == "Real" || e.text == "Rat")
        return ctx_.rational_sort();
    if (Sort s = ctx_.find_sort(e.text))
        return s;
    fail(e, "unknown sort '" + e.text + "'");
}

void TermParser::declare_sort(const SExpr& cmd) {
    if (cmd.items.size() < 2 || !cmd.items[1].is_symbol())
        fail(cmd, "expected (declare-sort name)");
    if (cmd.items[1].text.starts_with("!") || cmd.items[1].text == "Rat")
        fail(cmd.items[1], "reserved sort name '" + cmd.items[1].text + "'");
    try {
        ctx_.declare_sort(cmd.items[1].text);
    } catch (const SortError& err) {
        fail(cmd.items[1], err.what());
    }
}

void TermParser::declare_fun(const SExpr& cmd) {
    if (cmd.items.size() != 4 || !cmd.items[1].is_symbol() || !cmd.items[2].is_list())
        fail(cmd, "expected (declare-fun name (sorts...) sort)");
    const std::string& name = cmd.items[1].text;
    if (name.starts_with("!") || name == "true" || name == "false" || parse_numeral(name))
        fail(cmd.items[1], "reserved function name '" + name + "'");
    if (funs_.count(name))
        fail(cmd.items[1], "function '" + name + "' already declared");
    std::vector<Sort> args;
    for (const SExpr& s : cmd.items[2].items)
        args.push_back(sort(s));
    funs_[name] = ctx_.intern_fun(name, std::move(args), sort(cmd.items[3]));
}

FunSym TermParser::find_fun(const std::string& name) const {
    auto it = funs_.find(name);
    return it == funs_.end() ? nullptr : it->second;
}

Term TermParser::lookup_symbol(const SExpr& e) {
    for (auto scope = scopes_.rbegin(); scope != scopes_.rend(); ++scope)
        if (auto it = scope->find(e.text); it != scope->end())
            return it->second;
    if (auto q = parse_numeral(e.text))
        return ctx_.constant(*q);
    if (e.text == "true")
        return ctx_.true_term();
    if (e.text == "false")
        return ctx_.false_term();
    if (e.text.starts_with("!v") && e.text.size() > 2) {
        std::string digits = e.text.substr(2);
        bool numeric = digits.find_first_not_of("0123456789") == std::string::npos;
        if (numeric) {
            Term defining = ctx_.term_by_id(static_cast<std::uint32_t>(std::stoul(digits)));
            if (!defining)
                fail(e, "auxiliary variable '" + e.text + "' refers to no term");
            return ctx_.var(e.text, defining->sort);
        }
    }
    if (FunSym f = find_fun(e.text)) {
        if (f->arity() != 0)
            fail(e, "function '" + e.text + "' used without arguments");
        return ctx_.app(f, {});
    }
    fail(e, "unknown symbol '" + e.text + "'");
}

Term TermParser::arithmetic(const SExpr& e) {
    const std::string& op = e.items[0].text;
    std::vector<Term> args;
    for (std::size_t i = 1; i < e.items.size(); ++i)
        args.push_back(term(e.items[i]));
    if (args.empty())
        fail(e, "'" + op + "' needs arguments");
    try {
        if (op == "+") {
            LinearForm f;
            for (Term a : args)
                f.monomials.push_back(Monomial{1, a});
            return ctx_.linear(f);
        }
        if (op == "-") {
            if (args.size() == 1)
                return ctx_.scale(-1, args[0]);
            LinearForm f;
            f.monomials.push_back(Monomial{1, args[0]});
            for (std::size_t i = 1; i < args.size(); ++i)
                f.monomials.push_back(Monomial{-1, args[i]});
            return ctx_.linear(f);
        }
        if (op == "*") {
            Rational k = 1;
            Term factor;
            for (Term a : args) {
                if (a->is_const()) {
                    k *= a->value;
                } else if (!factor) {
                    factor = a;
                } else {
                    fail(e, "nonlinear multiplication");
                }
            }
            return factor ? ctx_.scale(k, factor) : ctx_.constant(k);
        }
        if (op == "/") {
            Term result = args[0];
            for (std::size_t i = 1; i < args.size(); ++i) {
                if (!args[i]->is_const() || args[i]->value == 0)
                    fail(e, "division by a non-constant or zero");
                result = ctx_.scale(1 / args[i]->value, result);
            }
            return result;
        }
    } catch (const SortError& err) {
        fail(e, err.what());
    }
    fail(e, "unknown operator '" + op + "'");
}

Term TermParser::term(const SExpr& e) {
    if (e.is_symbol())
        return lookup_symbol(e);
    if (e.items.empty() || !e.items[0].is_symbol())
        fail(e, "expected a term");
    const std::string& head = e.items[0].text;
    if (head == "+" || head == "-" || head == "*" || head == "/")
        return arithmetic(e);
    FunSym f = find_fun(head);
    if (!f)
        fail(e.items[0], "unknown function '" + head + "'");
    std::vector<Term> args;
    for (std::size_t i = 1; i < e.items.size(); ++i)
        args.push_back(term(e.items[i]));
    try {
        return ctx_.app(f, std::move(args));
    } catch (const SortError& err) {
        fail(e, err.what());
    }
}

Formula TermParser::comparison(const SExpr& e) {
    const std::string& op = e.items[0].text;
    std::vector<Term> args;
    for (std::size_t i = 1; i < e.items.size(); ++i)
        args.push_back(term(e.items[i]));
    if (args.size() < 2)
        fail(e, "'" + op + "' needs at least two arguments");
    std::vector<Formula> parts;
    try {
        if (op == "distinct") {
            for (std::size_t i = 0; i < args.size(); ++i)
                for (std::size_t j = i + 1; j < args.size(); ++j)
                    parts.push_back(ctx_.mk_not(ctx_.equal(args[i], args[j])));
            return ctx_.mk_and(std::move(parts));
        }
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            Term a = args[i];
            Term b = args[i + 1];
            if (op == "=")
                parts.push_back(ctx_.equal(a, b));
            else if (op == "<=")
                parts.push_back(ctx_.le(a, b));
            else if (op == "<")
                parts.push_back(ctx_.lt(a, b));
            else if (op == ">=")
                parts.push_back(ctx_.ge(a, b));
            else
                parts.push_back(ctx_.gt(a, b));
        }
    } catch (const SortError& err) {
        fail(e, err.what());
    }
    return ctx_.mk_and(std::move(parts));
}

Formula TermParser::quantified(const SExpr& e, FormulaKind kind) {
    if (e.items.size() != 3 || !e.items[1].is_list())
        fail(e, "expected (" + e.items[0].text + " ((x Sort)...) body)");
    std::unordered_map<std::string, Term> scope;
    std::vector<Term> vars;
    for (const SExpr& b : e.items[1].items) {
        if (!b.is_list() || b.items.size() != 2 || !b.items[0].is_symbol())
            fail(b, "expected a binding (x Sort)");
        Term v = ctx_.var(b.items[0].text, sort(b.items[1]));
        scope[b.items[0].text] = v;
        vars.push_back(v);
    }
    scopes_.push_back(std::move(scope));
    Formula body = formula(e.items[2]);
    scopes_.pop_back();
    return ctx_.quantifier(kind, std::move(vars), body);
}

Formula TermParser::formula(const SExpr& e) {
    if (e.is("true"))
        return ctx_.top();
    if (e.is("false"))
        return ctx_.bottom();
    if (e.is_list() && !e.items.empty() && e.items[0].is_symbol()) {
        const std::string& head = e.items[0].text;
        if (head == "not") {
            if (e.items.size() != 2)
                fail(e, "'not' takes one argument");
            return ctx_.mk_not(formula(e.items[1]));
        }
        if (head == "and" || head == "or") {
            std::vector<Formula> parts;
            for (std::size_t i = 1; i < e.items.size(); ++i)
                parts.push_back(formula(e.items[i]));
            return head == "and" ? ctx_.mk_and(std::move(parts)) : ctx_.mk_or(std::move(parts));
        }
        if (head == "=>") {
            if (e.items.size() < 3)
                fail(e, "'=>' needs at least two arguments");
            Formula result = formula(e.items.back());
            for (std::size_t i = e.items.size() - 2; i >= 1; --i)
                result = ctx_.implies(formula(e.items[i]), result);
            return result;
        }
        if (head == "forall")
            return quantified(e, FormulaKind::Forall);
        if (head == "exists")
            return quantified(e, FormulaKind::Exists);
        if (head == "=" || head == "distinct" || head == "<=" || head == "<" || head == ">=" ||
            head == ">")
            return comparison(e);
    }
    Term t = term(e);
    if (t->sort != ctx_.bool_sort())
        fail(e, "expected a formula, found a term of sort " + t->sort->name);
    return ctx_.equal(t, ctx_.true_term());
}

Literal TermParser::literal(const SExpr& e) {
    if (e.headed("not") && e.items.size() == 2)
        return ~literal(e.items[1]);
    if (e.headed("forall")) {
        Formula q = formula(e);
        try {
            return ctx_.proxy(q);
        } catch (const SortError& err) {
            fail(e, err.what());
        }
    }
    Formula f = formula(e);
    if (!f->is_lit())
        fail(e, "expected a literal, got " + e.str());
    return f->lit;
}

Clause TermParser::clause(const SExpr& e) {
    if (e.is("false"))
        return {};
    if (e.headed("or")) {
        std::vector<Literal> lits;
        for (std::size_t i = 1; i < e.items.size(); ++i)
            lits.push_back(literal(e.items[i]));
        return make_clause(std::move(lits));
    }
    return {literal(e)};
}

void TermParser::clauses(const SExpr& e, std::vector<Clause>& out) {
    if (e.headed("and")) {
        for (std::size_t i = 1; i < e.items.size(); ++i)
            clauses(e.items[i], out);
        return;
    }
    if (e.is("true"))
        return;
    out.push_back(clause(e));
}

}  // namespace treeitp
