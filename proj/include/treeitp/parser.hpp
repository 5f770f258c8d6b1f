#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "treeitp/clause.hpp"
#include "treeitp/sexpr.hpp"
#include "treeitp/terms.hpp"

namespace treeitp {

std::optional<Rational> parse_numeral(const std::string& text);

// Parses sorts, terms, formulas and clauses against a user signature.
class TermParser {
public:
    explicit TermParser(Context& ctx) : ctx_(ctx) {}

    Context& context() { return ctx_; }

    void declare_sort(const SExpr& cmd);
    void declare_fun(const SExpr& cmd);
    FunSym find_fun(const std::string& name) const;
    const std::unordered_map<std::string, FunSym>& functions() const { return funs_; }

    Sort sort(const SExpr& e) const;
    Term term(const SExpr& e);
    Formula formula(const SExpr& e);
    // A literal in clause position; a universally quantified formula becomes a proxy.
    Literal literal(const SExpr& e);
    Clause clause(const SExpr& e);
    // A label conjunct list: (and c1 c2 ...) or a single clause.
    void clauses(const SExpr& e, std::vector<Clause>& out);

private:
    [[noreturn]] void fail(const SExpr& e, const std::string& msg) const;
    Term lookup_symbol(const SExpr& e);
    Formula quantified(const SExpr& e, FormulaKind kind);
    Formula comparison(const SExpr& e);
    Term arithmetic(const SExpr& e);

    Context& ctx_;
    std::unordered_map<std::string, FunSym> funs_;
    std::vector<std::unordered_map<std::string, Term>> scopes_;
};

}  // namespace treeitp
