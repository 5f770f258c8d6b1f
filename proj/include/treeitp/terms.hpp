#pragma once

#include <gmpxx.h>

#include <atomic>
#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "treeitp/errors.hpp"

namespace treeitp {

using Rational = mpq_class;

enum class SortKind : std::uint8_t { Uninterpreted, Rational, Boolean };

struct SortDecl {
    std::string name;
    SortKind kind;
    std::uint32_t id;
};
using Sort = const SortDecl*;

struct FunDecl {
    std::string name;
    std::vector<Sort> arg_sorts;
    Sort result;
    bool interpreted;
    std::uint32_t id;

    std::size_t arity() const { return arg_sorts.size(); }
};
using FunSym = const FunDecl*;

struct FunSymLess {
    bool operator()(FunSym a, FunSym b) const { return a->id < b->id; }
};

// Non-owning handle to an interned node. Nodes live as long as their Context.
template <class Node>
class Handle {
public:
    Handle() = default;
    explicit Handle(const Node* node) : node_(node) {}

    const Node* operator->() const { return node_; }
    const Node& operator*() const { return *node_; }
    const Node* get() const { return node_; }
    explicit operator bool() const { return node_ != nullptr; }
    std::uint32_t id() const { return node_->id; }

    friend bool operator==(Handle a, Handle b) { return a.node_ == b.node_; }
    friend std::strong_ordering operator<=>(Handle a, Handle b) {
        if (!a.node_ || !b.node_)
            return a.node_ ? std::strong_ordering::greater
                           : (b.node_ ? std::strong_ordering::less : std::strong_ordering::equal);
        return a.id() <=> b.id();
    }

private:
    const Node* node_ = nullptr;
};

struct TermNode;
struct AtomNode;
struct FormulaNode;
using Term = Handle<TermNode>;
using Atom = Handle<AtomNode>;
using Formula = Handle<FormulaNode>;

enum class TermKind : std::uint8_t { Var, App, Const, Linear };

struct Monomial {
    Rational coeff;
    Term term;
};

struct TermNode {
    TermKind kind = TermKind::Var;
    std::uint32_t id = 0;
    Sort sort = nullptr;
    std::size_t hash = 0;
    std::string name;                 // Var
    FunSym fun = nullptr;             // App
    std::vector<Term> args;           // App
    Rational value;                   // Const; constant offset of Linear
    std::vector<Monomial> monomials;  // Linear: sorted by term id, nonzero
    std::vector<Term> free_vars;      // sorted by id

    bool is_var() const { return kind == TermKind::Var; }
    bool is_app() const { return kind == TermKind::App; }
    bool is_const() const { return kind == TermKind::Const; }
    bool is_linear() const { return kind == TermKind::Linear; }
};

enum class AtomKind : std::uint8_t { Eq, Leq, Proxy };

// Eq: lhs = rhs with lhs.id <= rhs.id.
// Leq: sum <= bound, coefficients coprime integers, sum sorted by term id.
// Proxy: a closed universally quantified clause used as a single literal.
struct AtomNode {
    AtomKind kind = AtomKind::Eq;
    std::uint32_t id = 0;
    std::size_t hash = 0;
    Term lhs;
    Term rhs;
    std::vector<Monomial> sum;
    Rational bound;
    Formula quantified;
    std::vector<Term> free_vars;
};

struct Literal {
    Atom atom;
    bool positive = true;

    Literal operator~() const { return Literal{atom, !positive}; }
    friend bool operator==(const Literal&, const Literal&) = default;
    friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
        if (auto c = a.atom <=> b.atom; c != 0)
            return c;
        return a.positive <=> b.positive;
    }
};

enum class FormulaKind : std::uint8_t { True, False, Lit, And, Or, Forall, Exists };

struct FormulaNode {
    FormulaKind kind = FormulaKind::True;
    std::uint32_t id = 0;
    std::size_t hash = 0;
    Literal lit;                     // Lit
    std::vector<Formula> children;   // And/Or operands; quantifier body at [0]
    std::vector<Term> bound;         // Forall/Exists
    std::vector<Term> free_vars;     // sorted by id
    bool has_quantifier = false;     // contains a quantifier or a proxy atom

    bool is_true() const { return kind == FormulaKind::True; }
    bool is_false() const { return kind == FormulaKind::False; }
    bool is_lit() const { return kind == FormulaKind::Lit; }
    bool is_and() const { return kind == FormulaKind::And; }
    bool is_or() const { return kind == FormulaKind::Or; }
    bool is_quantifier() const {
        return kind == FormulaKind::Forall || kind == FormulaKind::Exists;
    }
    Formula body() const { return children.front(); }
};

struct LinearForm {
    std::vector<Monomial> monomials;  // sorted by term id, nonzero
    Rational constant;
};

struct HandleHash {
    template <class Node>
    std::size_t operator()(Handle<Node> h) const {
        return std::hash<const void*>{}(h.get());
    }
};

struct LiteralHash {
    std::size_t operator()(const Literal& l) const {
        return std::hash<const void*>{}(l.atom.get()) * 2 + (l.positive ? 1 : 0);
    }
};

// Owns every sort, symbol, term, atom and formula of a session. Interning is
// synchronized; the returned handles are immutable and may be shared freely.
class Context {
public:
    Context();
    ~Context();
    Context(const Context&) = delete;
    Context& operator=(const Context&) = delete;

    Sort rational_sort() const { return rational_; }
    Sort bool_sort() const { return bool_; }
    Sort declare_sort(const std::string& name);
    Sort find_sort(std::string_view name) const;

    // Symbols are keyed by full signature, so overloading by sort is allowed.
    FunSym intern_fun(const std::string& name, std::vector<Sort> arg_sorts, Sort result,
                      bool interpreted = false);
    FunSym fresh_fun(const std::string& prefix, std::vector<Sort> arg_sorts, Sort result);
    FunSym true_fun() const { return true_fun_; }
    FunSym false_fun() const { return false_fun_; }

    Term var(const std::string& name, Sort sort);
    Term app(FunSym f, std::vector<Term> args);
    Term constant(const Rational& value);
    Term linear(const LinearForm& form);
    Term add(Term a, Term b);
    Term sub(Term a, Term b);
    Term scale(const Rational& k, Term t);
    Term true_term();
    Term false_term();
    Term term_by_id(std::uint32_t id) const;
    LinearForm linear_form(Term t) const;

    Literal eq(Term a, Term b);
    // sum <= bound; SortError if the sum has no variable part after normalization.
    Literal leq(const LinearForm& lhs_minus_rhs);
    Literal leq(Term a, Term b);
    Literal proxy(Formula quantified);

    Formula top();
    Formula bottom();
    Formula lit(Literal l);
    // Opens proxy literals into their quantified formula.
    Formula literal_formula(Literal l);
    Formula le(Term a, Term b);
    Formula lt(Term a, Term b);
    Formula ge(Term a, Term b) { return le(b, a); }
    Formula gt(Term a, Term b) { return lt(b, a); }
    Formula equal(Term a, Term b) { return lit(eq(a, b)); }
    // form <= 0, or form < 0 when strict; folds variable-free forms to true/false.
    Formula linear_constraint(const LinearForm& form, bool strict);

    Formula mk_and(std::vector<Formula> children);
    Formula mk_or(std::vector<Formula> children);
    Formula mk_not(Formula f);
    Formula implies(Formula a, Formula b) { return mk_or({mk_not(a), b}); }
    Formula forall(std::vector<Term> vars, Formula body);
    Formula exists(std::vector<Term> vars, Formula body);
    Formula quantifier(FormulaKind kind, std::vector<Term> vars, Formula body);

    std::size_t num_terms() const;

private:
    struct TermKey {
        std::size_t operator()(const TermNode* n) const { return n->hash; }
        bool operator()(const TermNode* a, const TermNode* b) const;
    };
    struct AtomKey {
        std::size_t operator()(const AtomNode* n) const { return n->hash; }
        bool operator()(const AtomNode* a, const AtomNode* b) const;
    };
    struct FormulaKey {
        std::size_t operator()(const FormulaNode* n) const { return n->hash; }
        bool operator()(const FormulaNode* a, const FormulaNode* b) const;
    };

    Term intern_term(TermNode&& node);
    Atom intern_atom(AtomNode&& node);
    Formula intern_formula(FormulaNode&& node);
    Formula junction(FormulaKind kind, std::vector<Formula> children);

    mutable std::recursive_mutex mutex_;
    std::deque<SortDecl> sorts_;
    std::deque<FunDecl> funs_;
    std::deque<TermNode> terms_;
    std::deque<AtomNode> atoms_;
    std::deque<FormulaNode> formulas_;
    std::unordered_map<std::string, Sort> sort_names_;
    std::unordered_map<std::string, FunSym> fun_keys_;
    std::unordered_set<const TermNode*, TermKey, TermKey> term_table_;
    std::unordered_set<const AtomNode*, AtomKey, AtomKey> atom_table_;
    std::unordered_set<const FormulaNode*, FormulaKey, FormulaKey> formula_table_;
    std::unordered_map<std::uint32_t, Atom> proxy_by_canonical_;
    std::unordered_map<std::uint32_t, Formula> negation_cache_;
    std::vector<const TermNode*> term_index_;
    std::atomic<std::uint32_t> fresh_counter_{0};
    Sort rational_ = nullptr;
    Sort bool_ = nullptr;
    FunSym true_fun_ = nullptr;
    FunSym false_fun_ = nullptr;
};

}  // namespace treeitp

template <class Node>
struct std::hash<treeitp::Handle<Node>> {
    std::size_t operator()(treeitp::Handle<Node> h) const {
        return std::hash<const void*>{}(h.get());
    }
};

template <>
struct std::hash<treeitp::Literal> {
    std::size_t operator()(const treeitp::Literal& l) const { return treeitp::LiteralHash{}(l); }
};
