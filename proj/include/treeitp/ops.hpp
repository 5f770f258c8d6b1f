#pragma once

#include <set>
#include <unordered_map>
#include <vector>

#include "treeitp/terms.hpp"

namespace treeitp {

using Substitution = std::unordered_map<Term, Term>;
using SymbolSet = std::set<FunSym, FunSymLess>;

// Capture-avoiding; bound variables are renamed when a replacement would be captured.
Term substitute(Context& ctx, Term t, const Substitution& map);
Formula substitute(Context& ctx, Formula f, const Substitution& map);
Formula substitute(Context& ctx, Literal l, const Substitution& map);

inline const std::vector<Term>& free_vars(Formula f) { return f->free_vars; }
inline const std::vector<Term>& free_vars(Term t) { return t->free_vars; }

// Uninterpreted symbols only.
SymbolSet symbs(Term t);
SymbolSet symbs(Literal l);
SymbolSet symbs(Formula f);
void collect_symbs(Formula f, SymbolSet& out);

FunSym hd(Term t);

// t and all of its subterms, outermost first, without duplicates.
std::vector<Term> subterms(Term t);
// The argument terms of a non-proxy literal (both sides of =, the summands of <=).
std::vector<Term> top_terms(Literal l);
bool occurs_in(Term needle, Term haystack);
bool is_ground(Term t);

// Renames every bound variable to a name determined by the quantifier's nesting
// height, so alpha-equivalent formulas become identical.
Formula alpha_canonical(Context& ctx, Formula f);
bool alpha_equivalent(Context& ctx, Formula a, Formula b);

// Literals of a formula that is a clause (a literal, an or of literals, or false).
bool as_clause(Formula f, std::vector<Literal>& out);

}  // namespace treeitp
