#pragma once

#include <algorithm>
#include <vector>

#include "treeitp/terms.hpp"

namespace treeitp {

// A disjunction of literals, kept sorted and duplicate-free.
using Clause = std::vector<Literal>;

inline Clause make_clause(std::vector<Literal> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    return lits;
}

inline bool contains(const Clause& c, Literal l) {
    return std::binary_search(c.begin(), c.end(), l);
}

inline Clause clause_without(const Clause& c, Literal l) {
    Clause out;
    for (const Literal& x : c)
        if (x != l)
            out.push_back(x);
    return out;
}

inline Clause clause_union(const Clause& a, const Clause& b) {
    Clause out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// The clause as a formula, with proxy literals opened.
inline Formula clause_formula(Context& ctx, const Clause& c) {
    std::vector<Formula> parts;
    for (const Literal& l : c)
        parts.push_back(ctx.literal_formula(l));
    return ctx.mk_or(std::move(parts));
}

}  // namespace treeitp
