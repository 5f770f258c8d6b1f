#pragma once

#include "treeitp/terms.hpp"

namespace treeitp {

// Equivalence-preserving cleanup of interpolants: destructive equality resolution,
// quantifier mini-scoping, complementary literals, duplicate and absorbed operands,
// and closed "two distinct elements exist" conjuncts implied by a sibling disequality.
// Multi-variable quantifiers come out as nested single-variable ones.
Formula simplify(Context& ctx, Formula f);

}  // namespace treeitp
