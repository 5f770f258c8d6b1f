#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "treeitp/terms.hpp"

namespace treeitp {

// sum coeffs[i] * x_i <= bound, or < bound when strict.
struct LinearConstraint {
    std::map<int, Rational> coeffs;
    Rational bound;
    bool strict = false;
};

enum class FmResult { Sat, Unsat, Budget };

// Exact Fourier-Motzkin elimination over the rationals.
class FourierMotzkin {
public:
    explicit FourierMotzkin(std::size_t max_constraints = 20000, std::uint64_t seed = 1)
        : max_constraints_(max_constraints), seed_(seed) {}

    // On Sat, `model` (if given) receives a point in the relative interior of the
    // solution set along the elimination order, indexed by variable.
    FmResult solve(const std::vector<LinearConstraint>& constraints, int num_vars,
                   std::vector<Rational>* model = nullptr);

private:
    std::size_t max_constraints_;
    std::uint64_t seed_;
};

}  // namespace treeitp
