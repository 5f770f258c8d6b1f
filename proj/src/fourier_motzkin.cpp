#include <algorithm>
#include <optional>
#include <random>
#include <set>

#include "treeitp/fourier_motzkin.hpp"

namespace treeitp {

namespace {

using Key = std::vector<std::pair<int, Rational>>;

struct Bound {
    Rational value;
    bool strict;
};

using System = std::map<Key, Bound>;

// The tighter of two bounds on the same left-hand side.
bool tighter(const Bound& a, const Bound& b) {
    return a.value < b.value || (a.value == b.value && a.strict && !b.strict);
}

// Adds the constraint scaled so that its first coefficient is +1 or -1.
// Returns false when a variable-free constraint is violated.
bool insert(System& sys, Key key, Bound bound) {
    key.erase(std::remove_if(key.begin(), key.end(), [](const auto& p) { return p.second == 0; }),
              key.end());
    if (key.empty())
        return bound.strict ? bound.value > 0 : bound.value >= 0;
    Rational scale = abs(key.front().second);
    for (auto& [v, c] : key)
        c /= scale;
    bound.value /= scale;
    auto [it, fresh] = sys.try_emplace(std::move(key), bound);
    if (!fresh && tighter(bound, it->second))
        it->second = bound;
    return true;
}

Rational coefficient(const Key& key, int var) {
    for (const auto& [v, c] : key)
        if (v == var)
            return c;
    return 0;
}

Key combine(const Key& a, const Rational& ka, const Key& b, const Rational& kb) {
    std::map<int, Rational> sum;
    for (const auto& [v, c] : a)
        sum[v] += ka * c;
    for (const auto& [v, c] : b)
        sum[v] += kb * c;
    Key out;
    for (auto& [v, c] : sum)
        if (c != 0)
            out.emplace_back(v, c);
    return out;
}

struct Stage {
    int var;
    std::vector<std::pair<Key, Bound>> constraints;  // those mentioning var
};

}  // namespace

FmResult FourierMotzkin::solve(const std::vector<LinearConstraint>& constraints, int num_vars,
                               std::vector<Rational>* model) {
    System sys;
    for (const LinearConstraint& c : constraints) {
        Key key(c.coeffs.begin(), c.coeffs.end());
        if (!insert(sys, std::move(key), Bound{c.bound, c.strict}))
            return FmResult::Unsat;
    }
    std::vector<Stage> stages;
    for (;;) {
        std::map<int, std::pair<std::size_t, std::size_t>> counts;
        for (const auto& [key, b] : sys)
            for (const auto& [v, c] : key)
                (c > 0 ? counts[v].first : counts[v].second)++;
        if (counts.empty())
            break;
        int best = -1;
        long long best_cost = 0;
        for (const auto& [v, pn] : counts) {
            long long cost = static_cast<long long>(pn.first * pn.second) -
                             static_cast<long long>(pn.first + pn.second);
            if (best < 0 || cost < best_cost) {
                best = v;
                best_cost = cost;
            }
        }
        Stage stage{best, {}};
        System next;
        std::vector<std::pair<Key, Bound>> pos;
        std::vector<std::pair<Key, Bound>> neg;
        for (auto& [key, b] : sys) {
            Rational c = coefficient(key, best);
            if (c == 0) {
                next.emplace(key, b);
                continue;
            }
            stage.constraints.emplace_back(key, b);
            (c > 0 ? pos : neg).emplace_back(key, b);
        }
        for (const auto& [pk, pb] : pos) {
            Rational a = coefficient(pk, best);
            for (const auto& [nk, nb] : neg) {
                Rational b = -coefficient(nk, best);
                Key key = combine(pk, b, nk, a);
                if (!insert(next, std::move(key),
                            Bound{b * pb.value + a * nb.value, pb.strict || nb.strict}))
                    return FmResult::Unsat;
            }
        }
        if (next.size() > max_constraints_)
            return FmResult::Budget;
        stages.push_back(std::move(stage));
        sys = std::move(next);
    }
    if (!model)
        return FmResult::Sat;

    std::mt19937_64 rng(seed_);
    std::uniform_int_distribution<int> pick(1, 96);
    model->assign(num_vars, Rational(0));
    for (auto& v : *model) {
        v = Rational(pick(rng) * 8, 97) - 4;
        v.canonicalize();
    }
    for (auto stage = stages.rbegin(); stage != stages.rend(); ++stage) {
        std::optional<Bound> lo;
        std::optional<Bound> hi;
        for (const auto& [key, b] : stage->constraints) {
            Rational c = 0;
            Rational rest = 0;
            for (const auto& [v, k] : key) {
                if (v == stage->var)
                    c = k;
                else
                    rest += k * (*model)[v];
            }
            Bound limit{(b.value - rest) / c, b.strict};
            if (c > 0) {
                if (!hi || tighter(limit, *hi))
                    hi = limit;
            } else {
                Bound neg{-limit.value, limit.strict};
                if (!lo || tighter(neg, *lo))
                    lo = neg;
            }
        }
        Rational value;
        Rational r(pick(rng), 97);
        if (lo && hi) {
            Rational low = -lo->value;
            value = low == hi->value ? low : low + (hi->value - low) * r;
        } else if (lo) {
            value = -lo->value + r * 4;
        } else if (hi) {
            value = hi->value - r * 4;
        } else {
            value = r * 8 - 4;
        }
        value.canonicalize();
        (*model)[stage->var] = value;
    }
    return FmResult::Sat;
}

}  // namespace treeitp
