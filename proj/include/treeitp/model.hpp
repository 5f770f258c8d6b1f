#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "treeitp/terms.hpp"

namespace treeitp {

// Values: rationals for Real, 0/1 for Bool, element indices for uninterpreted sorts.
using Value = Rational;

// A function table entry or a free variable.
struct Cell {
    FunSym fun = nullptr;  // null for a free variable
    Term var;
    std::vector<Value> args;

    friend bool operator<(const Cell& a, const Cell& b);
};

// A (partial) first-order interpretation. Evaluation reports the first undefined
// cell it needed instead of guessing a value.
class Model {
public:
    void set_domain(Sort s, int size) { domains_[s] = size; }
    int domain(Sort s) const;  // -1 when unbounded (Real) or unset
    void set(const Cell& c, const Value& v) { cells_[c] = v; }
    void erase(const Cell& c) { cells_.erase(c); }
    std::optional<Value> get(const Cell& c) const;
    const std::map<Cell, Value>& cells() const { return cells_; }

    std::optional<Value> eval(Term t);
    std::optional<bool> eval(Formula f);
    const std::optional<Cell>& missing() const { return missing_; }
    void clear_missing() { missing_.reset(); }

    // Values of the given variables and symbols, one per line.
    std::string describe(const std::vector<Term>& vars, const std::vector<FunSym>& funs) const;

private:
    std::optional<Value> eval_term(Term t);
    std::optional<bool> eval_formula(Formula f);
    std::optional<Value> lookup(Cell c);

    std::map<Sort, int> domains_;
    std::map<Cell, Value> cells_;
    std::unordered_map<Term, Value> env_;  // bound variables
    std::optional<Cell> missing_;
};

}  // namespace treeitp
