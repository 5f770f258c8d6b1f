#include <algorithm>
#include <cstdlib>

#include "ground_solver.hpp"
#include "treeitp/ops.hpp"

namespace treeitp {

GroundSolver::GroundSolver(Context& ctx, const OracleBudget& budget)
    : ctx_(ctx), budget_(budget), var_atom_(1) {
    true_var_ = new_var();
    units_.push_back(true_var_);
}

int GroundSolver::new_var() {
    var_atom_.emplace_back();
    return ++num_vars_;
}

int GroundSolver::encode(Formula f) {
    switch (f->kind) {
    case FormulaKind::True:
        return true_var_;
    case FormulaKind::False:
        return -true_var_;
    case FormulaKind::Lit: {
        Atom a = f->lit.atom;
        int v;
        if (auto it = atom_vars_.find(a); it != atom_vars_.end()) {
            v = it->second;
        } else {
            v = new_var();
            atom_vars_.emplace(a, v);
            if (a->kind != AtomKind::Proxy) {
                var_atom_[v] = a;
                atoms_.push_back(a);
            }
        }
        return f->lit.positive ? v : -v;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
        if (auto it = gates_.find(f); it != gates_.end())
            return it->second;
        std::vector<int> children;
        for (Formula c : f->children)
            children.push_back(encode(c));
        int g = new_var();
        gates_.emplace(f, g);
        if (f->is_and()) {
            for (int c : children)
                add_clause({-g, c});
        } else {
            children.insert(children.begin(), -g);
            add_clause(std::move(children));
        }
        return g;
    }
    case FormulaKind::Forall: {
        if (auto it = quantifier_vars_.find(f); it != quantifier_vars_.end())
            return it->second;
        int q = new_var();
        quantifier_vars_.emplace(f, q);
        return q;
    }
    case FormulaKind::Exists: {
        if (auto it = gates_.find(f); it != gates_.end())
            return it->second;
        opaque_ = true;
        int q = new_var();
        gates_.emplace(f, q);
        return q;
    }
    }
    return true_var_;
}

void GroundSolver::add_clause(std::vector<int> clause) {
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    std::vector<int> kept;
    for (int l : clause) {
        if (l == true_var_ || std::binary_search(clause.begin(), clause.end(), -l))
            return;
        if (l != -true_var_)
            kept.push_back(l);
    }
    if (kept.empty())
        empty_clause_ = true;
    else if (kept.size() == 1)
        units_.push_back(kept.front());
    else
        clauses_.push_back(std::move(kept));
}

int GroundSolver::value(int lit) const {
    int v = assignment_[std::abs(lit)];
    return lit < 0 ? -v : v;
}

bool GroundSolver::holds(int lit) const { return value(lit) == 1; }

void GroundSolver::assign(int lit) {
    assignment_[std::abs(lit)] = lit < 0 ? -1 : 1;
    trail_.push_back(lit);
}

bool GroundSolver::propagate() {
    while (head_ < trail_.size()) {
        int falsified = -trail_[head_++];
        auto& ws = watches_[code(falsified)];
        for (std::size_t i = 0; i < ws.size();) {
            std::vector<int>& c = clauses_[ws[i]];
            if (c[0] == falsified)
                std::swap(c[0], c[1]);
            if (value(c[0]) == 1) {
                ++i;
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < c.size(); ++k)
                if (value(c[k]) != -1) {
                    std::swap(c[1], c[k]);
                    watches_[code(c[1])].push_back(ws[i]);
                    ws[i] = ws.back();
                    ws.pop_back();
                    moved = true;
                    break;
                }
            if (moved)
                continue;
            if (value(c[0]) == -1)
                return false;
            assign(c[0]);
            ++i;
        }
    }
    return true;
}

std::vector<Literal> GroundSolver::theory_literals() const {
    std::vector<Literal> lits;
    for (Atom a : atoms_) {
        int v = atom_vars_.at(a);
        if (assignment_[v] != 0)
            lits.push_back(Literal{a, assignment_[v] > 0});
    }
    return lits;
}

TheoryResult GroundSolver::theory() {
    std::vector<int> key;
    for (Atom a : atoms_) {
        int v = atom_vars_.at(a);
        if (assignment_[v] != 0)
            key.push_back(assignment_[v] * v);
    }
    if (auto it = theory_cache_.find(key); it != theory_cache_.end())
        return it->second;
    TheoryResult r = key.empty() ? TheoryResult::Sat : theory_check(ctx_, theory_literals(), budget_);
    theory_cache_.emplace(std::move(key), r);
    return r;
}

int GroundSolver::choose() const {
    for (const int u : units_)
        if (value(u) == 0)
            return u;
    for (const auto& c : clauses_) {
        int pick = 0;
        bool satisfied = false;
        for (int l : c) {
            int v = value(l);
            if (v == 1) {
                satisfied = true;
                break;
            }
            if (v == 0 && pick == 0)
                pick = l;
        }
        if (!satisfied && pick != 0)
            return pick;
    }
    return 0;
}

void GroundSolver::backtrack_to(std::size_t level) {
    std::size_t start = level_start_[level];
    for (std::size_t i = start; i < trail_.size(); ++i)
        assignment_[std::abs(trail_[i])] = 0;
    trail_.resize(start);
    head_ = start;
    level_start_.resize(level);
    flipped_.resize(level);
}

SearchResult GroundSolver::solve() {
    assignment_.assign(num_vars_ + 1, 0);
    trail_.clear();
    level_start_.clear();
    flipped_.clear();
    head_ = 0;
    if (empty_clause_)
        return SearchResult::Unsat;
    watches_.assign(2 * (num_vars_ + 1), {});
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
        watches_[code(clauses_[i][0])].push_back(i);
        watches_[code(clauses_[i][1])].push_back(i);
    }
    for (int u : units_) {
        if (value(u) == -1)
            return SearchResult::Unsat;
        if (value(u) == 0)
            assign(u);
    }
    bool unknown = false;
    std::size_t decisions = 0;
    for (;;) {
        bool conflict = !propagate();
        TheoryResult tr = TheoryResult::Sat;
        if (!conflict) {
            tr = theory();
            conflict = tr == TheoryResult::Unsat;
        }
        int next = 0;
        if (!conflict) {
            next = choose();
            if (next == 0) {
                if (tr == TheoryResult::Sat)
                    return SearchResult::Sat;
                unknown = true;
                conflict = true;
            }
        }
        if (conflict) {
            for (;;) {
                if (level_start_.empty())
                    return unknown ? SearchResult::Unknown : SearchResult::Unsat;
                std::size_t level = level_start_.size() - 1;
                int decided = trail_[level_start_[level]];
                bool was_flipped = flipped_[level];
                backtrack_to(level);
                if (!was_flipped) {
                    level_start_.push_back(trail_.size());
                    flipped_.push_back(true);
                    assign(-decided);
                    break;
                }
            }
            continue;
        }
        if (++decisions > budget_.decisions)
            return SearchResult::Unknown;
        level_start_.push_back(trail_.size());
        flipped_.push_back(false);
        assign(next);
    }
}

std::vector<Formula> GroundSolver::active_quantifiers() const {
    std::vector<Formula> out;
    for (const auto& [f, v] : quantifier_vars_)
        if (assignment_[v] > 0)
            out.push_back(f);
    return out;
}

TheoryResult GroundSolver::model(Model& m) {
    std::vector<Term> extra;
    for (Atom a : atoms_) {
        if (a->kind == AtomKind::Eq) {
            extra.push_back(a->lhs);
            extra.push_back(a->rhs);
        } else {
            for (const auto& mono : a->sum)
                extra.push_back(mono.term);
        }
    }
    return theory_check(ctx_, theory_literals(), budget_, &m, extra);
}

}  // namespace treeitp
