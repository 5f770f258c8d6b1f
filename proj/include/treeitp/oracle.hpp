#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treeitp/model.hpp"
#include "treeitp/terms.hpp"

namespace treeitp {

struct OracleBudget {
    std::size_t fm_constraints = 20000;  // per Fourier-Motzkin run
    std::size_t decisions = 200000;      // per ground satisfiability check
    std::size_t instances = 4000;        // quantifier instances per obligation
    int rounds = 4;                      // instantiation rounds
    std::size_t model_nodes = 400000;    // finite model search nodes per domain size
    int domain_size = 3;                 // largest finite domain tried

    // Overrides from "key=value,key=value" (keys as above); throws Error on bad input.
    static OracleBudget parse(const std::string& text, OracleBudget base);
    // Applies TREEITP_BUDGET when set.
    static OracleBudget from_env(OracleBudget base);
};

enum class VerdictKind { Valid, ValidUpToSize, Countermodel, Unknown };

struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    std::string detail;

    bool passed() const { return kind == VerdictKind::Valid || kind == VerdictKind::ValidUpToSize; }
    bool failed() const { return kind == VerdictKind::Countermodel; }
};

std::string to_string(VerdictKind k);

enum class TheoryResult { Sat, Unsat, Unknown };

// Satisfiability of a conjunction of ground Eq/Leq literals in EUF + LRA (free variables
// are constants). On Sat, `model` receives a concrete interpretation covering the
// literals' terms and `extra` terms, when given.
TheoryResult theory_check(Context& ctx, const std::vector<Literal>& lits,
                          const OracleBudget& budget, Model* model = nullptr,
                          const std::vector<Term>& extra = {});

enum class SearchResult { Sat, Unsat, Unknown };

// Satisfiability of a ground formula; on Sat the model satisfies `f` by evaluation.
SearchResult ground_satisfiable(Context& ctx, Formula f, const OracleBudget& budget,
                                Model* model = nullptr);

// Searches for a model of f with uninterpreted sorts of the given sizes (Bool has two
// elements). Requires f to mention no arithmetic. Unknown when the node budget runs out.
SearchResult finite_model(Context& ctx, Formula f, const std::map<Sort, int>& sizes,
                          std::size_t max_nodes, Model* model = nullptr);

// Decides premise => conclusion. Ground problems are decided exactly; quantified ones
// by instantiation rounds, then by finite model search when no arithmetic is involved.
class Oracle {
public:
    Oracle(Context& ctx, OracleBudget budget) : ctx_(ctx), budget_(budget) {}

    Verdict implies(Formula premise, Formula conclusion);  // cached, thread-safe
    Verdict ground_implication(Formula premise, Formula conclusion);
    Verdict quantified_implication(Formula premise, Formula conclusion);

    const OracleBudget& budget() const { return budget_; }

private:
    Verdict refute(Formula f, Formula original_premise, Formula original_conclusion);
    Verdict decide(Formula premise, Formula conclusion);

    Context& ctx_;
    OracleBudget budget_;
    std::mutex mutex_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, Verdict> cache_;
};

// Replaces proxy literals by their quantified formulas.
Formula open_proxies(Context& ctx, Formula f);
// Removes existential quantifiers by Skolem symbols (of the enclosing universal variables).
Formula skolemize(Context& ctx, Formula f);

}  // namespace treeitp
