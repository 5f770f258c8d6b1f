#include <queue>
#include <sstream>

#include "treeitp/ops.hpp"
#include "treeitp/printer.hpp"
#include "treeitp/proof.hpp"

namespace treeitp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<int> premises(const ProofNode& n) {
    if (const auto* r = std::get_if<ResolutionStep>(&n.step))
        return {r->pos, r->neg};
    return {};
}

Clause resolvent(const Clause& pos, const Clause& neg, Literal pivot) {
    return clause_union(clause_without(pos, pivot), clause_without(neg, ~pivot));
}

// The proxy literal of an input node whose clause is a single quantified literal.
std::optional<Literal> source_proxy(const Proof& proof, int source) {
    if (source < 0 || source >= static_cast<int>(proof.size()))
        return std::nullopt;
    const ProofNode& n = proof.node(source);
    if (!std::holds_alternative<InputStep>(n.step) || n.clause.size() != 1)
        return std::nullopt;
    Literal l = n.clause.front();
    if (l.atom->kind != AtomKind::Proxy || !l.positive)
        return std::nullopt;
    return l;
}

}  // namespace

int Proof::add(ProofNode node) {
    if (index_of(node.name) != -1)
        throw MalformedProof("proof node '" + node.name + "' defined twice");
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
}

int Proof::index_of(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
        if (nodes_[i].name == name)
            return i;
    return -1;
}

std::vector<int> topo_order(const Proof& proof) {
    const int n = static_cast<int>(proof.size());
    std::vector<int> pending(n, 0);
    std::vector<std::vector<int>> users(n);
    for (int i = 0; i < n; ++i)
        for (int p : premises(proof.node(i))) {
            if (p < 0 || p >= n)
                throw MalformedProof("proof node '" + proof.node(i).name +
                                     "' refers to a missing antecedent");
            ++pending[i];
            users[p].push_back(i);
        }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int i = 0; i < n; ++i)
        if (pending[i] == 0)
            ready.push(i);
    std::vector<int> order;
    while (!ready.empty()) {
        int i = ready.top();
        ready.pop();
        order.push_back(i);
        for (int u : users[i])
            if (--pending[u] == 0)
                ready.push(u);
    }
    if (static_cast<int>(order.size()) != n)
        throw MalformedProof("proof contains a cycle");
    return order;
}

void Proof::finalize(Context& ctx) {
    for (const ProofNode& n : nodes_)
        if (const auto* inst = std::get_if<InstantiationStep>(&n.step))
            if (inst->source < 0 || inst->source >= static_cast<int>(nodes_.size()))
                throw MalformedProof("proof node '" + n.name + "' instantiates a missing clause");
    order_ = topo_order(*this);
    for (int i : order_) {
        ProofNode& n = nodes_[i];
        if (n.stated) {
            n.clause = *n.stated;
            continue;
        }
        n.clause = std::visit(
            Overloaded{
                [&](const InputStep&) -> Clause {
                    throw MalformedProof("input node '" + n.name + "' has no clause");
                },
                [&](const InstantiationStep& s) -> Clause {
                    auto proxy = source_proxy(*this, s.source);
                    if (!proxy)
                        return {};
                    try {
                        return instantiation_clause(ctx, *proxy, s.terms);
                    } catch (const Error&) {
                        return {};
                    }
                },
                [&](const ResolutionStep& s) -> Clause {
                    return resolvent(nodes_[s.pos].clause, nodes_[s.neg].clause, s.pivot);
                },
                [&](const auto&) -> Clause {
                    try {
                        return lemma_clause(ctx, n.step);
                    } catch (const Error&) {
                        return {};
                    }
                }},
            n.step);
    }
    std::vector<bool> used(nodes_.size(), false);
    for (const ProofNode& n : nodes_)
        for (int p : premises(n))
            used[p] = true;
    sinks_.clear();
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
        if (!used[i])
            sinks_.push_back(i);
    root_ = sinks_.empty() ? -1 : sinks_.back();
}

Inequality as_inequality(Literal l) {
    if (l.atom->kind != AtomKind::Leq)
        throw MalformedLemma("Farkas literal " + to_string(l) + " is not an inequality");
    Inequality q;
    if (l.positive) {
        q.sum = l.atom->sum;
        q.bound = l.atom->bound;
        return q;
    }
    for (const auto& m : l.atom->sum)
        q.sum.push_back(Monomial{-m.coeff, m.term});
    q.bound = -l.atom->bound;
    q.strict = true;
    return q;
}

Clause lemma_clause(Context& ctx, const ProofStep& step) {
    std::vector<Literal> lits;
    if (const auto* s = std::get_if<TransitivityStep>(&step)) {
        const auto& t = s->chain;
        if (t.size() < 3)
            throw MalformedLemma("transitivity chain needs at least three terms");
        try {
            for (std::size_t i = 0; i + 1 < t.size(); ++i)
                lits.push_back(~ctx.eq(t[i], t[i + 1]));
            lits.push_back(ctx.eq(t.front(), t.back()));
        } catch (const SortError& e) {
            throw MalformedLemma(std::string("transitivity chain: ") + e.what());
        }
    } else if (const auto* s = std::get_if<CongruenceStep>(&step)) {
        if (s->lhs_args.size() != s->fun->arity() || s->rhs_args.size() != s->fun->arity())
            throw MalformedLemma("congruence on '" + s->fun->name + "' with wrong arity");
        try {
            lits.push_back(ctx.eq(ctx.app(s->fun, s->lhs_args), ctx.app(s->fun, s->rhs_args)));
            for (std::size_t i = 0; i < s->lhs_args.size(); ++i)
                if (s->lhs_args[i] != s->rhs_args[i])
                    lits.push_back(~ctx.eq(s->lhs_args[i], s->rhs_args[i]));
        } catch (const SortError& e) {
            throw MalformedLemma(std::string("congruence: ") + e.what());
        }
    } else if (const auto* s = std::get_if<TrichotomyStep>(&step)) {
        if (s->lhs->sort != ctx.rational_sort() || s->rhs->sort != ctx.rational_sort())
            throw MalformedLemma("trichotomy needs arithmetic terms");
        if (s->lhs == s->rhs)
            throw MalformedLemma("trichotomy needs two distinct terms");
        lits.push_back(ctx.eq(s->lhs, s->rhs));
        lits.push_back(~ctx.leq(s->lhs, s->rhs));
        lits.push_back(~ctx.leq(s->rhs, s->lhs));
    } else if (const auto* s = std::get_if<FarkasStep>(&step)) {
        if (s->parts.empty())
            throw MalformedLemma("Farkas lemma without literals");
        for (const auto& [k, l] : s->parts) {
            as_inequality(l);
            lits.push_back(~l);
        }
    } else {
        throw MalformedLemma("not a theory lemma");
    }
    return make_clause(std::move(lits));
}

Clause instantiation_clause(Context& ctx, Literal proxy, const std::vector<Term>& terms) {
    Formula q = proxy.atom->quantified;
    if (terms.size() != q->bound.size())
        throw MalformedLemma("instantiation gives " + std::to_string(terms.size()) +
                             " terms for " + std::to_string(q->bound.size()) + " variables");
    Substitution map;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i]->sort != q->bound[i]->sort)
            throw MalformedLemma("instantiation term " + to_string(terms[i]) + " has sort " +
                                 terms[i]->sort->name + ", expected " + q->bound[i]->sort->name);
        if (!is_ground(terms[i]))
            throw MalformedLemma("instantiation term " + to_string(terms[i]) + " is not ground");
        map[q->bound[i]] = terms[i];
    }
    Formula body = substitute(ctx, q->body(), map);
    std::vector<Literal> lits;
    if (body->is_true())
        throw MalformedLemma("instance is trivially true");
    if (!as_clause(body, lits))
        throw MalformedLemma("instance is not a clause: " + to_string(body));
    lits.push_back(~proxy);
    return make_clause(std::move(lits));
}

std::string farkas_problem(const FarkasStep& step) {
    std::map<std::uint32_t, Rational> total;
    Rational bound = 0;
    bool strict = false;
    for (const auto& [k, l] : step.parts) {
        if (k <= 0)
            return "coefficient " + to_string(k) + " is not positive";
        Inequality q;
        try {
            q = as_inequality(l);
        } catch (const MalformedLemma& e) {
            return e.what();
        }
        for (const auto& m : q.sum)
            total[m.term.id()] += k * m.coeff;
        bound += k * q.bound;
        strict = strict || q.strict;
    }
    for (const auto& [id, c] : total)
        if (c != 0)
            return "weighted sum does not cancel";
    if (bound < 0 || (bound == 0 && strict))
        return "";
    return "weighted sum 0 <= " + to_string(bound) + " is not a contradiction";
}

CheckReport check_proof(const Proof& proof, const TreeProblem& problem) {
    Context& ctx = problem.context();
    CheckReport report;
    auto flag = [&](const ProofNode& n, const std::string& msg) {
        report.violations.push_back(Violation{n.name, msg});
    };
    auto compare = [&](const ProofNode& n, const Clause& expected) {
        if (n.clause != expected)
            flag(n, "clause " + to_string(n.clause) + " does not match expected " +
                        to_string(expected));
    };

    for (int i = 0; i < static_cast<int>(proof.size()); ++i) {
        const ProofNode& n = proof.node(i);
        std::visit(
            Overloaded{
                [&](const InputStep& s) {
                    if (s.partition < 0 || s.partition >= static_cast<int>(problem.num_partitions())) {
                        flag(n, "unknown partition");
                        return;
                    }
                    const auto& label = problem.label(s.partition);
                    if (std::find(label.begin(), label.end(), n.clause) == label.end())
                        flag(n, "clause " + to_string(n.clause) + " is not a conjunct of partition " +
                                    problem.partition_name(s.partition));
                },
                [&](const InstantiationStep& s) {
                    auto proxy = source_proxy(proof, s.source);
                    if (!proxy) {
                        flag(n, "instantiated node is not a quantified input clause");
                        return;
                    }
                    try {
                        compare(n, instantiation_clause(ctx, *proxy, s.terms));
                    } catch (const MalformedLemma& e) {
                        flag(n, e.what());
                    }
                },
                [&](const ResolutionStep& s) {
                    const ProofNode& pos = proof.node(s.pos);
                    const ProofNode& neg = proof.node(s.neg);
                    if (!contains(pos.clause, s.pivot))
                        flag(n, "pivot " + to_string(s.pivot) + " missing from " + pos.name);
                    if (!contains(neg.clause, ~s.pivot))
                        flag(n, "negated pivot " + to_string(~s.pivot) + " missing from " + neg.name);
                    compare(n, resolvent(pos.clause, neg.clause, s.pivot));
                },
                [&](const CongruenceStep& s) {
                    try {
                        compare(n, lemma_clause(ctx, n.step));
                    } catch (const MalformedLemma& e) {
                        flag(n, e.what());
                        return;
                    }
                    if (s.pf && (*s.pf < 0 || *s.pf >= static_cast<int>(problem.num_partitions()) ||
                                 !problem.partitions(s.fun).test(*s.pf)))
                        flag(n, "chosen partition does not contain '" + s.fun->name + "'");
                    if (problem.partitions(s.fun).none())
                        flag(n, "'" + s.fun->name + "' occurs in no partition");
                },
                [&](const FarkasStep& s) {
                    try {
                        compare(n, lemma_clause(ctx, n.step));
                    } catch (const MalformedLemma& e) {
                        flag(n, e.what());
                        return;
                    }
                    if (std::string why = farkas_problem(s); !why.empty())
                        flag(n, "Farkas coefficients invalid: " + why);
                },
                [&](const auto&) {
                    try {
                        compare(n, lemma_clause(ctx, n.step));
                    } catch (const MalformedLemma& e) {
                        flag(n, e.what());
                    }
                }},
            n.step);
    }

    if (proof.root() < 0) {
        report.violations.push_back(Violation{"", "proof has no root"});
        return report;
    }
    const ProofNode& root = proof.node(proof.root());
    if (!root.clause.empty())
        flag(root, "root clause " + to_string(root.clause) + " is not empty");
    for (int s : proof.sinks())
        if (s != proof.root() && !std::holds_alternative<InputStep>(proof.node(s).step))
            flag(proof.node(s), "node is not used by the derivation of the root");
    return report;
}

}  // namespace treeitp
