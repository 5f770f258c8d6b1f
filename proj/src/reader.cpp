#include <map>
#include <set>

#include "treeitp/errors.hpp"
#include "treeitp/reader.hpp"

namespace treeitp {

namespace {

[[noreturn]] void fail(const SExpr& e, const std::string& msg) {
    throw ParseError(msg, e.line, e.column);
}

// Keyword arguments of a command; items without a keyword are positional.
struct Arguments {
    std::map<std::string, std::vector<const SExpr*>> keys;
    std::vector<const SExpr*> positional;

    const std::vector<const SExpr*>* find(const std::string& key) const {
        auto it = keys.find(key);
        return it == keys.end() ? nullptr : &it->second;
    }
};

Arguments split_arguments(const SExpr& cmd, std::size_t start,
                          const std::map<std::string, std::size_t>& arity) {
    Arguments out;
    for (std::size_t i = start; i < cmd.items.size(); ++i) {
        const SExpr& item = cmd.items[i];
        if (item.is_symbol() && item.text.starts_with(":")) {
            auto it = arity.find(item.text);
            if (it == arity.end())
                fail(item, "unknown keyword '" + item.text + "'");
            if (out.keys.count(item.text))
                fail(item, "keyword '" + item.text + "' given twice");
            if (i + it->second >= cmd.items.size())
                fail(item, "keyword '" + item.text + "' needs " + std::to_string(it->second) +
                               " argument(s)");
            auto& values = out.keys[item.text];
            for (std::size_t k = 1; k <= it->second; ++k)
                values.push_back(&cmd.items[i + k]);
            i += it->second;
        } else {
            out.positional.push_back(&item);
        }
    }
    return out;
}

std::string name_of(const SExpr& e) {
    if (!e.is_symbol())
        fail(e, "expected a name");
    return e.text;
}

struct TreeReader {
    TermParser& parser;
    GeneralTree tree;
    std::set<std::string> names;

    void node(const SExpr& cmd) {
        if (cmd.items.size() < 2)
            fail(cmd, "expected (node id child...)");
        GeneralTree::Node n;
        n.name = name_of(cmd.items[1]);
        if (!names.insert(n.name).second)
            fail(cmd.items[1], "tree node '" + n.name + "' defined twice");
        Arguments args = split_arguments(cmd, 2, {{":label", 1}});
        for (const SExpr* c : args.positional)
            n.children.push_back(name_of(*c));
        if (auto label = args.find(":label"))
            parser.clauses(*label->front(), n.label);
        if (n.children.empty())
            fail(cmd, "inner node '" + n.name + "' has no children");
        tree.nodes.push_back(std::move(n));
    }

    void leaf(const SExpr& cmd) {
        if (cmd.items.size() < 2)
            fail(cmd, "expected (leaf id formula...)");
        GeneralTree::Node n;
        n.name = name_of(cmd.items[1]);
        if (!names.insert(n.name).second)
            fail(cmd.items[1], "tree node '" + n.name + "' defined twice");
        for (std::size_t i = 2; i < cmd.items.size(); ++i)
            parser.clauses(cmd.items[i], n.label);
        tree.nodes.push_back(std::move(n));
    }
};

bool already_binary(const GeneralTree& tree) {
    for (const auto& n : tree.nodes)
        if (!n.children.empty() && (n.children.size() != 2 || !n.label.empty()))
            return false;
    return true;
}

class ProofReader {
public:
    ProofReader(TermParser& parser, const BinarizedProblem& problem)
        : parser_(parser), problem_(problem) {}

    void declare(const SExpr& cmd) {
        if (cmd.items.size() < 2)
            fail(cmd, "expected a proof node name");
        std::string name = name_of(cmd.items[1]);
        if (!index_.emplace(name, static_cast<int>(index_.size())).second)
            fail(cmd.items[1], "proof node '" + name + "' defined twice");
    }

    ProofNode read(const SExpr& cmd) {
        ProofNode n;
        n.name = cmd.items[1].text;
        n.line = cmd.line;
        const std::string& head = cmd.items[0].text;
        if (head == "input") {
            Arguments args = split_arguments(cmd, 2, {{":partition", 1}});
            auto p = args.find(":partition");
            if (!p)
                fail(cmd, "input node needs :partition");
            n.step = InputStep{partition(*p->front())};
            n.stated = single_clause(cmd, args, true);
        } else if (head == "inst") {
            Arguments args = split_arguments(cmd, 2, {{":of", 1}, {":terms", 1}});
            auto of = args.find(":of");
            auto terms = args.find(":terms");
            if (!of || !terms || !terms->front()->is_list())
                fail(cmd, "expected (inst id :of node :terms (t...) clause)");
            InstantiationStep step{reference(*of->front()), {}};
            for (const SExpr& t : terms->front()->items)
                step.terms.push_back(parser_.term(t));
            n.step = std::move(step);
            n.stated = single_clause(cmd, args, false);
        } else if (head == "lemma") {
            Arguments args = split_arguments(
                cmd, 2, {{":trans", 1}, {":cong", 3}, {":tricho", 2}, {":farkas", 1}, {":pf", 1}});
            n.step = lemma(cmd, args);
            n.stated = single_clause(cmd, args, false);
        } else {
            Arguments args = split_arguments(cmd, 2, {{":pos", 1}, {":neg", 1}, {":pivot", 1}});
            auto pos = args.find(":pos");
            auto neg = args.find(":neg");
            auto pivot = args.find(":pivot");
            if (!pos || !neg || !pivot)
                fail(cmd, "expected (res id :pos node :neg node :pivot literal)");
            n.step = ResolutionStep{reference(*pos->front()), reference(*neg->front()),
                                    parser_.literal(*pivot->front())};
            n.stated = single_clause(cmd, args, false);
        }
        return n;
    }

    int partition(const SExpr& e) const {
        auto p = label_partition(problem_, name_of(e));
        if (!p)
            fail(e, "'" + e.text + "' is not a labelled tree node");
        return *p;
    }

private:
    int reference(const SExpr& e) const {
        auto it = index_.find(name_of(e));
        if (it == index_.end())
            throw MalformedProof(std::to_string(e.line) + ":" + std::to_string(e.column) +
                                 ": unknown proof node '" + e.text + "'");
        return it->second;
    }

    std::optional<Clause> single_clause(const SExpr& cmd, const Arguments& args, bool required) {
        if (args.positional.size() > 1)
            fail(*args.positional[1], "unexpected argument");
        if (args.positional.empty()) {
            if (required)
                fail(cmd, "node needs a clause");
            return std::nullopt;
        }
        return parser_.clause(*args.positional.front());
    }

    std::vector<Term> term_list(const SExpr& e) {
        if (!e.is_list())
            fail(e, "expected a term list");
        std::vector<Term> out;
        for (const SExpr& t : e.items)
            out.push_back(parser_.term(t));
        return out;
    }

    ProofStep lemma(const SExpr& cmd, const Arguments& args) {
        int kinds = 0;
        for (const char* k : {":trans", ":cong", ":tricho", ":farkas"})
            kinds += args.find(k) ? 1 : 0;
        if (kinds != 1)
            fail(cmd, "lemma needs exactly one of :trans :cong :tricho :farkas");
        if (args.find(":pf") && !args.find(":cong"))
            fail(cmd, ":pf only applies to congruence lemmas");
        if (auto a = args.find(":trans"))
            return TransitivityStep{term_list(*a->front())};
        if (auto a = args.find(":cong")) {
            FunSym f = parser_.find_fun(name_of(*(*a)[0]));
            if (!f)
                fail(*(*a)[0], "unknown function '" + (*a)[0]->text + "'");
            CongruenceStep step{f, term_list(*(*a)[1]), term_list(*(*a)[2]), std::nullopt};
            if (auto pf = args.find(":pf"))
                step.pf = partition(*pf->front());
            return step;
        }
        if (auto a = args.find(":tricho"))
            return TrichotomyStep{parser_.term(*(*a)[0]), parser_.term(*(*a)[1])};
        const SExpr& list = *args.find(":farkas")->front();
        if (!list.is_list())
            fail(list, "expected ((k literal)...)");
        FarkasStep step;
        for (const SExpr& part : list.items) {
            if (!part.is_list() || part.items.size() != 2 || !part.items[0].is_symbol())
                fail(part, "expected (k literal)");
            auto k = parse_numeral(part.items[0].text);
            if (!k)
                fail(part.items[0], "expected a rational coefficient");
            step.parts.emplace_back(*k, parser_.literal(part.items[1]));
        }
        return step;
    }

    TermParser& parser_;
    const BinarizedProblem& problem_;
    std::map<std::string, int> index_;
};

bool is_proof_command(const SExpr& e) {
    return e.headed("input") || e.headed("inst") || e.headed("lemma") || e.headed("res");
}

}  // namespace

std::optional<int> label_partition(const BinarizedProblem& problem, const std::string& name) {
    auto it = problem.node_of.find(name);
    if (it == problem.node_of.end())
        return std::nullopt;
    const TreeProblem& p = problem.problem;
    const TreeNode& n = p.node(it->second);
    if (n.partition >= 0)
        return n.partition;
    const TreeNode& first = p.node(n.children.front());
    if (first.synthetic && first.partition >= 0)
        return first.partition;
    return std::nullopt;
}

Document read_document(TermParser& parser, const std::vector<std::string>& texts) {
    std::vector<SExpr> commands;
    for (const std::string& text : texts) {
        auto exprs = read_sexprs(text);
        commands.insert(commands.end(), std::make_move_iterator(exprs.begin()),
                        std::make_move_iterator(exprs.end()));
    }

    Document doc;
    TreeReader tree{parser, {}, {}};
    bool seen_tree = false;
    std::vector<const SExpr*> colours;
    std::vector<const SExpr*> steps;
    for (const SExpr& cmd : commands) {
        if (!cmd.is_list() || cmd.items.empty() || !cmd.items[0].is_symbol())
            fail(cmd, "expected a command");
        const std::string& head = cmd.items[0].text;
        if (head == "declare-sort") {
            parser.declare_sort(cmd);
        } else if (head == "declare-fun") {
            parser.declare_fun(cmd);
        } else if (head == "tree") {
            if (seen_tree)
                fail(cmd, "second tree");
            seen_tree = true;
            for (std::size_t i = 1; i < cmd.items.size(); ++i) {
                const SExpr& item = cmd.items[i];
                if (item.headed("node"))
                    tree.node(item);
                else if (item.headed("leaf"))
                    tree.leaf(item);
                else
                    fail(item, "expected (node ...) or (leaf ...)");
            }
        } else if (head == "colour" || head == "color") {
            if (cmd.items.size() != 3)
                fail(cmd, "expected (colour literal partition)");
            colours.push_back(&cmd);
        } else if (is_proof_command(cmd)) {
            steps.push_back(&cmd);
        } else {
            fail(cmd.items[0], "unknown command '" + head + "'");
        }
    }
    if (!seen_tree)
        throw ParseError("no (tree ...) command", 1, 1);

    doc.binarized = !already_binary(tree.tree);
    doc.problem.emplace(binarize(parser.context(), tree.tree));

    ProofReader reader(parser, *doc.problem);
    for (const SExpr* cmd : steps)
        reader.declare(*cmd);
    for (const SExpr* cmd : steps)
        doc.proof.add(reader.read(*cmd));
    doc.proof.finalize(parser.context());

    for (const SExpr* cmd : colours)
        doc.colours.push_back(
            ColourEntry{parser.literal(cmd->items[1]), reader.partition(cmd->items[2]), cmd->line});
    return doc;
}

}  // namespace treeitp
