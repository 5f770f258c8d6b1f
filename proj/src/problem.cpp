#include <functional>
#include <set>
#include <unordered_map>

#include "treeitp/problem.hpp"

namespace treeitp {

TreeProblem::TreeProblem(Context& ctx, std::vector<TreeNode> nodes,
                         const std::vector<std::vector<Clause>>& node_labels)
    : ctx_(&ctx), nodes_(std::move(nodes)) {
    if (nodes_.empty())
        throw MalformedTree("tree has no nodes");
    if (node_labels.size() != nodes_.size())
        throw MalformedTree("one label list per node expected");
    for (auto& n : nodes_)
        n.parent = -1;
    for (int v = 0; v < static_cast<int>(nodes_.size()); ++v) {
        const TreeNode& n = nodes_[v];
        if (!n.children.empty() && n.children.size() != 2)
            throw MalformedTree("node '" + n.name + "' must have zero or two children");
        if (!n.children.empty() && !node_labels[v].empty())
            throw MalformedTree("inner node '" + n.name + "' carries a label");
        for (int c : n.children) {
            if (c < 0 || c >= static_cast<int>(nodes_.size()))
                throw MalformedTree("node '" + n.name + "' has an unknown child");
            if (nodes_[c].parent != -1)
                throw MalformedTree("node '" + nodes_[c].name + "' has two parents");
            nodes_[c].parent = v;
        }
    }
    for (int v = 0; v < static_cast<int>(nodes_.size()); ++v) {
        if (nodes_[v].parent != -1)
            continue;
        if (root_ != -1)
            throw MalformedTree("tree has several roots: '" + nodes_[root_].name + "' and '" +
                                nodes_[v].name + "'");
        root_ = v;
    }
    if (root_ == -1)
        throw MalformedTree("tree has no root (cycle)");

    std::vector<bool> seen(nodes_.size(), false);
    std::function<void(int)> visit = [&](int v) {
        if (seen[v])
            throw MalformedTree("cycle through node '" + nodes_[v].name + "'");
        seen[v] = true;
        if (nodes_[v].children.empty()) {
            nodes_[v].partition = static_cast<int>(leaves_.size());
            leaves_.push_back(v);
        } else {
            nodes_[v].partition = -1;
        }
        for (int c : nodes_[v].children)
            visit(c);
        postorder_.push_back(v);
    };
    visit(root_);
    for (std::size_t v = 0; v < nodes_.size(); ++v)
        if (!seen[v])
            throw MalformedTree("node '" + nodes_[v].name + "' is not reachable from the root");

    subtree_.assign(nodes_.size(), PartitionSet(leaves_.size()));
    for (int v : postorder_) {
        if (nodes_[v].partition >= 0)
            subtree_[v].set(nodes_[v].partition);
        for (int c : nodes_[v].children)
            subtree_[v] |= subtree_[c];
    }

    for (int leaf : leaves_) {
        labels_.push_back(node_labels[leaf]);
        std::vector<Formula> parts;
        for (const Clause& c : node_labels[leaf])
            parts.push_back(clause_formula(ctx, c));
        Formula f = ctx.mk_and(std::move(parts));
        label_formulas_.push_back(f);
        SymbolSet syms;
        for (const Clause& c : node_labels[leaf])
            for (const Literal& l : c) {
                SymbolSet s = symbs(l);
                syms.insert(s.begin(), s.end());
            }
        label_symbols_.push_back(syms);
        int p = static_cast<int>(label_symbols_.size()) - 1;
        for (FunSym f : syms) {
            auto [it, fresh] = occurrences_.try_emplace(f, PartitionSet(leaves_.size()));
            it->second.set(p);
        }
    }
}

const TreeNode& TreeProblem::node(int v) const {
    if (v < 0 || v >= static_cast<int>(nodes_.size()))
        throw NodeNotFound("no tree node with index " + std::to_string(v));
    return nodes_[v];
}

int TreeProblem::find_node(std::string_view name) const {
    for (int v = 0; v < static_cast<int>(nodes_.size()); ++v)
        if (nodes_[v].name == name)
            return v;
    throw NodeNotFound("no tree node named '" + std::string(name) + "'");
}

int TreeProblem::find_partition(std::string_view name) const {
    int v = find_node(name);
    if (nodes_[v].partition < 0)
        throw NodeNotFound("tree node '" + std::string(name) + "' is not a leaf");
    return nodes_[v].partition;
}

const PartitionSet& TreeProblem::subtree_leaves(int v) const {
    node(v);
    return subtree_[v];
}

PartitionSet TreeProblem::partitions(FunSym f) const {
    auto it = occurrences_.find(f);
    return it == occurrences_.end() ? none() : it->second;
}

PartitionSet TreeProblem::singleton(int partition) const {
    PartitionSet s = none();
    s.set(partition);
    return s;
}

BinarizedProblem binarize(Context& ctx, const GeneralTree& tree) {
    std::unordered_map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(tree.nodes.size()); ++i)
        if (!index.emplace(tree.nodes[i].name, i).second)
            throw MalformedTree("node '" + tree.nodes[i].name + "' defined twice");
    std::vector<int> parent_count(tree.nodes.size(), 0);
    for (const auto& n : tree.nodes)
        for (const auto& c : n.children) {
            auto it = index.find(c);
            if (it == index.end())
                throw MalformedTree("node '" + n.name + "' has unknown child '" + c + "'");
            if (++parent_count[it->second] > 1)
                throw MalformedTree("node '" + c + "' has two parents");
        }
    int root = -1;
    for (int i = 0; i < static_cast<int>(tree.nodes.size()); ++i) {
        if (parent_count[i])
            continue;
        if (root != -1)
            throw MalformedTree("tree has several roots: '" + tree.nodes[root].name + "' and '" +
                                tree.nodes[i].name + "'");
        root = i;
    }
    if (root == -1)
        throw MalformedTree("tree has no root (cycle)");

    std::set<std::string> names;
    for (const auto& n : tree.nodes)
        names.insert(n.name);
    auto fresh_name = [&](const std::string& base) {
        for (int k = 1;; ++k) {
            std::string candidate = base + "~" + std::to_string(k);
            if (names.insert(candidate).second)
                return candidate;
        }
    };

    std::vector<TreeNode> out;
    std::vector<std::vector<Clause>> labels;
    std::map<std::string, int> node_of;
    std::vector<bool> seen(tree.nodes.size(), false);
    auto add = [&](std::string name, bool synthetic, std::vector<Clause> label) {
        TreeNode n;
        n.name = std::move(name);
        n.synthetic = synthetic;
        out.push_back(std::move(n));
        labels.push_back(std::move(label));
        return static_cast<int>(out.size()) - 1;
    };

    std::function<int(int)> build = [&](int g) -> int {
        if (seen[g])
            throw MalformedTree("cycle through node '" + tree.nodes[g].name + "'");
        seen[g] = true;
        const auto& n = tree.nodes[g];
        if (n.children.empty()) {
            int v = add(n.name, false, n.label);
            node_of[n.name] = v;
            return v;
        }
        int v = add(n.name, false, {});
        node_of[n.name] = v;
        std::vector<int> kids;
        if (!n.label.empty())
            kids.push_back(add(fresh_name(n.name), true, n.label));
        for (const auto& c : n.children)
            kids.push_back(build(index.at(c)));
        if (kids.size() == 1)
            kids.push_back(add(fresh_name(n.name), true, {}));
        int current = v;
        for (std::size_t i = 0; i + 2 < kids.size(); ++i) {
            int chain = add(fresh_name(n.name), true, {});
            out[current].children = {kids[i], chain};
            current = chain;
        }
        out[current].children = {kids[kids.size() - 2], kids.back()};
        return v;
    };
    build(root);
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw MalformedTree("node '" + tree.nodes[i].name + "' is not reachable from the root");
    return BinarizedProblem{TreeProblem(ctx, std::move(out), labels), std::move(node_of)};
}

}  // namespace treeitp
