#pragma once

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "treeitp/clause.hpp"
#include "treeitp/ops.hpp"
#include "treeitp/terms.hpp"

namespace treeitp {

// Sets of partitions, indexed by dense leaf number.
using PartitionSet = boost::dynamic_bitset<>;
using OccurrenceMap = std::map<FunSym, PartitionSet, FunSymLess>;

struct TreeNode {
    std::string name;
    int parent = -1;
    std::vector<int> children;
    int partition = -1;      // leaf number, -1 for inner nodes
    bool synthetic = false;  // introduced by binarization
};

// A binary, leaf-labelled tree interpolation problem.
class TreeProblem {
public:
    // Nodes must form a single binary tree (children set, parents derived); labels
    // are indexed by node and must be empty for inner nodes. Leaves are numbered
    // in left-to-right depth-first order. Throws MalformedTree.
    TreeProblem(Context& ctx, std::vector<TreeNode> nodes,
                const std::vector<std::vector<Clause>>& node_labels);

    Context& context() const { return *ctx_; }
    std::size_t num_nodes() const { return nodes_.size(); }
    std::size_t num_partitions() const { return leaves_.size(); }
    int root() const { return root_; }
    const TreeNode& node(int v) const;
    int find_node(std::string_view name) const;  // NodeNotFound
    int leaf_node(int partition) const { return leaves_.at(partition); }
    const std::string& partition_name(int partition) const { return nodes_[leaves_.at(partition)].name; }
    int find_partition(std::string_view name) const;  // NodeNotFound if not a leaf

    const PartitionSet& subtree_leaves(int v) const;
    const PartitionSet& subtree_leaves(std::string_view name) const {
        return subtree_leaves(find_node(name));
    }
    // Nodes in post-order (children before parents).
    const std::vector<int>& postorder() const { return postorder_; }

    const std::vector<Clause>& label(int partition) const { return labels_.at(partition); }
    Formula label_formula(int partition) const { return label_formulas_.at(partition); }

    const OccurrenceMap& occurrence_map() const { return occurrences_; }
    PartitionSet partitions(FunSym f) const;
    const SymbolSet& label_symbols(int partition) const { return label_symbols_.at(partition); }

    PartitionSet none() const { return PartitionSet(num_partitions()); }
    PartitionSet all() const { return ~none(); }
    PartitionSet singleton(int partition) const;

private:
    Context* ctx_;
    std::vector<TreeNode> nodes_;
    std::vector<int> leaves_;
    std::vector<int> postorder_;
    std::vector<PartitionSet> subtree_;
    std::vector<std::vector<Clause>> labels_;
    std::vector<Formula> label_formulas_;
    std::vector<SymbolSet> label_symbols_;
    OccurrenceMap occurrences_;
    int root_ = -1;
};

// Arbitrary rooted tree as written by the user; inner nodes may carry labels.
struct GeneralTree {
    struct Node {
        std::string name;
        std::vector<std::string> children;
        std::vector<Clause> label;
    };
    std::vector<Node> nodes;
};

struct BinarizedProblem {
    TreeProblem problem;
    std::map<std::string, int> node_of;  // original node name -> internal node
};

// Labelled inner nodes get a leaf child holding the label, nodes with more than two
// children become chains of binary nodes, and unary nodes get an empty sibling leaf.
BinarizedProblem binarize(Context& ctx, const GeneralTree& tree);

}  // namespace treeitp
