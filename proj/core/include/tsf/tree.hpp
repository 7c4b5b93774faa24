#pragma once

#include "tsf/interval_features.hpp"
#include "tsf/interval_sampling.hpp"
#include "tsf/split_search.hpp"
#include "tsf/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace tsf {

struct TreeConfig {
    std::size_t kappa = 20;
    /// Root has depth 0. nullopt means unlimited.
    std::optional<std::size_t> max_depth;
    std::size_t min_node_size = 2;

    void validate() const;
    friend bool operator==(const TreeConfig&, const TreeConfig&) = default;
};

struct SplitNode {
    FeatureKind kind = FeatureKind::Mean;
    Interval interval;
    double threshold = 0.0;
    /// Entropy gain of the chosen split on the training rows at this node.
    double gain = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;

    friend bool operator==(const SplitNode&, const SplitNode&) = default;
};

struct LeafNode {
    Label label = 1;
    std::vector<std::size_t> class_counts;

    friend bool operator==(const LeafNode&, const LeafNode&) = default;
};

using TreeNode = std::variant<SplitNode, LeafNode>;

/// A trained time series tree stored as a node array in preorder; node 0 is
/// the root and split nodes index their children. Immutable once built.
class Tree {
public:
    Tree(std::vector<TreeNode> nodes, std::size_t series_length, std::size_t num_classes);

    [[nodiscard]] const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const TreeNode& root() const noexcept { return nodes_.front(); }
    [[nodiscard]] std::size_t series_length() const noexcept { return series_length_; }
    [[nodiscard]] std::size_t num_classes() const noexcept { return num_classes_; }
    [[nodiscard]] std::size_t depth() const;

    /// Leaf reached by a series; no length check.
    [[nodiscard]] const LeafNode& leaf_for(const SeriesStats& series) const;

    friend bool operator==(const Tree&, const Tree&) = default;

private:
    std::vector<TreeNode> nodes_;
    std::size_t series_length_;
    std::size_t num_classes_;
};

enum class NodeOutcome : std::uint8_t { Split, Pure, TooSmall, MaxDepth, NoGain };

/// What the builder saw at one node. Passed to an optional observer so tests
/// and tools can audit induction without it being stored in the model.
struct NodeRecord {
    std::size_t node_id = 0;
    std::size_t depth = 0;
    std::span<const std::size_t> rows;
    ClassDistribution distribution;
    NodeOutcome outcome = NodeOutcome::NoGain;
    std::optional<SplitEvaluation> split;
    std::size_t sampled_intervals = 0;
};

using NodeObserver = std::function<void(const NodeRecord&)>;

/// Training rows visible to the tree builder.
struct TrainingView {
    const DatasetStats& stats;
    std::span<const Label> labels;
    std::size_t num_classes;
    std::size_t series_length;
    std::span<const std::size_t> rows;
};

/// Top-down induction. Each node draws its own interval sample from
/// `rng.derive(node_id)` where node_id is the preorder index, picks the best
/// split per feature kind, then the best across kinds, and stops when the
/// node is pure, smaller than min_node_size, at max_depth, or has no split
/// with positive entropy gain. Leaves carry the majority label (lowest class
/// on ties).
[[nodiscard]] Tree build_tree(const TrainingView& data, const TreeConfig& config, const RngStream& rng,
                              SplitCriterion criterion = SplitCriterion::Entrance,
                              const NodeObserver& observer = nullptr);

/// Builds on every row of `data`.
[[nodiscard]] Tree build_tree(const Dataset& data, const TreeConfig& config, const RngStream& rng,
                              SplitCriterion criterion = SplitCriterion::Entrance,
                              const NodeObserver& observer = nullptr);

/// Goes left iff the node's interval feature is <= threshold. Throws
/// LengthMismatch if the series length differs from the training length.
[[nodiscard]] Label predict_tree(const Tree& tree, SeriesView series);

} // namespace tsf
