#include "tsf/tree.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tsf {

void TreeConfig::validate() const {
    if (kappa < 1) {
        throw Error("kappa must be >= 1");
    }
    if (min_node_size < 2) {
        throw Error("min_node_size must be >= 2");
    }
}

Tree::Tree(std::vector<TreeNode> nodes, std::size_t series_length, std::size_t num_classes)
    : nodes_(std::move(nodes)), series_length_(series_length), num_classes_(num_classes) {
    if (nodes_.empty()) {
        throw Error("a tree needs at least one node");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (const auto* split = std::get_if<SplitNode>(&nodes_[i])) {
            // Preorder layout: children come after their parent.
            if (split->left <= i || split->right <= i || split->left >= nodes_.size() ||
                split->right >= nodes_.size()) {
                throw Error("split node " + std::to_string(i) + " has invalid child indices");
            }
            if (!split->interval.valid_for(series_length_)) {
                throw InvalidInterval("split node " + std::to_string(i) + " interval invalid for series length " +
                                      std::to_string(series_length_));
            }
        } else {
            const auto& leaf = std::get<LeafNode>(nodes_[i]);
            if (leaf.label < 1 || static_cast<std::size_t>(leaf.label) > num_classes_) {
                throw InvalidLabel("leaf " + std::to_string(i) + " label out of range");
            }
        }
    }
}

std::size_t Tree::depth() const {
    std::vector<std::size_t> depth(nodes_.size(), 0);
    std::size_t deepest = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        deepest = std::max(deepest, depth[i]);
        if (const auto* split = std::get_if<SplitNode>(&nodes_[i])) {
            depth[split->left] = depth[i] + 1;
            depth[split->right] = depth[i] + 1;
        }
    }
    return deepest;
}

const LeafNode& Tree::leaf_for(const SeriesStats& series) const {
    std::size_t at = 0;
    while (const auto* split = std::get_if<SplitNode>(&nodes_[at])) {
        at = series.feature(split->kind, split->interval) <= split->threshold ? split->left : split->right;
    }
    return std::get<LeafNode>(nodes_[at]);
}

namespace {

struct PendingNode {
    std::vector<std::size_t> rows;
    std::size_t depth = 0;
    std::size_t parent = std::numeric_limits<std::size_t>::max();
    bool is_left = false;
};

} // namespace

Tree build_tree(const TrainingView& data, const TreeConfig& config, const RngStream& rng, SplitCriterion criterion,
                const NodeObserver& observer) {
    config.validate();
    if (data.rows.empty()) {
        throw Error("cannot build a tree on zero instances");
    }
    std::vector<TreeNode> nodes;
    std::vector<PendingNode> stack;
    stack.push_back(PendingNode{std::vector<std::size_t>(data.rows.begin(), data.rows.end())});

    while (!stack.empty()) {
        PendingNode pending = std::move(stack.back());
        stack.pop_back();
        const std::size_t id = nodes.size();
        if (pending.parent != std::numeric_limits<std::size_t>::max()) {
            auto& parent = std::get<SplitNode>(nodes[pending.parent]);
            (pending.is_left ? parent.left : parent.right) = static_cast<std::uint32_t>(id);
        }

        const NodeView view{data.stats, data.labels, data.num_classes, pending.rows};
        NodeRecord record;
        record.node_id = id;
        record.depth = pending.depth;
        record.rows = pending.rows;
        record.distribution = view.distribution();

        if (record.distribution.pure()) {
            record.outcome = NodeOutcome::Pure;
        } else if (pending.rows.size() < config.min_node_size) {
            record.outcome = NodeOutcome::TooSmall;
        } else if (config.max_depth && pending.depth >= *config.max_depth) {
            record.outcome = NodeOutcome::MaxDepth;
        } else {
            RngStream node_rng = rng.derive(id);
            const IntervalSample sample = sample_intervals(node_rng, data.series_length);
            record.sampled_intervals = sample.intervals.size();
            std::array<std::optional<SplitEvaluation>, kNumFeatureKinds> per_kind;
            for (FeatureKind kind : kFeatureKinds) {
                per_kind[kind_index(kind)] = best_split_for_kind(view, kind, sample.intervals, config.kappa, criterion);
            }
            record.split = select_best_split(per_kind, node_rng);
            record.outcome = record.split ? NodeOutcome::Split : NodeOutcome::NoGain;
        }

        if (observer) {
            observer(record);
        }

        if (record.outcome != NodeOutcome::Split) {
            nodes.emplace_back(LeafNode{record.distribution.majority(), std::move(record.distribution.counts)});
            continue;
        }

        const SplitCandidate& chosen = record.split->candidate;
        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (std::size_t row : pending.rows) {
            (data.stats[row].feature(chosen.kind, chosen.interval) <= chosen.threshold ? left : right).push_back(row);
        }
        if (left.empty() || right.empty()) {
            throw std::logic_error("split with positive gain produced an empty child");
        }
        nodes.emplace_back(SplitNode{chosen.kind, chosen.interval, chosen.threshold, record.split->entropy_gain, 0, 0});
        // Right is pushed first so the left subtree is numbered next (preorder).
        stack.push_back(PendingNode{std::move(right), pending.depth + 1, id, false});
        stack.push_back(PendingNode{std::move(left), pending.depth + 1, id, true});
    }
    return Tree(std::move(nodes), data.series_length, data.num_classes);
}

Tree build_tree(const Dataset& data, const TreeConfig& config, const RngStream& rng, SplitCriterion criterion,
                const NodeObserver& observer) {
    const DatasetStats stats(data);
    std::vector<std::size_t> rows(data.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    const TrainingView view{stats, data.labels(), data.num_classes(), data.series_length(), rows};
    return build_tree(view, config, rng, criterion, observer);
}

Label predict_tree(const Tree& tree, SeriesView series) {
    if (series.size() != tree.series_length()) {
        throw LengthMismatch("series length " + std::to_string(series.size()) + " differs from training length " +
                             std::to_string(tree.series_length()));
    }
    return tree.leaf_for(SeriesStats(series)).label;
}

} // namespace tsf
