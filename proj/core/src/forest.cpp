#include "tsf/forest.hpp"

#include "tsf/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <optional>

namespace tsf {

void ForestConfig::validate() const {
    if (n_trees < 1) {
        throw Error("n_trees must be >= 1");
    }
    tree.validate();
}

RngStream tree_stream(std::uint64_t master_seed, std::size_t tree_index) {
    return RngStream(master_seed).derive(tree_index);
}

Forest::Forest(std::vector<Tree> trees, ForestConfig config, std::size_t num_classes, std::size_t series_length,
               std::vector<long long> class_labels)
    : trees_(std::move(trees)), config_(config), num_classes_(num_classes), series_length_(series_length),
      class_labels_(std::move(class_labels)) {
    if (trees_.size() != config_.n_trees) {
        throw Error("forest holds " + std::to_string(trees_.size()) + " trees but config says " +
                    std::to_string(config_.n_trees));
    }
    for (const Tree& tree : trees_) {
        if (tree.series_length() != series_length_ || tree.num_classes() != num_classes_) {
            throw LengthMismatch("tree trained on a different series length or class count");
        }
    }
    if (class_labels_.empty()) {
        class_labels_.resize(num_classes_);
        std::iota(class_labels_.begin(), class_labels_.end(), 1LL);
    } else if (class_labels_.size() != num_classes_) {
        throw InvalidLabel("class label map size differs from class count");
    }
}

Forest fit(const Dataset& data, const ForestConfig& config, std::size_t threads) {
    config.validate();
    const DatasetStats stats(data);
    std::vector<std::size_t> rows(data.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    const TrainingView view{stats, data.labels(), data.num_classes(), data.series_length(), rows};

    std::vector<std::optional<Tree>> built(config.n_trees);
    parallel_for(config.n_trees, threads, [&](std::size_t i) {
        built[i] = build_tree(view, config.tree, tree_stream(config.master_seed, i), config.criterion);
    });

    std::vector<Tree> trees;
    trees.reserve(built.size());
    for (auto& tree : built) {
        trees.push_back(std::move(*tree));
    }
    return Forest(std::move(trees), config, data.num_classes(), data.series_length(), data.original_labels());
}

namespace {

VoteResult tally(const Forest& forest, const SeriesStats& stats) {
    VoteResult result;
    result.votes.assign(forest.num_classes(), 0);
    for (const Tree& tree : forest.trees()) {
        ++result.votes[static_cast<std::size_t>(tree.leaf_for(stats).label - 1)];
    }
    result.predicted = static_cast<Label>(std::max_element(result.votes.begin(), result.votes.end()) -
                                          result.votes.begin()) + 1;
    return result;
}

} // namespace

VoteResult predict(const Forest& forest, SeriesView series) {
    if (series.size() != forest.series_length()) {
        throw LengthMismatch("series length " + std::to_string(series.size()) + " differs from model length " +
                             std::to_string(forest.series_length()));
    }
    return tally(forest, SeriesStats(series));
}

double evaluate(const Forest& forest, const Dataset& test, std::size_t threads) {
    if (test.series_length() != forest.series_length()) {
        throw LengthMismatch("test series length " + std::to_string(test.series_length()) +
                             " differs from model length " + std::to_string(forest.series_length()));
    }
    std::vector<unsigned char> wrong(test.size(), 0);
    parallel_for(test.size(), threads, [&](std::size_t i) {
        wrong[i] = tally(forest, SeriesStats(test.series(i))).predicted != test.label(i) ? 1 : 0;
    });
    const auto errors = std::accumulate(wrong.begin(), wrong.end(), std::size_t{0});
    return static_cast<double>(errors) / static_cast<double>(test.size());
}

} // namespace tsf
