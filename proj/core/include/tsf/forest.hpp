#pragma once

#include "tsf/split_search.hpp"
#include "tsf/tree.hpp"
#include "tsf/types.hpp"

#include <cstdint>
#include <vector>

namespace tsf {

struct ForestConfig {
    std::size_t n_trees = 500;
    TreeConfig tree;
    std::uint64_t master_seed = 0;
    SplitCriterion criterion = SplitCriterion::Entrance;

    void validate() const;
    friend bool operator==(const ForestConfig&, const ForestConfig&) = default;
};

/// Stream used for tree `tree_index`: RngStream(master_seed).derive(tree_index).
/// Depends only on the seed and index, never on which worker builds the tree.
[[nodiscard]] RngStream tree_stream(std::uint64_t master_seed, std::size_t tree_index);

class Forest {
public:
    static constexpr int kFormatVersion = 1;

    Forest(std::vector<Tree> trees, ForestConfig config, std::size_t num_classes, std::size_t series_length,
           std::vector<long long> class_labels = {});

    [[nodiscard]] const std::vector<Tree>& trees() const noexcept { return trees_; }
    [[nodiscard]] const ForestConfig& config() const noexcept { return config_; }
    [[nodiscard]] std::size_t num_classes() const noexcept { return num_classes_; }
    [[nodiscard]] std::size_t series_length() const noexcept { return series_length_; }
    /// Source label of class c at index c - 1.
    [[nodiscard]] const std::vector<long long>& class_labels() const noexcept { return class_labels_; }

    friend bool operator==(const Forest&, const Forest&) = default;

private:
    std::vector<Tree> trees_;
    ForestConfig config_;
    std::size_t num_classes_;
    std::size_t series_length_;
    std::vector<long long> class_labels_;
};

struct VoteResult {
    std::vector<std::size_t> votes; // index c - 1 for class c
    Label predicted = 1;
};

/// Trains config.n_trees trees on all of `data` (no bootstrap). `threads`
/// only sets the degree of parallelism; 0 picks the hardware concurrency.
/// The result is identical for every thread count.
[[nodiscard]] Forest fit(const Dataset& data, const ForestConfig& config, std::size_t threads = 0);

/// One vote per tree; the most voted class wins, ties to the lowest label.
[[nodiscard]] VoteResult predict(const Forest& forest, SeriesView series);

/// Fraction of misclassified rows. `test` must use the forest's class
/// numbering (see remap_labels in dataset_io.hpp for files).
[[nodiscard]] double evaluate(const Forest& forest, const Dataset& test, std::size_t threads = 1);

} // namespace tsf
