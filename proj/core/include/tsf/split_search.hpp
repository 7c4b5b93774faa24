#pragma once

#include "tsf/interval_features.hpp"
#include "tsf/interval_sampling.hpp"
#include "tsf/types.hpp"

#include <compare>
#include <optional>
#include <span>
#include <vector>

namespace tsf {

class DistributionMismatch : public Error {
public:
    using Error::Error;
};

/// Absolute tolerance for treating two entropy gains as equal, and for
/// treating a gain as zero.
inline constexpr double kGainTolerance = 1e-12;
/// Margins within this relative distance compare equal, so rounding noise
/// in feature values cannot reorder margins that tie exactly.
inline constexpr double kMarginRelTolerance = 1e-9;

/// Per-class instance counts at a node; index c - 1 holds class c.
struct ClassDistribution {
    std::vector<std::size_t> counts;

    ClassDistribution() = default;
    explicit ClassDistribution(std::vector<std::size_t> c) : counts(std::move(c)) {}

    [[nodiscard]] std::size_t total() const noexcept;
    [[nodiscard]] bool pure() const noexcept;
    /// Class with the most instances; ties go to the lowest class.
    [[nodiscard]] Label majority() const noexcept;

    friend bool operator==(const ClassDistribution&, const ClassDistribution&) = default;
};

/// -sum_c p_c ln p_c with 0 ln 0 = 0.
[[nodiscard]] double node_entropy(const ClassDistribution& dist);

/// H(parent) - (n_L/n H(left) + n_R/n H(right)). Results below
/// kGainTolerance are returned as exactly 0.
[[nodiscard]] double entropy_gain(const ClassDistribution& parent, const ClassDistribution& left,
                                  const ClassDistribution& right);

/// kappa equally spaced thresholds strictly inside (min, max) of `values`:
/// lo + i (hi - lo) / (kappa + 1), i = 1..kappa. Empty when all values are
/// equal. Thresholds that rounding pushes onto lo or hi are dropped.
[[nodiscard]] std::vector<double> candidate_thresholds(std::span<const double> values, std::size_t kappa);

/// Distance from `threshold` to the nearest value.
[[nodiscard]] double split_margin(std::span<const double> values, double threshold);

enum class SplitCriterion : std::uint8_t {
    Entrance,    ///< entropy gain, margin breaks ties
    EntropyOnly, ///< entropy gain only
};

[[nodiscard]] std::string_view to_string(SplitCriterion criterion) noexcept;
[[nodiscard]] SplitCriterion parse_split_criterion(std::string_view text);

struct SplitCandidate {
    FeatureKind kind = FeatureKind::Mean;
    Interval interval;
    double threshold = 0.0;
};

struct SplitEvaluation {
    SplitCandidate candidate;
    double entropy_gain = 0.0;
    double margin = 0.0;
};

/// Lexicographic (entropy_gain, margin) order. Gains within kGainTolerance
/// are equal; only then does margin decide, and only under Entrance.
/// Margins within kMarginRelTolerance (relative) are equal.
[[nodiscard]] std::weak_ordering compare_entrance(const SplitEvaluation& a, const SplitEvaluation& b,
                                                  SplitCriterion criterion = SplitCriterion::Entrance);

/// The instances reaching a tree node.
struct NodeView {
    const DatasetStats& stats;
    std::span<const Label> labels; // labels of the whole dataset
    std::size_t num_classes;
    std::span<const std::size_t> indices; // 0-based rows at this node

    [[nodiscard]] ClassDistribution distribution() const;
};

/// Best split of one feature kind over `intervals` x per-(interval) thresholds.
/// Candidates are visited in interval order, thresholds ascending; a later
/// candidate replaces the incumbent only if it compares strictly greater.
/// Returns nullopt when no candidate has positive gain.
[[nodiscard]] std::optional<SplitEvaluation> best_split_for_kind(const NodeView& node, FeatureKind kind,
                                                                 std::span<const Interval> intervals,
                                                                 std::size_t kappa,
                                                                 SplitCriterion criterion = SplitCriterion::Entrance);

/// Convenience overload that builds feature statistics for `data` and
/// evaluates the node made of all its rows.
[[nodiscard]] std::optional<SplitEvaluation> best_split_for_kind(const Dataset& data, FeatureKind kind,
                                                                 std::span<const Interval> intervals,
                                                                 std::size_t kappa,
                                                                 SplitCriterion criterion = SplitCriterion::Entrance);

/// Highest entropy gain across kinds; margins are not compared across
/// kinds. Gains tied within kGainTolerance are resolved uniformly at random
/// with `rng`, which is only advanced when such a tie exists.
[[nodiscard]] std::optional<SplitEvaluation> select_best_split(std::span<const std::optional<SplitEvaluation>> per_kind,
                                                               RngStream& rng);

} // namespace tsf
