#include "tsf/split_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tsf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double entropy_of(const std::size_t* counts, std::size_t num_classes, std::size_t total) {
    if (total == 0) {
        return 0.0;
    }
    const double n = static_cast<double>(total);
    double h = 0.0;
    for (std::size_t c = 0; c < num_classes; ++c) {
        if (counts[c] != 0) {
            const double p = static_cast<double>(counts[c]) / n;
            h -= p * std::log(p);
        }
    }
    return h;
}

double gain_of(double parent_entropy, std::size_t parent_total, const std::size_t* left, std::size_t left_total,
               const std::size_t* right, std::size_t right_total, std::size_t num_classes) {
    const double n = static_cast<double>(parent_total);
    const double children = static_cast<double>(left_total) / n * entropy_of(left, num_classes, left_total) +
                            static_cast<double>(right_total) / n * entropy_of(right, num_classes, right_total);
    const double gain = parent_entropy - children;
    return gain < kGainTolerance ? 0.0 : gain;
}

void thresholds_between(double lo, double hi, std::size_t kappa, std::vector<double>& out) {
    out.clear();
    if (!(lo < hi)) {
        return;
    }
    const double width = hi - lo;
    const double parts = static_cast<double>(kappa + 1);
    for (std::size_t i = 1; i <= kappa; ++i) {
        const double tau = lo + static_cast<double>(i) * width / parts;
        if (tau > lo && tau < hi && (out.empty() || tau > out.back())) {
            out.push_back(tau);
        }
    }
}

/// Reusable buffers for evaluating one feature column at a node.
class FeatureSweep {
public:
    FeatureSweep(std::size_t num_classes, std::size_t kappa) : classes_(num_classes), kappa_(kappa) {}

    /// Evaluates every threshold for one (kind, interval) column and folds
    /// the winners into `best` under the enumeration-order rule.
    void evaluate(std::span<const double> values, std::span<const std::size_t> classes,
                  const ClassDistribution& parent, double parent_entropy, const SplitCandidate& column,
                  SplitCriterion criterion, std::optional<SplitEvaluation>& best) {
        const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
        thresholds_between(*lo_it, *hi_it, kappa_, thresholds_);
        const std::size_t k = thresholds_.size();
        if (k == 0) {
            return;
        }
        const std::size_t bins = k + 1;
        bin_counts_.assign(bins * classes_, 0);
        bin_min_.assign(bins, kInf);
        bin_max_.assign(bins, -kInf);
        for (std::size_t j = 0; j < values.size(); ++j) {
            const double v = values[j];
            // Number of thresholds strictly below v; v goes left of tau_i iff bin <= i.
            const auto b = static_cast<std::size_t>(
                std::lower_bound(thresholds_.begin(), thresholds_.end(), v) - thresholds_.begin());
            ++bin_counts_[b * classes_ + classes[j]];
            bin_min_[b] = std::min(bin_min_[b], v);
            bin_max_[b] = std::max(bin_max_[b], v);
        }
        suffix_min_.assign(bins + 1, kInf);
        for (std::size_t b = bins; b-- > 0;) {
            suffix_min_[b] = std::min(suffix_min_[b + 1], bin_min_[b]);
        }

        const std::size_t total = values.size();
        left_.assign(classes_, 0);
        right_.resize(classes_);
        std::size_t left_total = 0;
        double below = -kInf;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t c = 0; c < classes_; ++c) {
                left_[c] += bin_counts_[i * classes_ + c];
                left_total += bin_counts_[i * classes_ + c];
            }
            below = std::max(below, bin_max_[i]);
            if (left_total == 0 || left_total == total) {
                continue;
            }
            for (std::size_t c = 0; c < classes_; ++c) {
                right_[c] = parent.counts[c] - left_[c];
            }
            const double gain = gain_of(parent_entropy, total, left_.data(), left_total, right_.data(),
                                        total - left_total, classes_);
            if (gain <= 0.0) {
                continue;
            }
            const double tau = thresholds_[i];
            const double margin = std::min(tau - below, suffix_min_[i + 1] - tau);
            SplitEvaluation eval{column, gain, margin};
            eval.candidate.threshold = tau;
            if (!best || compare_entrance(eval, *best, criterion) > 0) {
                best = eval;
            }
        }
    }

private:
    std::size_t classes_;
    std::size_t kappa_;
    std::vector<double> thresholds_;
    std::vector<std::size_t> bin_counts_;
    std::vector<double> bin_min_;
    std::vector<double> bin_max_;
    std::vector<double> suffix_min_;
    std::vector<std::size_t> left_;
    std::vector<std::size_t> right_;
};

} // namespace

std::size_t ClassDistribution::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

bool ClassDistribution::pure() const noexcept {
    return std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c != 0; }) <= 1;
}

Label ClassDistribution::majority() const noexcept {
    // max_element returns the first maximum, i.e. the lowest class.
    return static_cast<Label>(std::max_element(counts.begin(), counts.end()) - counts.begin()) + 1;
}

double node_entropy(const ClassDistribution& dist) {
    return entropy_of(dist.counts.data(), dist.counts.size(), dist.total());
}

double entropy_gain(const ClassDistribution& parent, const ClassDistribution& left, const ClassDistribution& right) {
    const std::size_t classes = parent.counts.size();
    if (left.counts.size() != classes || right.counts.size() != classes) {
        throw DistributionMismatch("child distributions have a different number of classes");
    }
    for (std::size_t c = 0; c < classes; ++c) {
        if (left.counts[c] + right.counts[c] != parent.counts[c]) {
            throw DistributionMismatch("child counts for class " + std::to_string(c + 1) + " do not sum to parent");
        }
    }
    const std::size_t total = parent.total();
    if (total == 0) {
        return 0.0;
    }
    return gain_of(node_entropy(parent), total, left.counts.data(), left.total(), right.counts.data(), right.total(),
                   classes);
}

std::vector<double> candidate_thresholds(std::span<const double> values, std::size_t kappa) {
    std::vector<double> out;
    if (values.empty() || kappa == 0) {
        return out;
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    thresholds_between(*lo, *hi, kappa, out);
    return out;
}

double split_margin(std::span<const double> values, double threshold) {
    double margin = kInf;
    for (double v : values) {
        margin = std::min(margin, std::abs(v - threshold));
    }
    return margin;
}

std::string_view to_string(SplitCriterion criterion) noexcept {
    return criterion == SplitCriterion::Entrance ? "entrance" : "entropy";
}

SplitCriterion parse_split_criterion(std::string_view text) {
    if (text == "entrance") {
        return SplitCriterion::Entrance;
    }
    if (text == "entropy") {
        return SplitCriterion::EntropyOnly;
    }
    throw Error("unknown split criterion '" + std::string(text) + "' (expected entrance or entropy)");
}

std::weak_ordering compare_entrance(const SplitEvaluation& a, const SplitEvaluation& b, SplitCriterion criterion) {
    if (std::abs(a.entropy_gain - b.entropy_gain) > kGainTolerance) {
        return a.entropy_gain < b.entropy_gain ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    if (criterion == SplitCriterion::EntropyOnly ||
        std::abs(a.margin - b.margin) <= kMarginRelTolerance * std::max(std::abs(a.margin), std::abs(b.margin))) {
        return std::weak_ordering::equivalent;
    }
    return a.margin < b.margin ? std::weak_ordering::less : std::weak_ordering::greater;
}

ClassDistribution NodeView::distribution() const {
    ClassDistribution dist(std::vector<std::size_t>(num_classes, 0));
    for (std::size_t i : indices) {
        ++dist.counts[static_cast<std::size_t>(labels[i] - 1)];
    }
    return dist;
}

std::optional<SplitEvaluation> best_split_for_kind(const NodeView& node, FeatureKind kind,
                                                   std::span<const Interval> intervals, std::size_t kappa,
                                                   SplitCriterion criterion) {
    std::optional<SplitEvaluation> best;
    if (node.indices.size() < 2 || kappa == 0) {
        return best;
    }
    const ClassDistribution parent = node.distribution();
    if (parent.pure()) {
        return best;
    }
    const double parent_entropy = node_entropy(parent);

    std::vector<std::size_t> classes(node.indices.size());
    for (std::size_t j = 0; j < node.indices.size(); ++j) {
        classes[j] = static_cast<std::size_t>(node.labels[node.indices[j]] - 1);
    }
    std::vector<double> values(node.indices.size());
    FeatureSweep sweep(node.num_classes, kappa);
    for (const Interval& interval : intervals) {
        for (std::size_t j = 0; j < node.indices.size(); ++j) {
            values[j] = node.stats[node.indices[j]].feature(kind, interval);
        }
        sweep.evaluate(values, classes, parent, parent_entropy, SplitCandidate{kind, interval, 0.0}, criterion, best);
    }
    return best;
}

std::optional<SplitEvaluation> best_split_for_kind(const Dataset& data, FeatureKind kind,
                                                   std::span<const Interval> intervals, std::size_t kappa,
                                                   SplitCriterion criterion) {
    for (const Interval& interval : intervals) {
        if (!interval.valid_for(data.series_length())) {
            throw InvalidInterval("interval (" + std::to_string(interval.t1) + ", " + std::to_string(interval.t2) +
                                  ") invalid for series length " + std::to_string(data.series_length()));
        }
    }
    const DatasetStats stats(data);
    std::vector<std::size_t> rows(data.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    const NodeView node{stats, data.labels(), data.num_classes(), rows};
    return best_split_for_kind(node, kind, intervals, kappa, criterion);
}

std::optional<SplitEvaluation> select_best_split(std::span<const std::optional<SplitEvaluation>> per_kind,
                                                 RngStream& rng) {
    double best_gain = -kInf;
    for (const auto& eval : per_kind) {
        if (eval) {
            best_gain = std::max(best_gain, eval->entropy_gain);
        }
    }
    std::vector<std::size_t> tied;
    for (std::size_t k = 0; k < per_kind.size(); ++k) {
        if (per_kind[k] && best_gain - per_kind[k]->entropy_gain <= kGainTolerance) {
            tied.push_back(k);
        }
    }
    if (tied.empty()) {
        return std::nullopt;
    }
    if (tied.size() == 1) {
        return per_kind[tied.front()];
    }
    return per_kind[tied[static_cast<std::size_t>(rng.uniform_below(tied.size()))]];
}

} // namespace tsf
