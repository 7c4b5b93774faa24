#pragma once

#include "tsf/types.hpp"

#include <vector>

namespace tsf {

// Definitional interval features over 1-based closed intervals. Each call
// validates the interval against the series and costs O(t2 - t1 + 1).

/// Arithmetic mean of v[t1..t2].
[[nodiscard]] double compute_mean(SeriesView series, Interval interval);
/// Sample standard deviation (denominator t2 - t1); exactly 0 when t1 == t2.
[[nodiscard]] double compute_std(SeriesView series, Interval interval);
/// OLS slope of {(t, v_t) : t1 <= t <= t2}; exactly 0 when t1 == t2.
[[nodiscard]] double compute_slope(SeriesView series, Interval interval);
[[nodiscard]] double compute_feature(FeatureKind kind, SeriesView series, Interval interval);

/// O(1) interval features from cumulative sums.
///
/// Sums are taken over values centered on the series mean and accumulated in
/// long double, which keeps agreement with the definitional functions well
/// inside 1e-9 relative on ordinary data. Constant stretches are tracked
/// exactly, so a flat interval yields a standard deviation and slope of
/// exactly 0 and a mean equal to the stored value.
class SeriesStats {
public:
    SeriesStats() = default;
    explicit SeriesStats(SeriesView series);

    [[nodiscard]] std::size_t length() const noexcept { return first_.size(); }

    // No interval validation; callers pass intervals valid for length().
    [[nodiscard]] double mean(Interval interval) const noexcept;
    [[nodiscard]] double stddev(Interval interval) const noexcept;
    [[nodiscard]] double slope(Interval interval) const noexcept;
    [[nodiscard]] double feature(FeatureKind kind, Interval interval) const noexcept;

private:
    [[nodiscard]] bool constant(Interval interval) const noexcept;

    double offset_ = 0.0;
    std::vector<double> first_;          // raw values, for constant intervals
    std::vector<long double> sum_;       // sum_[t] = sum_{s <= t} c_s, sum_[0] = 0
    std::vector<long double> sum_sq_;    // sum of c_s^2
    std::vector<long double> sum_tx_;    // sum of s * c_s
    std::vector<std::uint32_t> changes_; // changes_[t] = #{s <= t : v_s != v_{s-1}}
};

/// SeriesStats for every instance of a dataset, built once and shared
/// read-only across trees.
class DatasetStats {
public:
    explicit DatasetStats(const Dataset& data);

    [[nodiscard]] const SeriesStats& operator[](std::size_t i) const noexcept { return stats_[i]; }
    [[nodiscard]] std::size_t size() const noexcept { return stats_.size(); }

private:
    std::vector<SeriesStats> stats_;
};

} // namespace tsf
