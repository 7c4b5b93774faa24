#include "tsf/interval_features.hpp"

#include <cmath>

namespace tsf {

namespace {

void check(SeriesView series, Interval interval) {
    if (!interval.valid_for(series.size())) {
        throw InvalidInterval("interval (" + std::to_string(interval.t1) + ", " + std::to_string(interval.t2) +
                              ") invalid for series length " + std::to_string(series.size()));
    }
}

SeriesView slice(SeriesView series, Interval interval) {
    return series.subspan(interval.t1 - 1, interval.length());
}

} // namespace

double compute_mean(SeriesView series, Interval interval) {
    check(series, interval);
    double sum = 0.0;
    for (double v : slice(series, interval)) {
        sum += v;
    }
    return sum / static_cast<double>(interval.length());
}

double compute_std(SeriesView series, Interval interval) {
    check(series, interval);
    if (interval.t1 == interval.t2) {
        return 0.0;
    }
    const double mean = compute_mean(series, interval);
    double ss = 0.0;
    for (double v : slice(series, interval)) {
        ss += (v - mean) * (v - mean);
    }
    return std::sqrt(ss / static_cast<double>(interval.t2 - interval.t1));
}

double compute_slope(SeriesView series, Interval interval) {
    check(series, interval);
    if (interval.t1 == interval.t2) {
        return 0.0;
    }
    const double n = static_cast<double>(interval.length());
    const double t_mean = 0.5 * static_cast<double>(interval.t1 + interval.t2);
    const double v_mean = compute_mean(series, interval);
    double sxy = 0.0;
    for (std::size_t t = interval.t1; t <= interval.t2; ++t) {
        sxy += (static_cast<double>(t) - t_mean) * (series[t - 1] - v_mean);
    }
    const double sxx = n * (n * n - 1.0) / 12.0;
    return sxy / sxx;
}

double compute_feature(FeatureKind kind, SeriesView series, Interval interval) {
    switch (kind) {
    case FeatureKind::Mean:
        return compute_mean(series, interval);
    case FeatureKind::StdDev:
        return compute_std(series, interval);
    case FeatureKind::Slope:
        return compute_slope(series, interval);
    }
    throw Error("unknown feature kind");
}

SeriesStats::SeriesStats(SeriesView series)
    : first_(series.begin(), series.end()), sum_(series.size() + 1, 0.0L), sum_sq_(series.size() + 1, 0.0L),
      sum_tx_(series.size() + 1, 0.0L), changes_(series.size() + 1, 0) {
    long double total = 0.0L;
    for (double v : series) {
        total += v;
    }
    offset_ = series.empty() ? 0.0 : static_cast<double>(total / static_cast<long double>(series.size()));
    for (std::size_t t = 1; t <= series.size(); ++t) {
        const long double c = static_cast<long double>(series[t - 1]) - offset_;
        sum_[t] = sum_[t - 1] + c;
        sum_sq_[t] = sum_sq_[t - 1] + c * c;
        sum_tx_[t] = sum_tx_[t - 1] + static_cast<long double>(t) * c;
        changes_[t] = changes_[t - 1] + ((t > 1 && series[t - 1] != series[t - 2]) ? 1U : 0U);
    }
}

bool SeriesStats::constant(Interval interval) const noexcept {
    return changes_[interval.t2] == changes_[interval.t1];
}

double SeriesStats::mean(Interval interval) const noexcept {
    if (constant(interval)) {
        return first_[interval.t1 - 1];
    }
    const long double n = static_cast<long double>(interval.length());
    const long double s = sum_[interval.t2] - sum_[interval.t1 - 1];
    return static_cast<double>(static_cast<long double>(offset_) + s / n);
}

double SeriesStats::stddev(Interval interval) const noexcept {
    if (constant(interval)) {
        return 0.0;
    }
    const long double n = static_cast<long double>(interval.length());
    const long double s = sum_[interval.t2] - sum_[interval.t1 - 1];
    const long double q = sum_sq_[interval.t2] - sum_sq_[interval.t1 - 1];
    long double ss = q - s * s / n;
    if (ss < 0.0L) {
        ss = 0.0L;
    }
    return static_cast<double>(std::sqrt(ss / (n - 1.0L)));
}

double SeriesStats::slope(Interval interval) const noexcept {
    if (constant(interval)) {
        return 0.0;
    }
    const long double n = static_cast<long double>(interval.length());
    const long double s = sum_[interval.t2] - sum_[interval.t1 - 1];
    const long double tx = sum_tx_[interval.t2] - sum_tx_[interval.t1 - 1];
    const long double t_mean = 0.5L * static_cast<long double>(interval.t1 + interval.t2);
    const long double sxy = tx - t_mean * s;
    const long double sxx = n * (n * n - 1.0L) / 12.0L;
    return static_cast<double>(sxy / sxx);
}

double SeriesStats::feature(FeatureKind kind, Interval interval) const noexcept {
    switch (kind) {
    case FeatureKind::Mean:
        return mean(interval);
    case FeatureKind::StdDev:
        return stddev(interval);
    case FeatureKind::Slope:
        return slope(interval);
    }
    return 0.0;
}

DatasetStats::DatasetStats(const Dataset& data) {
    stats_.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        stats_.emplace_back(data.series(i));
    }
}

} // namespace tsf
