#include "tsf/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsf {

namespace {

void require_finite(SeriesView values, std::size_t row) {
    for (std::size_t t = 0; t < values.size(); ++t) {
        if (!std::isfinite(values[t])) {
            throw NonFiniteValue("non-finite value in instance " + std::to_string(row) + " at t=" +
                                 std::to_string(t + 1));
        }
    }
}

} // namespace

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw LengthMismatch("time series must have length >= 1");
    }
    require_finite(values_, 0);
}

double TimeSeries::at(std::size_t t) const {
    if (t < 1 || t > values_.size()) {
        throw InvalidInterval("time index " + std::to_string(t) + " outside 1.." + std::to_string(values_.size()));
    }
    return values_[t - 1];
}

Interval Interval::make(std::size_t t1, std::size_t t2, std::size_t series_length) {
    Interval iv{t1, t2};
    if (!iv.valid_for(series_length)) {
        throw InvalidInterval("interval (" + std::to_string(t1) + ", " + std::to_string(t2) +
                              ") invalid for series length " + std::to_string(series_length));
    }
    return iv;
}

std::string_view to_string(FeatureKind kind) noexcept {
    switch (kind) {
    case FeatureKind::Mean:
        return "mean";
    case FeatureKind::StdDev:
        return "stddev";
    case FeatureKind::Slope:
        return "slope";
    }
    return "?";
}

FeatureKind parse_feature_kind(std::string_view text) {
    for (FeatureKind kind : kFeatureKinds) {
        if (text == to_string(kind)) {
            return kind;
        }
    }
    throw Error("unknown feature kind '" + std::string(text) + "'");
}

Dataset::Dataset(std::vector<double> values, std::size_t series_length, std::vector<Label> labels,
                 std::size_t num_classes, std::vector<long long> original_labels)
    : values_(std::move(values)), length_(series_length), labels_(std::move(labels)), num_classes_(num_classes),
      original_labels_(std::move(original_labels)) {
    if (labels_.empty() || length_ == 0) {
        throw LengthMismatch("dataset needs at least one instance of length >= 1");
    }
    if (values_.size() != labels_.size() * length_) {
        throw LengthMismatch("value buffer does not hold " + std::to_string(labels_.size()) + " series of length " +
                             std::to_string(length_));
    }
    if (num_classes_ < 1) {
        throw InvalidLabel("dataset needs at least one class");
    }
    for (Label y : labels_) {
        if (y < 1 || static_cast<std::size_t>(y) > num_classes_) {
            throw InvalidLabel("label " + std::to_string(y) + " outside 1.." + std::to_string(num_classes_));
        }
    }
    if (original_labels_.empty()) {
        original_labels_.resize(num_classes_);
        std::iota(original_labels_.begin(), original_labels_.end(), 1LL);
    } else if (original_labels_.size() != num_classes_) {
        throw InvalidLabel("label map size differs from class count");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        require_finite(series(i), i);
    }
}

std::vector<std::size_t> Dataset::class_counts() const {
    std::vector<std::size_t> counts(num_classes_, 0);
    for (Label y : labels_) {
        ++counts[static_cast<std::size_t>(y - 1)];
    }
    return counts;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    std::vector<double> values;
    values.reserve(indices.size() * length_);
    std::vector<Label> labels;
    labels.reserve(indices.size());
    for (std::size_t i : indices) {
        auto s = series(i);
        values.insert(values.end(), s.begin(), s.end());
        labels.push_back(labels_[i]);
    }
    return Dataset(std::move(values), length_, std::move(labels), num_classes_, original_labels_);
}

Dataset validate_dataset(const std::vector<std::vector<double>>& raw_instances,
                         const std::vector<long long>& raw_labels) {
    if (raw_instances.empty()) {
        throw LengthMismatch("no instances");
    }
    if (raw_instances.size() != raw_labels.size()) {
        throw LengthMismatch("instance count " + std::to_string(raw_instances.size()) + " differs from label count " +
                             std::to_string(raw_labels.size()));
    }
    const std::size_t length = raw_instances.front().size();
    if (length == 0) {
        throw LengthMismatch("instance 0 is empty");
    }
    std::vector<double> values;
    values.reserve(raw_instances.size() * length);
    for (std::size_t i = 0; i < raw_instances.size(); ++i) {
        const auto& row = raw_instances[i];
        if (row.size() != length) {
            throw LengthMismatch("instance " + std::to_string(i) + " has length " + std::to_string(row.size()) +
                                 ", expected " + std::to_string(length));
        }
        require_finite(row, i);
        values.insert(values.end(), row.begin(), row.end());
    }
    std::vector<Label> labels;
    labels.reserve(raw_labels.size());
    long long max_label = 0;
    for (long long y : raw_labels) {
        if (y < 1 || y > 1'000'000) {
            throw InvalidLabel("label " + std::to_string(y) + " is not a 1-based class index");
        }
        max_label = std::max(max_label, y);
        labels.push_back(static_cast<Label>(y));
    }
    return Dataset(std::move(values), length, std::move(labels), static_cast<std::size_t>(max_label));
}

} // namespace tsf
