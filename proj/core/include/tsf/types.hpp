#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tsf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class InvalidLabel : public Error {
public:
    using Error::Error;
};

class NonFiniteValue : public Error {
public:
    using Error::Error;
};

class InvalidInterval : public Error {
public:
    using Error::Error;
};

using SeriesView = std::span<const double>;

/// Class labels are 1-based: a dataset with C classes uses labels 1..C.
using Label = int;

/// A fixed-length, finite, real-valued sequence. Time indices are 1-based in
/// every public interface; storage is an ordinary 0-based vector.
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values);

    [[nodiscard]] std::size_t length() const noexcept { return values_.size(); }
    /// Value at 1-based time index t.
    [[nodiscard]] double at(std::size_t t) const;
    [[nodiscard]] SeriesView view() const noexcept { return values_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

    operator SeriesView() const noexcept { return values_; } // NOLINT(google-explicit-constructor)

private:
    std::vector<double> values_;
};

/// Closed interval [t1, t2] of 1-based time indices.
struct Interval {
    std::size_t t1 = 1;
    std::size_t t2 = 1;

    /// Validating constructor: requires 1 <= t1 <= t2 <= series_length.
    static Interval make(std::size_t t1, std::size_t t2, std::size_t series_length);

    [[nodiscard]] std::size_t length() const noexcept { return t2 - t1 + 1; }
    [[nodiscard]] bool contains(std::size_t t) const noexcept { return t1 <= t && t <= t2; }
    [[nodiscard]] bool valid_for(std::size_t series_length) const noexcept {
        return 1 <= t1 && t1 <= t2 && t2 <= series_length;
    }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// The three interval feature types. Ordinals match k = 1, 2, 3.
enum class FeatureKind : std::uint8_t { Mean = 1, StdDev = 2, Slope = 3 };

inline constexpr std::size_t kNumFeatureKinds = 3;
inline constexpr FeatureKind kFeatureKinds[kNumFeatureKinds] = {FeatureKind::Mean, FeatureKind::StdDev,
                                                                 FeatureKind::Slope};

[[nodiscard]] constexpr std::size_t kind_index(FeatureKind kind) noexcept {
    return static_cast<std::size_t>(kind) - 1;
}

[[nodiscard]] std::string_view to_string(FeatureKind kind) noexcept;
/// Parses "mean", "stddev" or "slope".
[[nodiscard]] FeatureKind parse_feature_kind(std::string_view text);

/// N labelled series of identical length M with labels in 1..C.
///
/// Values are stored row-major in one buffer and are never normalized or
/// rescaled. `original_labels()[c - 1]` is the label value class c had in its
/// source (identity for in-memory datasets, the file's own label for loaded
/// ones).
class Dataset {
public:
    Dataset(std::vector<double> values, std::size_t series_length, std::vector<Label> labels,
            std::size_t num_classes, std::vector<long long> original_labels = {});

    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
    [[nodiscard]] std::size_t series_length() const noexcept { return length_; }
    [[nodiscard]] std::size_t num_classes() const noexcept { return num_classes_; }

    /// 0-based instance index.
    [[nodiscard]] SeriesView series(std::size_t i) const noexcept {
        return SeriesView(values_).subspan(i * length_, length_);
    }
    [[nodiscard]] Label label(std::size_t i) const noexcept { return labels_[i]; }
    [[nodiscard]] const std::vector<Label>& labels() const noexcept { return labels_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<long long>& original_labels() const noexcept { return original_labels_; }
    /// Instances per class; index c - 1 for class c.
    [[nodiscard]] std::vector<std::size_t> class_counts() const;

    /// Rows `indices` (0-based) as a new dataset with the same C and label map.
    [[nodiscard]] Dataset subset(std::span<const std::size_t> indices) const;

private:
    std::vector<double> values_;
    std::size_t length_;
    std::vector<Label> labels_;
    std::size_t num_classes_;
    std::vector<long long> original_labels_;
};

/// Builds a Dataset from raw rows. Labels must already be 1-based; C is the
/// largest label. No remapping or normalization happens here.
[[nodiscard]] Dataset validate_dataset(const std::vector<std::vector<double>>& raw_instances,
                                       const std::vector<long long>& raw_labels);

} // namespace tsf
