#pragma once

#include "tsf/types.hpp"

#include <limits>
#include <variant>
#include <vector>

namespace tsf {

/// Sakoe-Chiba band given as a percentage r of the series length; the
/// absolute band half-width is ceil(r M / 100). r = 100 admits every
/// alignment, r = 0 only the diagonal.
struct WarpingWindow {
    int percent = 100;

    [[nodiscard]] static WarpingWindow unconstrained() { return WarpingWindow{100}; }
    [[nodiscard]] std::size_t band_width(std::size_t series_length) const;

    friend bool operator==(const WarpingWindow&, const WarpingWindow&) = default;
};

[[nodiscard]] double euclidean_distance(SeriesView a, SeriesView b);

/// Dynamic time warping with squared local cost and steps {match, insert,
/// delete} inside |i - j| <= band. Returns the accumulated cost without a
/// final square root.
[[nodiscard]] double dtw_distance(SeriesView a, SeriesView b, WarpingWindow window);

/// DTW with an absolute band half-width. Returns +infinity as soon as every
/// cell of a row is >= `abandon_at`, so the true distance is then known to
/// be >= abandon_at.
[[nodiscard]] double dtw_distance_banded(SeriesView a, SeriesView b, std::size_t band,
                                         double abandon_at = std::numeric_limits<double>::infinity());

struct EuclideanMetric {};
struct DtwMetric {
    WarpingWindow window;
};
using Metric = std::variant<EuclideanMetric, DtwMetric>;

/// Label of the nearest training series; distance ties go to the lowest
/// training index.
[[nodiscard]] Label nn_classify(const Dataset& train, SeriesView query, const Metric& metric);

/// Index of the nearest training series, skipping `exclude` (pass
/// train.size() to exclude nothing).
[[nodiscard]] std::size_t nearest_neighbor(const Dataset& train, SeriesView query, const Metric& metric,
                                           std::size_t exclude);

/// 1-NN test error. `test` labels must use the training numbering.
[[nodiscard]] double nn_error(const Dataset& train, const Dataset& test, const Metric& metric,
                              std::size_t threads = 1);

/// Leave-one-out 1-NN error on the training set.
[[nodiscard]] double loocv_error(const Dataset& train, const Metric& metric, std::size_t threads = 1);

struct WindowSearchResult {
    WarpingWindow best;
    /// loocv_errors[r] for r = 0..100.
    std::vector<double> loocv_errors;
};

/// Evaluates LOOCV error of DTW for every r in 0..100 and returns the
/// smallest r attaining the minimum. Requires N >= 2.
[[nodiscard]] WindowSearchResult search_warping_window(const Dataset& train, std::size_t threads = 1);
[[nodiscard]] WarpingWindow best_warping_window(const Dataset& train, std::size_t threads = 1);

} // namespace tsf
