#include "tsf/baselines.hpp"

#include "tsf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace tsf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_length(SeriesView a, SeriesView b) {
    if (a.size() != b.size()) {
        throw LengthMismatch("series lengths differ: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    }
}

double squared_euclidean(SeriesView a, SeriesView b, double abandon_at) {
    double sum = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        const double d = a[t] - b[t];
        sum += d * d;
        if (sum >= abandon_at) {
            return kInf;
        }
    }
    return sum;
}

/// Distance used for neighbor ranking; both metrics are compared in squared
/// form so every tie is a true tie.
double ranking_distance(SeriesView a, SeriesView b, const Metric& metric, double abandon_at) {
    if (std::holds_alternative<EuclideanMetric>(metric)) {
        return squared_euclidean(a, b, abandon_at);
    }
    const auto& dtw = std::get<DtwMetric>(metric);
    return dtw_distance_banded(a, b, dtw.window.band_width(a.size()), abandon_at);
}

} // namespace

std::size_t WarpingWindow::band_width(std::size_t series_length) const {
    if (percent < 0 || percent > 100) {
        throw Error("warping window must be a percentage in 0..100, got " + std::to_string(percent));
    }
    return (static_cast<std::size_t>(percent) * series_length + 99) / 100;
}

double euclidean_distance(SeriesView a, SeriesView b) {
    require_same_length(a, b);
    return std::sqrt(squared_euclidean(a, b, kInf));
}

double dtw_distance(SeriesView a, SeriesView b, WarpingWindow window) {
    require_same_length(a, b);
    return dtw_distance_banded(a, b, window.band_width(a.size()));
}

double dtw_distance_banded(SeriesView a, SeriesView b, std::size_t band, double abandon_at) {
    require_same_length(a, b);
    const std::size_t m = a.size();
    if (m == 0) {
        return 0.0;
    }
    band = std::min(band, m - 1);
    // Rows hold columns 0..m-1 of the cost matrix; cells outside the band stay +inf.
    std::vector<double> prev(m, kInf);
    std::vector<double> curr(m, kInf);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t lo = i > band ? i - band : 0;
        const std::size_t hi = std::min(m - 1, i + band);
        if (lo > 0) {
            curr[lo - 1] = kInf;
        }
        double row_min = kInf;
        for (std::size_t j = lo; j <= hi; ++j) {
            const double d = a[i] - b[j];
            const double cost = d * d;
            double best;
            if (i == 0 && j == 0) {
                best = 0.0;
            } else {
                best = kInf;
                if (i > 0) {
                    best = std::min(best, prev[j]);
                    if (j > 0) {
                        best = std::min(best, prev[j - 1]);
                    }
                }
                if (j > 0) {
                    best = std::min(best, curr[j - 1]);
                }
            }
            curr[j] = best + cost;
            row_min = std::min(row_min, curr[j]);
        }
        if (hi + 1 < m) {
            curr[hi + 1] = kInf;
        }
        if (row_min >= abandon_at) {
            return kInf;
        }
        std::swap(prev, curr);
    }
    return prev[m - 1];
}

std::size_t nearest_neighbor(const Dataset& train, SeriesView query, const Metric& metric, std::size_t exclude) {
    if (query.size() != train.series_length()) {
        throw LengthMismatch("query length " + std::to_string(query.size()) + " differs from training length " +
                             std::to_string(train.series_length()));
    }
    std::size_t best_index = train.size();
    double best = kInf;
    for (std::size_t j = 0; j < train.size(); ++j) {
        if (j == exclude) {
            continue;
        }
        // A later index must be strictly closer to win, so abandoning at
        // `best` never changes the answer.
        const double d = ranking_distance(query, train.series(j), metric, best);
        if (d < best || best_index == train.size()) {
            if (d < best) {
                best = d;
            }
            best_index = j;
        }
    }
    return best_index;
}

Label nn_classify(const Dataset& train, SeriesView query, const Metric& metric) {
    return train.label(nearest_neighbor(train, query, metric, train.size()));
}

double nn_error(const Dataset& train, const Dataset& test, const Metric& metric, std::size_t threads) {
    if (test.series_length() != train.series_length()) {
        throw LengthMismatch("test length " + std::to_string(test.series_length()) + " differs from training length " +
                             std::to_string(train.series_length()));
    }
    std::vector<unsigned char> wrong(test.size(), 0);
    parallel_for(test.size(), threads, [&](std::size_t i) {
        wrong[i] = nn_classify(train, test.series(i), metric) != test.label(i) ? 1 : 0;
    });
    return static_cast<double>(std::count(wrong.begin(), wrong.end(), 1)) / static_cast<double>(test.size());
}

double loocv_error(const Dataset& train, const Metric& metric, std::size_t threads) {
    if (train.size() < 2) {
        throw Error("leave-one-out needs at least two training instances");
    }
    std::vector<unsigned char> wrong(train.size(), 0);
    parallel_for(train.size(), threads, [&](std::size_t i) {
        const std::size_t j = nearest_neighbor(train, train.series(i), metric, i);
        wrong[i] = train.label(j) != train.label(i) ? 1 : 0;
    });
    return static_cast<double>(std::count(wrong.begin(), wrong.end(), 1)) / static_cast<double>(train.size());
}

WindowSearchResult search_warping_window(const Dataset& train, std::size_t threads) {
    if (train.size() < 2) {
        throw Error("window search needs at least two training instances");
    }
    const std::size_t m = train.series_length();
    WindowSearchResult result;
    result.loocv_errors.resize(101);
    // Percentages mapping to the same effective band give the same error.
    std::map<std::size_t, double> by_band;
    for (int r = 0; r <= 100; ++r) {
        const std::size_t band = std::min(WarpingWindow{r}.band_width(m), m > 0 ? m - 1 : 0);
        auto it = by_band.find(band);
        if (it == by_band.end()) {
            it = by_band.emplace(band, loocv_error(train, DtwMetric{WarpingWindow{r}}, threads)).first;
        }
        result.loocv_errors[static_cast<std::size_t>(r)] = it->second;
    }
    const auto best = std::min_element(result.loocv_errors.begin(), result.loocv_errors.end());
    result.best = WarpingWindow{static_cast<int>(best - result.loocv_errors.begin())};
    return result;
}

WarpingWindow best_warping_window(const Dataset& train, std::size_t threads) {
    return search_warping_window(train, threads).best;
}

} // namespace tsf
