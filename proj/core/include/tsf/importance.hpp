#pragma once

#include "tsf/forest.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace tsf {

/// Temporal importance curves: for each feature kind k and time index t,
/// the sum of the recorded entropy gains of all split nodes on kind k whose
/// interval contains t. Curves are raw sums over every tree.
struct ImportanceCurves {
    std::size_t series_length = 0;
    /// curves[kind_index(k)][t - 1]
    std::array<std::vector<double>, kNumFeatureKinds> curves;

    [[nodiscard]] const std::vector<double>& curve(FeatureKind kind) const { return curves[kind_index(kind)]; }
    /// Value at 1-based time index t.
    [[nodiscard]] double at(FeatureKind kind, std::size_t t) const { return curves[kind_index(kind)].at(t - 1); }
};

[[nodiscard]] ImportanceCurves importance_curves(const Forest& forest);
[[nodiscard]] ImportanceCurves importance_curves(const Tree& tree);

/// Number of intervals [t1, t2] of a length-M series that contain t:
/// t (M - t + 1). Throws InvalidInterval unless 1 <= t <= M.
[[nodiscard]] std::size_t interval_count(std::size_t t, std::size_t series_length);

/// Each curve divided pointwise by interval_count(t, M). Offered as a user
/// convenience; the default curves are the unnormalized sums.
[[nodiscard]] ImportanceCurves normalize_by_interval_count(const ImportanceCurves& curves);

/// CSV with header `t,mean,stddev,slope`, one row per 1-based t. With
/// `normalized` the extra columns `mean_norm,stddev_norm,slope_norm` follow.
void write_importance_csv(std::ostream& out, const ImportanceCurves& curves, bool normalized = false);

} // namespace tsf
