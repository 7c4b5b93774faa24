#include "tsf/importance.hpp"

#include "tsf/model_io.hpp"

#include <ostream>

namespace tsf {

namespace {

using Curves = std::array<std::vector<double>, kNumFeatureKinds>;

void accumulate(const Tree& tree, Curves& curves) {
    for (const TreeNode& node : tree.nodes()) {
        if (const auto* split = std::get_if<SplitNode>(&node)) {
            auto& curve = curves[kind_index(split->kind)];
            for (std::size_t t = split->interval.t1; t <= split->interval.t2; ++t) {
                curve[t - 1] += split->gain;
            }
        }
    }
}

ImportanceCurves empty_curves(std::size_t series_length) {
    ImportanceCurves out;
    out.series_length = series_length;
    for (auto& curve : out.curves) {
        curve.assign(series_length, 0.0);
    }
    return out;
}

} // namespace

ImportanceCurves importance_curves(const Tree& tree) {
    ImportanceCurves out = empty_curves(tree.series_length());
    accumulate(tree, out.curves);
    return out;
}

ImportanceCurves importance_curves(const Forest& forest) {
    ImportanceCurves out = empty_curves(forest.series_length());
    for (const Tree& tree : forest.trees()) {
        accumulate(tree, out.curves);
    }
    return out;
}

std::size_t interval_count(std::size_t t, std::size_t series_length) {
    if (t < 1 || t > series_length) {
        throw InvalidInterval("time index " + std::to_string(t) + " outside 1.." + std::to_string(series_length));
    }
    return t * (series_length - t + 1);
}

ImportanceCurves normalize_by_interval_count(const ImportanceCurves& curves) {
    ImportanceCurves out = curves;
    for (auto& curve : out.curves) {
        for (std::size_t t = 1; t <= curve.size(); ++t) {
            curve[t - 1] /= static_cast<double>(interval_count(t, curves.series_length));
        }
    }
    return out;
}

void write_importance_csv(std::ostream& out, const ImportanceCurves& curves, bool normalized) {
    out << "t,mean,stddev,slope";
    if (normalized) {
        out << ",mean_norm,stddev_norm,slope_norm";
    }
    out << '\n';
    const ImportanceCurves norm = normalized ? normalize_by_interval_count(curves) : ImportanceCurves{};
    for (std::size_t t = 1; t <= curves.series_length; ++t) {
        out << t;
        for (FeatureKind kind : kFeatureKinds) {
            out << ',' << format_double(curves.at(kind, t));
        }
        if (normalized) {
            for (FeatureKind kind : kFeatureKinds) {
                out << ',' << format_double(norm.at(kind, t));
            }
        }
        out << '\n';
    }
}

} // namespace tsf
