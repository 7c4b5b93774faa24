#include "tsf/importance.hpp"
#include "tsf/model_io.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <numeric>
#include <sstream>

using namespace tsf;

namespace {

Forest stump_forest(std::size_t m, Interval iv, double gain, FeatureKind kind = FeatureKind::Mean) {
    std::vector<Tree> trees;
    trees.emplace_back(std::vector<TreeNode>{SplitNode{kind, iv, 0.0, gain, 1, 2}, LeafNode{1, {1, 0}},
                                             LeafNode{2, {0, 1}}},
                       m, 2);
    ForestConfig c;
    c.n_trees = 1;
    return Forest(std::move(trees), c, 2, m);
}

} // namespace

TEST_SUITE("importance") {

TEST_CASE("a stump on (5,10) lights exactly 5..10 of its kind") {
    const double g = 0.4321;
    const auto curves = importance_curves(stump_forest(20, {5, 10}, g));
    CHECK(curves.series_length == 20);
    for (std::size_t t = 1; t <= 20; ++t) {
        CHECK(curves.at(FeatureKind::Mean, t) == (t >= 5 && t <= 10 ? g : 0.0));
        CHECK(curves.at(FeatureKind::StdDev, t) == 0.0);
        CHECK(curves.at(FeatureKind::Slope, t) == 0.0);
    }
}

TEST_CASE("pure-leaf forests have zero curves") {
    std::vector<Tree> trees{Tree({LeafNode{1, {3, 0}}}, 7, 2), Tree({LeafNode{2, {0, 3}}}, 7, 2)};
    ForestConfig c;
    c.n_trees = 2;
    const auto curves = importance_curves(Forest(trees, c, 2, 7));
    for (const auto& curve : curves.curves) {
        CHECK(curve.size() == 7);
        for (double x : curve) CHECK(x == 0.0);
    }
}

TEST_CASE("bookkeeping identity and agreement after a model round trip") {
    const auto data = fixture::random_dataset(8, 40, 30, 2);
    ForestConfig c;
    c.n_trees = 12;
    const Forest f = fit(data, c, 1);
    const auto curves = importance_curves(f);
    std::array<double, 3> expected{};
    for (const Tree& tree : f.trees()) {
        for (const TreeNode& node : tree.nodes()) {
            if (const auto* s = std::get_if<SplitNode>(&node)) {
                expected[kind_index(s->kind)] += s->gain * static_cast<double>(s->interval.length());
            }
        }
    }
    for (FeatureKind k : kFeatureKinds) {
        const auto& curve = curves.curve(k);
        CHECK(std::accumulate(curve.begin(), curve.end(), 0.0) == doctest::Approx(expected[kind_index(k)]).epsilon(1e-12));
        for (double x : curve) CHECK(x >= 0.0);
    }
    const auto again = importance_curves(model_from_string(model_to_string(f)));
    CHECK(again.curves == curves.curves);

    auto summed = importance_curves(f.trees().front());
    for (std::size_t i = 1; i < f.trees().size(); ++i) {
        const auto one = importance_curves(f.trees()[i]);
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t t = 0; t < 30; ++t) summed.curves[k][t] += one.curves[k][t];
    }
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t t = 0; t < 30; ++t) CHECK(summed.curves[k][t] == doctest::Approx(curves.curves[k][t]));
}

TEST_CASE("interval count") {
    CHECK(interval_count(1, 1000) == 1000);
    CHECK(interval_count(1000, 1000) == 1000);
    CHECK(interval_count(500, 1000) == 250500);
    for (std::size_t m : {1, 2, 10, 1000}) {
        for (std::size_t t = 1; t <= m; ++t) {
            std::size_t brute = 0;
            for (std::size_t a = 1; a <= m; ++a)
                for (std::size_t b = a; b <= m; ++b) brute += (a <= t && t <= b) ? 1 : 0;
            if (m <= 10) CHECK(interval_count(t, m) == brute);
            CHECK(interval_count(t, m) == interval_count(m - t + 1, m));
        }
    }
    CHECK_THROWS_AS((void)interval_count(0, 10), InvalidInterval);
    CHECK_THROWS_AS((void)interval_count(11, 10), InvalidInterval);
}

TEST_CASE("CSV output") {
    std::ostringstream raw, norm;
    const auto curves = importance_curves(stump_forest(12, {5, 10}, 0.5));
    write_importance_csv(raw, curves);
    write_importance_csv(norm, curves, true);
    std::istringstream r(raw.str()), n(norm.str());
    std::string line;
    std::getline(r, line);
    CHECK(line == "t,mean,stddev,slope");
    std::size_t rows = 0;
    while (std::getline(r, line)) {
        ++rows;
        if (rows == 5) CHECK(line == "5,0.5,0,0");
        if (rows == 4) CHECK(line == "4,0,0,0");
    }
    CHECK(rows == 12);
    std::getline(n, line);
    CHECK(line == "t,mean,stddev,slope,mean_norm,stddev_norm,slope_norm");
    for (int i = 0; i < 5; ++i) std::getline(n, line);
    CHECK(line == "5,0.5,0,0," + format_double(0.5 / 40.0) + ",0,0");
}

}
