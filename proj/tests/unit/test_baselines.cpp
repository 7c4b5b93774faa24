#include "tsf/baselines.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace tsf;

namespace {

std::size_t brute_nn(const Dataset& train, SeriesView q, std::size_t band, std::size_t exclude) {
    std::vector<double> query(q.begin(), q.end());
    std::size_t best = train.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < train.size(); ++j) {
        if (j == exclude) continue;
        const std::vector<double> row(train.series(j).begin(), train.series(j).end());
        const double d = oracle::dtw(query, row, band);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

} // namespace

TEST_SUITE("baselines") {

TEST_CASE("euclidean distance") {
    const std::vector<double> x{1.5, -2, 3};
    CHECK(euclidean_distance(x, x) == 0);
    CHECK(euclidean_distance(std::vector<double>{0, 0}, std::vector<double>{3, 4}) == 5);
    std::mt19937_64 gen(1);
    for (int i = 0; i < 50; ++i) {
        const auto a = oracle::random_series(gen, 17);
        const auto b = oracle::random_series(gen, 17);
        CHECK(euclidean_distance(a, b) == euclidean_distance(b, a));
    }
    CHECK_THROWS_AS((void)euclidean_distance(std::vector<double>{1}, std::vector<double>{1, 2}), LengthMismatch);
}

TEST_CASE("warping window widths") {
    CHECK(WarpingWindow{0}.band_width(150) == 0);
    CHECK(WarpingWindow{1}.band_width(150) == 2);
    CHECK(WarpingWindow{10}.band_width(150) == 15);
    CHECK(WarpingWindow{100}.band_width(150) == 150);
    CHECK(WarpingWindow::unconstrained().percent == 100);
    CHECK_THROWS_AS((void)WarpingWindow{101}.band_width(10), Error);
    CHECK_THROWS_AS((void)WarpingWindow{-1}.band_width(10), Error);
}

TEST_CASE("dtw by hand") {
    const std::vector<double> x{0.3, 1, -2, 4};
    CHECK(dtw_distance(x, x, WarpingWindow{0}) == 0);
    CHECK(dtw_distance(x, x, WarpingWindow{100}) == 0);
    CHECK(oracle::dtw({0, 0, 1}, {0, 1, 1}, 2) == 0);
    CHECK(dtw_distance(std::vector<double>{0, 0, 1}, std::vector<double>{0, 1, 1}, WarpingWindow{100}) == 0);
    CHECK(dtw_distance(std::vector<double>{0, 0, 1}, std::vector<double>{0, 1, 1}, WarpingWindow{0}) == 1);
    CHECK_THROWS_AS((void)dtw_distance(std::vector<double>{1}, std::vector<double>{1, 2}, {}), LengthMismatch);
}

TEST_CASE("dtw matches the full-table oracle across bands") {
    std::mt19937_64 gen(3);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t m = 1 + gen() % 30;
        const auto a = oracle::random_series(gen, m);
        const auto b = oracle::random_series(gen, m);
        for (std::size_t band : {std::size_t{0}, std::size_t{1}, std::size_t{3}, m}) {
            CHECK(dtw_distance_banded(a, b, band) == doctest::Approx(oracle::dtw(a, b, band)).epsilon(1e-12));
        }
    }
}

TEST_CASE("dtw properties: symmetry, diagonal bound, band monotonicity, abandoning") {
    std::mt19937_64 gen(5);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t m = 2 + gen() % 60;
        const auto a = oracle::random_series(gen, m);
        const auto b = oracle::random_series(gen, m);
        double sq = 0;
        for (std::size_t t = 0; t < m; ++t) sq += (a[t] - b[t]) * (a[t] - b[t]);
        const double full = dtw_distance(a, b, WarpingWindow{100});
        CHECK(full <= sq + 1e-12);
        CHECK(full >= 0.0);
        CHECK(full == doctest::Approx(dtw_distance(b, a, WarpingWindow{100})).epsilon(1e-12));
        CHECK(dtw_distance(a, b, WarpingWindow{0}) == doctest::Approx(sq).epsilon(1e-12));
        double prev = std::numeric_limits<double>::infinity();
        for (int r = 0; r <= 100; r += 10) {
            const double d = dtw_distance(a, b, WarpingWindow{r});
            CHECK(d <= prev + 1e-12);
            prev = d;
        }
        const double cut = full * 0.5;
        CHECK(dtw_distance_banded(a, b, m, cut) >= cut);
        CHECK(dtw_distance_banded(a, b, m, full * 2 + 1) == doctest::Approx(full).epsilon(1e-12));
    }
}

TEST_CASE("nearest neighbor tie rule and trivial cases") {
    const auto one = fixture::make_dataset({{1, 2, 3}}, {2}, 2);
    std::mt19937_64 gen(1);
    for (int i = 0; i < 5; ++i) CHECK(nn_classify(one, oracle::random_series(gen, 3), EuclideanMetric{}) == 2);
    const auto dup = fixture::make_dataset({{0, 0}, {1, 1}, {1, 1}, {0, 0}}, {2, 1, 2, 1}, 2);
    CHECK(nearest_neighbor(dup, std::vector<double>{1, 1}, EuclideanMetric{}, 4) == 1);
    CHECK(nearest_neighbor(dup, std::vector<double>{0, 0}, DtwMetric{{100}}, 4) == 0);
    CHECK(nearest_neighbor(dup, std::vector<double>{0, 0}, DtwMetric{{100}}, 0) == 3);
    CHECK(nn_classify(dup, std::vector<double>{0.4, 0.4}, EuclideanMetric{}) == 2);
    CHECK_THROWS_AS((void)nn_classify(dup, std::vector<double>{0.4}, EuclideanMetric{}), LengthMismatch);
}

TEST_CASE("early abandoning returns the brute-force neighbor") {
    std::mt19937_64 gen(9);
    for (int rep = 0; rep < 10; ++rep) {
        const auto train = fixture::random_dataset(gen(), 25, 20, 3);
        const auto test = fixture::random_dataset(gen(), 10, 20, 3);
        for (int r : {0, 5, 20, 100}) {
            const std::size_t band = WarpingWindow{r}.band_width(20);
            for (std::size_t i = 0; i < test.size(); ++i) {
                CHECK(nearest_neighbor(train, test.series(i), DtwMetric{{r}}, train.size()) ==
                      brute_nn(train, test.series(i), band, train.size()));
            }
            CHECK(nearest_neighbor(train, train.series(3), DtwMetric{{r}}, 3) == brute_nn(train, train.series(3), band, 3));
        }
    }
}

TEST_CASE("euclidean 1-NN equals diagonal-only DTW 1-NN") {
    const auto train = fixture::random_dataset(1, 40, 30, 3);
    const auto test = fixture::random_dataset(2, 40, 30, 3);
    for (std::size_t i = 0; i < test.size(); ++i) {
        CHECK(nn_classify(train, test.series(i), EuclideanMetric{}) == nn_classify(train, test.series(i), DtwMetric{{0}}));
    }
    CHECK(nn_error(train, test, EuclideanMetric{}) == nn_error(train, test, DtwMetric{{0}}));
    CHECK(nn_error(train, test, EuclideanMetric{}, 3) == nn_error(train, test, EuclideanMetric{}, 1));
}

TEST_CASE("window search") {
    const auto easy = fixture::separable_by_mean(3, 20, 10);
    const auto result = search_warping_window(easy);
    CHECK(result.loocv_errors.size() == 101);
    CHECK(result.loocv_errors[0] == 0.0);
    CHECK(result.best.percent == 0);

    const auto hard = fixture::random_dataset(4, 30, 16, 3);
    const auto search = search_warping_window(hard);
    CHECK(search.loocv_errors[100] == loocv_error(hard, DtwMetric{WarpingWindow::unconstrained()}));
    const double best = *std::min_element(search.loocv_errors.begin(), search.loocv_errors.end());
    CHECK(search.loocv_errors[static_cast<std::size_t>(search.best.percent)] == best);
    for (int r = 0; r < search.best.percent; ++r) CHECK(search.loocv_errors[static_cast<std::size_t>(r)] > best);
    CHECK(best_warping_window(hard, 2) == search.best);
    CHECK_THROWS_AS((void)search_warping_window(fixture::make_dataset({{1, 2}}, {1})), Error);
}

}
