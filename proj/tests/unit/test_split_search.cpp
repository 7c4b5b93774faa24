#include "tsf/split_search.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

using namespace tsf;

namespace {

ClassDistribution dist(std::vector<std::size_t> c) { return ClassDistribution(std::move(c)); }

SplitEvaluation eval(double gain, double margin, FeatureKind kind = FeatureKind::Mean) {
    SplitEvaluation e;
    e.candidate.kind = kind;
    e.entropy_gain = gain;
    e.margin = margin;
    return e;
}

} // namespace

TEST_SUITE("split_search") {

TEST_CASE("node entropy") {
    CHECK(node_entropy(dist({5, 0})) == 0.0);
    CHECK(node_entropy(dist({3, 3})) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    const double want = oracle::entropy({1, 3});
    CHECK(want == doctest::Approx(0.562335).epsilon(1e-6));
    CHECK(node_entropy(dist({1, 3})) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("node entropy is maximal for the uniform distribution and zero iff pure") {
    for (std::size_t c = 1; c <= 6; ++c) {
        CHECK(node_entropy(dist(std::vector<std::size_t>(c, 4))) == doctest::Approx(std::log(double(c))));
    }
    std::mt19937_64 gen(2);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<std::size_t> c(1 + gen() % 5);
        for (auto& x : c) x = gen() % 6;
        if (std::accumulate(c.begin(), c.end(), std::size_t{0}) == 0) c[0] = 1;
        const double h = node_entropy(dist(c));
        CHECK(h <= std::log(double(c.size())) + 1e-12);
        CHECK((h == 0.0) == (std::count_if(c.begin(), c.end(), [](auto x) { return x > 0; }) == 1));
    }
}

TEST_CASE("entropy gain") {
    CHECK(entropy_gain(dist({3, 3}), dist({3, 0}), dist({0, 3})) == doctest::Approx(std::log(2.0)));
    CHECK(entropy_gain(dist({3, 3}), dist({3, 3}), dist({0, 0})) == 0.0);
    const double want = oracle::gain({2, 2, 0}, {0, 0, 2});
    CHECK(want == doctest::Approx(std::log(3.0) - (2.0 / 3.0) * std::log(2.0)).epsilon(1e-14));
    CHECK(want == doctest::Approx(0.636514).epsilon(1e-6));
    CHECK(entropy_gain(dist({2, 2, 2}), dist({2, 2, 0}), dist({0, 0, 2})) == doctest::Approx(want).epsilon(1e-14));
    CHECK_THROWS_AS((void)entropy_gain(dist({3, 3}), dist({1, 0}), dist({1, 3})), DistributionMismatch);
    CHECK_THROWS_AS((void)entropy_gain(dist({3, 3}), dist({3, 0, 0}), dist({0, 3})), DistributionMismatch);
}

TEST_CASE("entropy gain agrees with the oracle and is invariant to class relabeling") {
    std::mt19937_64 gen(8);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t c = 2 + gen() % 4;
        std::vector<std::size_t> l(c), r(c), p(c);
        for (std::size_t k = 0; k < c; ++k) {
            l[k] = gen() % 5;
            r[k] = gen() % 5;
            p[k] = l[k] + r[k];
        }
        if (std::accumulate(p.begin(), p.end(), std::size_t{0}) == 0) continue;
        const double g = entropy_gain(dist(p), dist(l), dist(r));
        const double o = oracle::gain(l, r);
        CHECK(g == doctest::Approx(o < 1e-12 ? 0.0 : o).epsilon(1e-12));
        CHECK(g >= 0.0);
        CHECK(g <= std::log(double(c)) + 1e-12);
        std::vector<std::size_t> perm(c);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), gen);
        std::vector<std::size_t> pl(c), pr(c), pp(c);
        for (std::size_t k = 0; k < c; ++k) {
            pl[perm[k]] = l[k];
            pr[perm[k]] = r[k];
            pp[perm[k]] = p[k];
        }
        CHECK(entropy_gain(dist(pp), dist(pl), dist(pr)) == doctest::Approx(g).epsilon(1e-12));
    }
}

TEST_CASE("candidate thresholds") {
    const std::vector<double> span21{0, 21, 5, 3};
    const auto t = candidate_thresholds(span21, 20);
    REQUIRE(t.size() == 20);
    for (std::size_t i = 0; i < 20; ++i) CHECK(t[i] == doctest::Approx(double(i + 1)).epsilon(1e-15));
    CHECK(candidate_thresholds(std::vector<double>(7, 4.2), 20).empty());
    const auto q = candidate_thresholds(std::vector<double>{1, 0, 0.3}, 3);
    REQUIRE(q.size() == 3);
    CHECK(q[0] == 0.25);
    CHECK(q[1] == 0.5);
    CHECK(q[2] == 0.75);
}

TEST_CASE("candidate thresholds are permutation invariant and strictly interior") {
    std::mt19937_64 gen(3);
    for (int rep = 0; rep < 100; ++rep) {
        auto values = oracle::random_series(gen, 2 + gen() % 20);
        const auto a = candidate_thresholds(values, 1 + gen() % 30);
        const auto kappa = a.size();
        std::shuffle(values.begin(), values.end(), gen);
        const auto b = candidate_thresholds(values, kappa);
        CHECK(a == b);
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        for (double tau : a) {
            CHECK(tau > *lo);
            CHECK(tau < *hi);
        }
        CHECK(std::is_sorted(a.begin(), a.end()));
    }
}

TEST_CASE("split margin") {
    CHECK(split_margin(std::vector<double>{1, 2, 4, 5}, 3) == 1);
    CHECK(split_margin(std::vector<double>{1, 2, 4, 5}, 4) == 0);
    CHECK(split_margin(std::vector<double>{0, 10}, 5) == 5);
}

TEST_CASE("compare_entrance") {
    const double ln2 = std::log(2.0);
    CHECK(compare_entrance(eval(ln2, 2), eval(ln2, 1)) > 0);
    CHECK(compare_entrance(eval(ln2, 1), eval(ln2, 2)) < 0);
    CHECK(compare_entrance(eval(0.6, 0), eval(0.5, 9)) > 0);
    CHECK(compare_entrance(eval(0.5, 9), eval(0.6, 0)) < 0);
    CHECK(compare_entrance(eval(0.3, 1), eval(0.3, 1)) == 0);
    CHECK(compare_entrance(eval(0.3, 1), eval(0.3 + 1e-13, 0)) > 0);
    CHECK(compare_entrance(eval(0.3, 1.0), eval(0.3, 1.0 + 1e-13)) == 0);
    CHECK(compare_entrance(eval(ln2, 1), eval(ln2, 2), SplitCriterion::EntropyOnly) == 0);
}

TEST_CASE("criterion names round-trip") {
    CHECK(parse_split_criterion("entrance") == SplitCriterion::Entrance);
    CHECK(parse_split_criterion("entropy") == SplitCriterion::EntropyOnly);
    CHECK(to_string(SplitCriterion::Entrance) == "entrance");
    CHECK(to_string(SplitCriterion::EntropyOnly) == "entropy");
    CHECK_THROWS_AS((void)parse_split_criterion("gini"), Error);
}

TEST_CASE("the Entrance winner on three equal-gain splits is the widest gap") {
    // Six instances of three classes on a line; thresholds S1, S2, S3 all
    // isolate the third class but sit at different distances from the data.
    const auto data = fixture::make_dataset({{0.0}, {1.0}, {2.0}, {3.0}, {9.0}, {10.0}}, {1, 1, 2, 2, 3, 3});
    const std::vector<Interval> iv{{1, 1}};
    // kappa 9 places thresholds at 1, 2, ..., 9.
    const auto best = best_split_for_kind(data, FeatureKind::Mean, iv, 9);
    REQUIRE(best);
    CHECK(best->entropy_gain == doctest::Approx(std::log(3.0) - (2.0 / 3.0) * std::log(2.0)));
    CHECK(best->candidate.threshold == 6.0);
    CHECK(best->margin == 3.0);
    const auto plain = best_split_for_kind(data, FeatureKind::Mean, iv, 9, SplitCriterion::EntropyOnly);
    REQUIRE(plain);
    CHECK(plain->entropy_gain == doctest::Approx(best->entropy_gain));
    CHECK(plain->candidate.threshold == 1.0); // first in enumeration order
}

TEST_CASE("separable by mean: best split reaches the node entropy") {
    const auto data = fixture::separable_by_mean(4, 20, 12);
    const std::vector<Interval> iv{{1, 12}, {3, 7}};
    const auto best = best_split_for_kind(data, FeatureKind::Mean, iv, 20);
    REQUIRE(best);
    CHECK(best->entropy_gain == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    const auto o = oracle::best_split(fixture::rows_of(data), data.labels(), 2, FeatureKind::Mean, iv, 20, true);
    REQUIRE(o);
    CHECK(o->gain == doctest::Approx(best->entropy_gain).epsilon(1e-12));
    CHECK(o->margin == doctest::Approx(best->margin).epsilon(1e-9));
}

TEST_CASE("identical instances give no split") {
    const auto data = fixture::make_dataset({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}, {1, 2, 1});
    const std::vector<Interval> iv{{1, 3}, {2, 3}, {1, 1}};
    for (FeatureKind k : kFeatureKinds) CHECK_FALSE(best_split_for_kind(data, k, iv, 20));
}

TEST_CASE("single interval, kappa = 1 equals the direct computation") {
    const auto data = fixture::make_dataset({{0, 1}, {0, 3}, {0, 4}, {0, 10}}, {1, 1, 2, 2});
    const std::vector<Interval> iv{{1, 2}};
    const auto best = best_split_for_kind(data, FeatureKind::Mean, iv, 1);
    REQUIRE(best);
    // Means 0.5, 1.5, 2, 5: single threshold at 2.75.
    CHECK(best->candidate.threshold == doctest::Approx(2.75));
    CHECK(best->entropy_gain == doctest::Approx(oracle::gain({2, 1}, {0, 1})));
    CHECK(best->margin == doctest::Approx(0.75));
}

TEST_CASE("invalid intervals are rejected by the dataset overload") {
    const auto data = fixture::make_dataset({{0, 1}, {1, 0}}, {1, 2});
    const std::vector<Interval> iv{{1, 3}};
    CHECK_THROWS_AS((void)best_split_for_kind(data, FeatureKind::Mean, iv, 3), InvalidInterval);
}

namespace {

// Runs the library and the oracle on one random node and compares results.
// Coarse values put many thresholds exactly on feature values, so the oracle
// reads the library's feature values; continuous values use naive features.
int compare_with_oracle(std::mt19937_64& gen, bool coarse) {
    const std::size_t n = 2 + gen() % 11;
    const std::size_t m = 1 + gen() % 15;
    const std::size_t classes = 2 + gen() % 3;
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> r(m);
        for (auto& x : r) x = coarse ? static_cast<double>(static_cast<int>(gen() % 9) - 4) / 2.0 : normal(gen);
        rows.push_back(r);
        labels.push_back(static_cast<int>(gen() % classes) + 1);
    }
    const auto data = fixture::make_dataset(rows, labels, classes);
    const DatasetStats stats(data);
    std::vector<Interval> iv;
    for (int k = 0; k < 4; ++k) {
        const std::size_t t1 = 1 + gen() % m;
        iv.push_back({t1, t1 + gen() % (m - t1 + 1)});
    }
    const std::size_t kappa = 1 + gen() % 20;
    int compared = 0;
    for (SplitCriterion crit : {SplitCriterion::Entrance, SplitCriterion::EntropyOnly}) {
        for (FeatureKind kind : kFeatureKinds) {
            const bool margin = crit == SplitCriterion::Entrance;
            const auto got = best_split_for_kind(data, kind, iv, kappa, crit);
            const auto want =
                coarse ? oracle::best_split(n, labels, classes, kind, iv, kappa, margin,
                                            [&](std::size_t r, const Interval& i) { return stats[r].feature(kind, i); })
                       : oracle::best_split(rows, labels, classes, kind, iv, kappa, margin);
            REQUIRE(got.has_value() == want.has_value());
            if (!got) continue;
            ++compared;
            CHECK(got->entropy_gain == doctest::Approx(want->gain).epsilon(1e-12));
            if (margin) CHECK(got->margin == doctest::Approx(want->margin).epsilon(1e-9));
            CHECK(got->candidate.kind == kind);
            CHECK(got->candidate.interval == want->interval);
            CHECK(got->candidate.threshold == doctest::Approx(want->threshold).epsilon(1e-12));
        }
    }
    return compared;
}

} // namespace

TEST_CASE("exhaustive oracle equivalence on nodes of at most 12 instances") {
    std::mt19937_64 gen(42);
    int coarse = 0, continuous = 0;
    for (int rep = 0; rep < 400; ++rep) {
        coarse += compare_with_oracle(gen, true);
        continuous += compare_with_oracle(gen, false);
    }
    CHECK(coarse > 500);
    CHECK(continuous > 500);
}

TEST_CASE("Entrance never overrides entropy") {
    std::mt19937_64 gen(77);
    for (int rep = 0; rep < 100; ++rep) {
        const auto data = fixture::random_dataset(gen(), 4 + gen() % 9, 10, 2 + gen() % 2);
        const std::vector<Interval> iv{{1, 10}, {2, 5}, {6, 9}, {4, 4}};
        for (FeatureKind kind : kFeatureKinds) {
            const auto ent = best_split_for_kind(data, kind, iv, 20, SplitCriterion::Entrance);
            const auto plain = best_split_for_kind(data, kind, iv, 20, SplitCriterion::EntropyOnly);
            REQUIRE(ent.has_value() == plain.has_value());
            if (ent) {
                CHECK(ent->entropy_gain >= plain->entropy_gain - 1e-12);
                CHECK(ent->margin >= plain->margin);
            }
        }
    }
}

TEST_CASE("select_best_split") {
    RngStream rng(1);
    std::vector<std::optional<SplitEvaluation>> a{eval(0.4, 0, FeatureKind::Mean), eval(0.7, 0, FeatureKind::StdDev),
                                                  std::nullopt};
    const auto pick = select_best_split(a, rng);
    REQUIRE(pick);
    CHECK(pick->candidate.kind == FeatureKind::StdDev);

    std::vector<std::optional<SplitEvaluation>> none(3);
    CHECK_FALSE(select_best_split(none, rng));

    std::vector<std::optional<SplitEvaluation>> tie{eval(0.7, 0, FeatureKind::Mean), eval(0.7, 5, FeatureKind::StdDev),
                                                    eval(0.1, 9, FeatureKind::Slope)};
    std::set<FeatureKind> seen;
    for (std::uint64_t s = 0; s < 64; ++s) {
        RngStream r1(s), r2(s);
        const auto x = select_best_split(tie, r1);
        const auto y = select_best_split(tie, r2);
        REQUIRE(x);
        CHECK(x->candidate.kind == y->candidate.kind);
        CHECK(x->candidate.kind != FeatureKind::Slope);
        seen.insert(x->candidate.kind);
    }
    CHECK(seen.size() == 2);
}

}
