#include "tsf/interval_sampling.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace tsf {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
    if (n <= 1) {
        return 0;
    }
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return x % n;
}

double RngStream::uniform01() {
    return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

RngStream RngStream::derive(std::uint64_t key) const {
    return RngStream(mix64(seed_ ^ mix64(key ^ 0x5851F42D4C957F2DULL)));
}

std::vector<std::size_t> rand_samp_no_rep(RngStream& rng, std::size_t n, std::size_t m) {
    if (m < 1 || m > n) {
        throw InvalidSampleSize("cannot sample " + std::to_string(m) + " of " + std::to_string(n) +
                                " items without replacement");
    }
    // Partial Fisher-Yates over 1..n.
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{1});
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(m);
    return pool;
}

std::size_t isqrt(std::size_t n) noexcept {
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) {
        --r;
    }
    while ((r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r;
}

IntervalSample sample_intervals(RngStream& rng, std::size_t series_length) {
    if (series_length < 1) {
        throw InvalidSampleSize("series length must be >= 1");
    }
    const std::size_t M = series_length;
    IntervalSample sample;
    sample.window_sizes = rand_samp_no_rep(rng, M, std::max<std::size_t>(1, isqrt(M)));
    for (std::size_t w : sample.window_sizes) {
        const std::size_t positions = M - w + 1;
        for (std::size_t t1 : rand_samp_no_rep(rng, positions, std::max<std::size_t>(1, isqrt(positions)))) {
            sample.intervals.push_back(Interval{t1, t1 + w - 1});
        }
    }
    return sample;
}

} // namespace tsf
