#pragma once

#include "tsf/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace tsf {

class InvalidSampleSize : public Error {
public:
    using Error::Error;
};

/// Deterministic pseudo-random stream.
///
/// Engine: std::mt19937_64 (its output sequence is fixed by the C++
/// standard). Integer and real draws are derived from raw engine words by
/// this class rather than by std::*_distribution, whose algorithms are
/// implementation-defined, so a seed reproduces the same draws with any
/// conforming standard library. Child streams are keyed with SplitMix64.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [0, n); n >= 1.
    std::uint64_t uniform_below(std::uint64_t n);
    /// Uniform real in [0, 1) with 53 random bits.
    double uniform01();
    /// Standard normal draw (Marsaglia polar method).
    double normal();

    /// Independent stream identified by `key`; does not advance this stream.
    [[nodiscard]] RngStream derive(std::uint64_t key) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// m distinct integers drawn uniformly from {1..n} without replacement, in
/// draw order. Throws InvalidSampleSize unless 1 <= m <= n.
[[nodiscard]] std::vector<std::size_t> rand_samp_no_rep(RngStream& rng, std::size_t n, std::size_t m);

/// floor(sqrt(n)) computed exactly on integers.
[[nodiscard]] std::size_t isqrt(std::size_t n) noexcept;

struct IntervalSample {
    /// Window sizes W in draw order.
    std::vector<std::size_t> window_sizes;
    /// (t1, t1 + w - 1) pairs grouped by window size, in draw order.
    std::vector<Interval> intervals;
};

/// Random interval sample for one tree node: floor(sqrt(M)) window sizes
/// (at least 1) drawn without replacement from {1..M}, and for each window w
/// floor(sqrt(M - w + 1)) distinct start positions (at least 1) from
/// {1..M - w + 1}. Yields Theta(M) intervals.
[[nodiscard]] IntervalSample sample_intervals(RngStream& rng, std::size_t series_length);

} // namespace tsf
