#pragma once

#include "tsf/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace tsf {

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t row, std::size_t column);

    /// 1-based physical line and field.
    [[nodiscard]] std::size_t row() const noexcept { return row_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class RaggedRows : public Error {
public:
    using Error::Error;
};

class EmptyFile : public Error {
public:
    using Error::Error;
};

/// Reads UCR-style text: one series per line, the class label first, then
/// M values. Fields are separated by commas or by whitespace (detected from
/// the first data line). Blank lines and lines starting with '#' are
/// skipped. Labels may be written as reals ("1.0000000e+00") but must be
/// integral; they are remapped to 1..C in ascending numeric order and the
/// source labels kept in Dataset::original_labels().
[[nodiscard]] Dataset parse_ucr(std::istream& in, const std::string& source_name = "<stream>");
[[nodiscard]] Dataset load_ucr(const std::filesystem::path& path);

/// Writes comma-separated rows with the source labels and shortest
/// round-trip values. `manifest`, when non-empty, is written first as a
/// '#' comment line.
void write_ucr(std::ostream& out, const Dataset& data, const std::string& manifest = {});
void save_ucr(const std::filesystem::path& path, const Dataset& data, const std::string& manifest = {});

/// Re-expresses `data` in the class numbering of `class_labels` (source
/// label of class c at index c - 1), e.g. to score a test file against a
/// model trained on a file whose label set differs. Throws InvalidLabel for a
/// source label the map lacks.
[[nodiscard]] Dataset remap_labels(const Dataset& data, const std::vector<long long>& class_labels);

/// Parameters of the two simulated two-class datasets. The magnitudes
/// (shift 2, factor 3) and per-class count are artifact defaults.
struct SyntheticSpec {
    std::size_t length = 1000;
    std::size_t per_class = 100;
    std::uint64_t seed = 0;
    Interval mean_interval{201, 250};
    double mean_shift = 2.0;
    Interval std_interval{501, 550};
    double std_factor = 3.0;
};

/// Both classes i.i.d. standard normal at every time point. Rows 0..P-1 are
/// class 1, rows P..2P-1 class 2; row i draws from RngStream(seed).derive(i).
[[nodiscard]] Dataset generate_noise_dataset(const SyntheticSpec& spec);

/// Class 1 standard normal; class 2 standard normal plus `mean_shift` on
/// mean_interval and scaled by `std_factor` on std_interval.
[[nodiscard]] Dataset generate_shifted_dataset(const SyntheticSpec& spec);

/// One-line description of a synthetic dataset, e.g.
/// "tsf-synth kind=shifted M=1000 per_class=100 seed=7 ...".
[[nodiscard]] std::string synthetic_manifest(std::string_view kind, const SyntheticSpec& spec);

} // namespace tsf
