#pragma once

#include "tsf/types.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fixture {

inline tsf::Dataset make_dataset(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels,
                                 std::size_t num_classes = 0) {
    std::vector<double> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    std::size_t c = num_classes;
    for (int y : labels) c = std::max<std::size_t>(c, static_cast<std::size_t>(y));
    return tsf::Dataset(std::move(flat), rows.front().size(), labels, c);
}

inline std::vector<std::vector<double>> rows_of(const tsf::Dataset& d) {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < d.size(); ++i) out.emplace_back(d.series(i).begin(), d.series(i).end());
    return out;
}

// Two classes separated by the sign of the full-series mean.
inline tsf::Dataset separable_by_mean(std::uint64_t seed, std::size_t n, std::size_t m, double shift = 3.0) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> noise(0.0, 0.5);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (std::size_t i = 0; i < n; ++i) {
        const int y = i % 2 == 0 ? 1 : 2;
        std::vector<double> r(m);
        for (auto& x : r) x = noise(gen) + (y == 1 ? -shift : shift);
        rows.push_back(r);
        labels.push_back(y);
    }
    return make_dataset(rows, labels, 2);
}

inline tsf::Dataset random_dataset(std::uint64_t seed, std::size_t n, std::size_t m, std::size_t classes) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (std::size_t i = 0; i < n; ++i) {
        const int y = static_cast<int>(i % classes) + 1;
        std::vector<double> r(m);
        for (std::size_t t = 0; t < m; ++t) r[t] = noise(gen) + (t >= m / 3 && t < m / 2 ? 0.8 * y : 0.0);
        rows.push_back(r);
        labels.push_back(y);
    }
    return make_dataset(rows, labels, classes);
}

class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("tsf_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline std::filesystem::path data_dir() {
#ifdef TSF_TEST_DATA_DIR
    if (const char* env = std::getenv("TSF_DATA_DIR")) return env;
    return TSF_TEST_DATA_DIR;
#else
    const char* env = std::getenv("TSF_DATA_DIR");
    return env ? env : "data/ucr";
#endif
}

} // namespace fixture
