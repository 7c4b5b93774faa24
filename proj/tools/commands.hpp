#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace tsf::cli {

struct TrainOptions {
    std::filesystem::path train_path;
    std::filesystem::path model_out;
    std::size_t n_trees = 500;
    std::size_t kappa = 20;
    std::uint64_t seed = 0;
    std::string criterion = "entrance";
    std::size_t threads = 0;
};

struct EvaluateOptions {
    std::filesystem::path model_in;
    std::filesystem::path test_path;
    std::filesystem::path report_out;
    std::size_t threads = 0;
};

struct PredictOptions {
    std::filesystem::path model_in;
    std::filesystem::path test_path;
    std::filesystem::path predictions_out;
};

struct ImportanceOptions {
    std::filesystem::path model_in;
    std::filesystem::path csv_out;
    bool normalize = false;
};

struct BenchmarkOptions {
    std::filesystem::path data_dir;
    std::vector<std::string> methods{"tsf", "tsf-entropy", "nn-euclidean", "dtw-nowin", "dtw-best"};
    std::vector<std::uint64_t> seeds{0};
    std::filesystem::path report_out;
    std::size_t n_trees = 500;
    std::size_t kappa = 20;
    std::size_t threads = 0;
};

struct SynthOptions {
    std::string kind = "shifted";
    std::size_t length = 1000;
    std::size_t per_class = 100;
    std::uint64_t seed = 0;
    std::filesystem::path out_path;
};

/// One row of the long-format report.
struct RunReport {
    std::string dataset;
    std::string method;
    double error = 0.0;
    double wall_time_s = 0.0;
    std::uint64_t seed = 0;
    std::string config;
};

inline constexpr const char* kReportHeader = "dataset,method,error,wall_time_s,seed,config";

[[nodiscard]] std::string format_report(const RunReport& report);

/// Appends rows to `path`, writing the header first if the file is new or empty.
void append_reports(const std::filesystem::path& path, const std::vector<RunReport>& reports);

/// "GunPoint_TRAIN.txt" -> "GunPoint".
[[nodiscard]] std::string dataset_name(const std::filesystem::path& path);

/// Average rank of each method over the datasets where it ran; the lowest
/// mean error ranks 1 and ties share the mean of their ranks.
struct RankSummary {
    std::vector<std::string> methods;
    std::vector<double> average_rank;
    std::size_t datasets = 0;
};
[[nodiscard]] RankSummary average_ranks(const std::vector<RunReport>& reports);

int cmd_train(const TrainOptions& options, std::ostream& out);
int cmd_evaluate(const EvaluateOptions& options, std::ostream& out);
int cmd_predict(const PredictOptions& options, std::ostream& out);
int cmd_importance(const ImportanceOptions& options, std::ostream& out);
int cmd_benchmark(const BenchmarkOptions& options, std::ostream& out, std::ostream& log);
int cmd_synth(const SynthOptions& options, std::ostream& out);

/// Parses argv and dispatches. Failures print one line to `err` and return
/// nonzero.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace tsf::cli
