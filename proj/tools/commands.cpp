#include "commands.hpp"

#include "tsf/tsf.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace tsf::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    const double s = std::chrono::duration<double>(Clock::now() - start).count();
    return std::max(s, 1e-9);
}

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode = std::ios::trunc) {
    std::ofstream out(path, std::ios::out | std::ios::binary | mode);
    if (!out) {
        throw Error("cannot open for writing: " + path.string());
    }
    return out;
}

std::string method_name(SplitCriterion criterion) {
    return criterion == SplitCriterion::Entrance ? "tsf" : "tsf-entropy";
}

std::string forest_config_echo(const ForestConfig& config) {
    std::ostringstream s;
    s << "n_trees=" << config.n_trees << ";kappa=" << config.tree.kappa
      << ";criterion=" << to_string(config.criterion);
    return s.str();
}

ForestConfig make_forest_config(std::size_t n_trees, std::size_t kappa, std::uint64_t seed, SplitCriterion criterion) {
    ForestConfig config;
    config.n_trees = n_trees;
    config.tree.kappa = kappa;
    config.master_seed = seed;
    config.criterion = criterion;
    config.validate();
    return config;
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const LengthMismatch*>(&e)) return "LengthMismatch";
    if (dynamic_cast<const InvalidLabel*>(&e)) return "InvalidLabel";
    if (dynamic_cast<const NonFiniteValue*>(&e)) return "NonFiniteValue";
    if (dynamic_cast<const InvalidInterval*>(&e)) return "InvalidInterval";
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const RaggedRows*>(&e)) return "RaggedRows";
    if (dynamic_cast<const EmptyFile*>(&e)) return "EmptyFile";
    if (dynamic_cast<const ModelFormatError*>(&e)) return "ModelFormatError";
    return "error";
}

std::string one_line(std::string text) {
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

Forest load_checked_model(const std::filesystem::path& path) {
    return load_model(path);
}

Dataset load_test_for(const Forest& forest, const std::filesystem::path& path) {
    Dataset raw = load_ucr(path);
    if (raw.series_length() != forest.series_length()) {
        throw LengthMismatch(path.string() + " has series length " + std::to_string(raw.series_length()) +
                             " but the model expects " + std::to_string(forest.series_length()));
    }
    return remap_labels(raw, forest.class_labels());
}

struct DatasetFiles {
    std::string name;
    std::filesystem::path train;
    std::filesystem::path test;
};

std::optional<std::filesystem::path> find_split(const std::filesystem::path& dir, const std::string& name,
                                                const std::string& split) {
    for (const char* ext : {".txt", ".tsv", ".csv", ""}) {
        auto candidate = dir / (name + "_" + split + ext);
        if (std::filesystem::is_regular_file(candidate)) {
            return candidate;
        }
    }
    return std::nullopt;
}

std::vector<DatasetFiles> discover_datasets(const std::filesystem::path& root, std::ostream& log) {
    if (!std::filesystem::is_directory(root)) {
        throw Error("data directory not found: " + root.string());
    }
    std::map<std::string, DatasetFiles> found;
    for (const auto& entry : std::filesystem::directory_iterator(root)) {
        if (entry.is_directory()) {
            const std::string name = entry.path().filename().string();
            auto train = find_split(entry.path(), name, "TRAIN");
            auto test = find_split(entry.path(), name, "TEST");
            if (train && test) {
                found[name] = {name, *train, *test};
            } else {
                log << "warning: skipping " << entry.path().string() << ": no " << name << "_TRAIN/_TEST pair\n";
            }
        } else if (entry.is_regular_file()) {
            const std::string stem = entry.path().stem().string();
            constexpr std::string_view suffix = "_TRAIN";
            if (stem.size() > suffix.size() && stem.ends_with(suffix)) {
                const std::string name = stem.substr(0, stem.size() - suffix.size());
                if (auto test = find_split(root, name, "TEST"); test && !found.contains(name)) {
                    found[name] = {name, entry.path(), *test};
                }
            }
        }
    }
    std::vector<DatasetFiles> out;
    for (auto& [name, files] : found) {
        out.push_back(files);
    }
    return out;
}

const std::set<std::string>& known_methods() {
    static const std::set<std::string> methods{"tsf", "tsf-entropy", "nn-euclidean", "dtw-nowin", "dtw-best"};
    return methods;
}

} // namespace

std::string format_report(const RunReport& report) {
    std::ostringstream s;
    s << report.dataset << ',' << report.method << ',' << format_double(report.error) << ',' << std::fixed
      << std::setprecision(6) << report.wall_time_s << ',' << report.seed << ',' << report.config;
    return s.str();
}

void append_reports(const std::filesystem::path& path, const std::vector<RunReport>& reports) {
    std::error_code ec;
    const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
    std::ofstream out = open_output(path, std::ios::app);
    if (fresh) {
        out << kReportHeader << '\n';
    }
    for (const auto& report : reports) {
        out << format_report(report) << '\n';
    }
    if (!out) {
        throw Error("failed writing report: " + path.string());
    }
}

std::string dataset_name(const std::filesystem::path& path) {
    std::string stem = path.stem().string();
    for (std::string_view suffix : {"_TRAIN", "_TEST"}) {
        if (stem.size() > suffix.size() && stem.ends_with(suffix)) {
            stem.resize(stem.size() - suffix.size());
            break;
        }
    }
    return stem;
}

RankSummary average_ranks(const std::vector<RunReport>& reports) {
    // dataset -> method -> (sum, count)
    std::map<std::string, std::map<std::string, std::pair<double, std::size_t>>> table;
    std::vector<std::string> methods;
    for (const auto& r : reports) {
        auto& cell = table[r.dataset][r.method];
        cell.first += r.error;
        ++cell.second;
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
            methods.push_back(r.method);
        }
    }
    std::map<std::string, std::pair<double, std::size_t>> rank_sum;
    for (const auto& [dataset, row] : table) {
        std::vector<std::pair<double, std::string>> errors;
        for (const auto& [method, cell] : row) {
            errors.emplace_back(cell.first / static_cast<double>(cell.second), method);
        }
        std::sort(errors.begin(), errors.end());
        for (std::size_t i = 0; i < errors.size();) {
            std::size_t j = i;
            while (j < errors.size() && errors[j].first == errors[i].first) {
                ++j;
            }
            const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
            for (std::size_t k = i; k < j; ++k) {
                auto& acc = rank_sum[errors[k].second];
                acc.first += rank;
                ++acc.second;
            }
            i = j;
        }
    }
    RankSummary summary;
    summary.datasets = table.size();
    for (const auto& method : methods) {
        const auto& acc = rank_sum[method];
        summary.methods.push_back(method);
        summary.average_rank.push_back(acc.second ? acc.first / static_cast<double>(acc.second) : 0.0);
    }
    return summary;
}

int cmd_train(const TrainOptions& options, std::ostream& out) {
    const ForestConfig config =
        make_forest_config(options.n_trees, options.kappa, options.seed, parse_split_criterion(options.criterion));
    const Dataset train = load_ucr(options.train_path);
    const auto start = Clock::now();
    const Forest forest = fit(train, config, options.threads);
    const double elapsed = seconds_since(start);
    save_model(options.model_out, forest);

    RunReport report{dataset_name(options.train_path), method_name(config.criterion),
                     evaluate(forest, train, options.threads), elapsed, config.master_seed,
                     forest_config_echo(config) + ";split=train"};
    out << format_report(report) << '\n';
    return 0;
}

int cmd_evaluate(const EvaluateOptions& options, std::ostream& out) {
    const Forest forest = load_checked_model(options.model_in);
    const Dataset test = load_test_for(forest, options.test_path);
    const auto start = Clock::now();
    const double error = evaluate(forest, test, options.threads);
    RunReport report{dataset_name(options.test_path), method_name(forest.config().criterion), error,
                     seconds_since(start), forest.config().master_seed,
                     forest_config_echo(forest.config()) + ";split=test"};
    if (!options.report_out.empty()) {
        append_reports(options.report_out, {report});
    }
    out << format_report(report) << '\n';
    return 0;
}

int cmd_predict(const PredictOptions& options, std::ostream& out) {
    const Forest forest = load_checked_model(options.model_in);
    const Dataset raw = load_ucr(options.test_path);
    if (raw.series_length() != forest.series_length()) {
        throw LengthMismatch(options.test_path.string() + " has series length " +
                             std::to_string(raw.series_length()) + " but the model expects " +
                             std::to_string(forest.series_length()));
    }
    std::ofstream file;
    std::ostream* sink = &out;
    if (!options.predictions_out.empty()) {
        file = open_output(options.predictions_out);
        sink = &file;
    }
    *sink << "row,predicted\n";
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const VoteResult vote = predict(forest, raw.series(i));
        *sink << i + 1 << ',' << forest.class_labels()[static_cast<std::size_t>(vote.predicted - 1)] << '\n';
    }
    return 0;
}

int cmd_importance(const ImportanceOptions& options, std::ostream& out) {
    const Forest forest = load_checked_model(options.model_in);
    const ImportanceCurves curves = importance_curves(forest);
    std::ofstream file = open_output(options.csv_out);
    write_importance_csv(file, curves, options.normalize);
    if (!file) {
        throw Error("failed writing " + options.csv_out.string());
    }
    out << "wrote " << curves.series_length << " rows to " << options.csv_out.string() << '\n';
    return 0;
}

int cmd_benchmark(const BenchmarkOptions& options, std::ostream& out, std::ostream& log) {
    for (const auto& method : options.methods) {
        if (!known_methods().contains(method)) {
            throw Error("unknown method '" + method + "' (expected tsf, tsf-entropy, nn-euclidean, dtw-nowin, dtw-best)");
        }
    }
    if (options.seeds.empty()) {
        throw Error("--seeds must list at least one seed");
    }
    make_forest_config(options.n_trees, options.kappa, 0, SplitCriterion::Entrance);

    std::vector<RunReport> all;
    std::size_t ran = 0;
    for (const auto& files : discover_datasets(options.data_dir, log)) {
        std::optional<Dataset> train;
        std::optional<Dataset> test;
        try {
            train.emplace(load_ucr(files.train));
            test.emplace(remap_labels(load_ucr(files.test), train->original_labels()));
            if (test->series_length() != train->series_length()) {
                throw LengthMismatch("TRAIN and TEST series lengths differ");
            }
        } catch (const std::exception& e) {
            log << "warning: skipping " << files.name << ": " << one_line(e.what()) << '\n';
            continue;
        }
        std::vector<RunReport> rows;
        for (const auto& method : options.methods) {
            if (method == "tsf" || method == "tsf-entropy") {
                const auto criterion = method == "tsf" ? SplitCriterion::Entrance : SplitCriterion::EntropyOnly;
                for (std::uint64_t seed : options.seeds) {
                    const ForestConfig config = make_forest_config(options.n_trees, options.kappa, seed, criterion);
                    const auto start = Clock::now();
                    const Forest forest = fit(*train, config, options.threads);
                    const double error = evaluate(forest, *test, options.threads);
                    rows.push_back({files.name, method, error, seconds_since(start), seed, forest_config_echo(config)});
                }
            } else if (method == "nn-euclidean" || method == "dtw-nowin") {
                const Metric metric = method == "nn-euclidean" ? Metric{EuclideanMetric{}}
                                                               : Metric{DtwMetric{WarpingWindow::unconstrained()}};
                const auto start = Clock::now();
                const double error = nn_error(*train, *test, metric, options.threads);
                rows.push_back({files.name, method, error, seconds_since(start), 0,
                                method == "nn-euclidean" ? "metric=euclidean" : "metric=dtw;window=100"});
            } else {
                const auto start = Clock::now();
                const WarpingWindow window = best_warping_window(*train, options.threads);
                const double error = nn_error(*train, *test, DtwMetric{window}, options.threads);
                rows.push_back({files.name, method, error, seconds_since(start), 0,
                                "metric=dtw;window=" + std::to_string(window.percent)});
            }
            for (std::size_t i = rows.size() - (method.starts_with("tsf") ? options.seeds.size() : 1); i < rows.size();
                 ++i) {
                log << format_report(rows[i]) << '\n';
            }
        }
        if (!options.report_out.empty()) {
            append_reports(options.report_out, rows);
        }
        all.insert(all.end(), rows.begin(), rows.end());
        ++ran;
    }
    if (ran == 0) {
        throw Error("no datasets ran from " + options.data_dir.string());
    }

    const RankSummary ranks = average_ranks(all);
    out << "average rank over " << ranks.datasets << " dataset(s)\n";
    for (std::size_t i = 0; i < ranks.methods.size(); ++i) {
        out << "  " << std::left << std::setw(14) << ranks.methods[i] << std::fixed << std::setprecision(3)
            << ranks.average_rank[i] << '\n';
    }
    return 0;
}

int cmd_synth(const SynthOptions& options, std::ostream& out) {
    if (options.kind != "noise" && options.kind != "shifted") {
        throw Error("--kind must be noise or shifted, got '" + options.kind + "'");
    }
    SyntheticSpec spec;
    spec.length = options.length;
    spec.per_class = options.per_class;
    spec.seed = options.seed;
    const Dataset data = options.kind == "noise" ? generate_noise_dataset(spec) : generate_shifted_dataset(spec);
    save_ucr(options.out_path, data, synthetic_manifest(options.kind, spec));
    out << "wrote " << data.size() << " series of length " << data.series_length() << " to "
        << options.out_path.string() << '\n';
    return 0;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Time series forest: interval-feature trees, importance curves and 1-NN baselines"};
    app.name("tsf");
    app.require_subcommand(1);

    TrainOptions train;
    auto* train_cmd = app.add_subcommand("train", "fit a forest and write a model file");
    train_cmd->add_option("--train-path", train.train_path, "UCR-format training file")->required();
    train_cmd->add_option("--model-out", train.model_out, "model file to write")->required();
    train_cmd->add_option("--n-trees", train.n_trees, "number of trees")->capture_default_str();
    train_cmd->add_option("--kappa", train.kappa, "candidate thresholds per interval feature")->capture_default_str();
    train_cmd->add_option("--seed", train.seed, "master seed")->capture_default_str();
    train_cmd->add_option("--criterion", train.criterion, "entrance or entropy")
        ->check(CLI::IsMember({"entrance", "entropy"}))
        ->capture_default_str();
    train_cmd->add_option("--threads", train.threads, "worker threads (0 = all cores)")->capture_default_str();

    EvaluateOptions evaluate_opts;
    auto* eval_cmd = app.add_subcommand("evaluate", "error rate of a model on a labeled file");
    eval_cmd->add_option("--model-in", evaluate_opts.model_in, "model file")->required();
    eval_cmd->add_option("--test-path", evaluate_opts.test_path, "UCR-format test file")->required();
    eval_cmd->add_option("--report-out", evaluate_opts.report_out, "CSV report to append to");
    eval_cmd->add_option("--threads", evaluate_opts.threads, "worker threads (0 = all cores)");

    PredictOptions predict_opts;
    auto* predict_cmd = app.add_subcommand("predict", "predicted label per series");
    predict_cmd->add_option("--model-in", predict_opts.model_in, "model file")->required();
    predict_cmd->add_option("--test-path", predict_opts.test_path, "UCR-format file")->required();
    predict_cmd->add_option("--predictions-out", predict_opts.predictions_out, "CSV output (default stdout)");

    ImportanceOptions importance_opts;
    auto* imp_cmd = app.add_subcommand("importance", "temporal importance curves as CSV");
    imp_cmd->add_option("--model-in", importance_opts.model_in, "model file")->required();
    imp_cmd->add_option("--csv-out", importance_opts.csv_out, "CSV to write")->required();
    imp_cmd->add_flag("--normalize", importance_opts.normalize, "also emit curves divided by t(M-t+1)");

    BenchmarkOptions bench;
    auto* bench_cmd = app.add_subcommand("benchmark", "run methods over TRAIN/TEST pairs in a directory");
    bench_cmd->add_option("--data-dir", bench.data_dir, "directory of <Name>/<Name>_TRAIN.txt pairs")->required();
    bench_cmd->add_option("--methods", bench.methods, "tsf, tsf-entropy, nn-euclidean, dtw-nowin, dtw-best")
        ->delimiter(',')
        ->capture_default_str();
    bench_cmd->add_option("--seeds", bench.seeds, "seeds for the forest methods")->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--report-out", bench.report_out, "long-format CSV to append to")->required();
    bench_cmd->add_option("--n-trees", bench.n_trees, "trees per forest")->capture_default_str();
    bench_cmd->add_option("--kappa", bench.kappa, "candidate thresholds")->capture_default_str();
    bench_cmd->add_option("--threads", bench.threads, "worker threads (0 = all cores)")->capture_default_str();

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "write a simulated two-class dataset");
    synth_cmd->add_option("--kind", synth.kind, "noise or shifted")
        ->check(CLI::IsMember({"noise", "shifted"}))
        ->capture_default_str();
    synth_cmd->add_option("--M", synth.length, "series length")->capture_default_str();
    synth_cmd->add_option("--per-class", synth.per_class, "series per class")->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "seed")->capture_default_str();
    synth_cmd->add_option("--out-path", synth.out_path, "UCR-format file to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (*train_cmd) return cmd_train(train, out);
        if (*eval_cmd) return cmd_evaluate(evaluate_opts, out);
        if (*predict_cmd) return cmd_predict(predict_opts, out);
        if (*imp_cmd) return cmd_importance(importance_opts, out);
        if (*bench_cmd) return cmd_benchmark(bench, out, err);
        if (*synth_cmd) return cmd_synth(synth, out);
    } catch (const std::exception& e) {
        err << "tsf " << command << ": " << error_kind(e) << ": " << one_line(e.what()) << '\n';
        return 1;
    }
    return 2;
}

} // namespace tsf::cli
