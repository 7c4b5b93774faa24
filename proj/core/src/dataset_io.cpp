#include "tsf/dataset_io.hpp"

#include "tsf/interval_sampling.hpp"
#include "tsf/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace tsf {

ParseError::ParseError(const std::string& message, std::size_t row, std::size_t column)
    : Error("line " + std::to_string(row) + ", field " + std::to_string(column) + ": " + message), row_(row),
      column_(column) {}

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line, bool comma) {
    std::vector<std::string_view> fields;
    if (comma) {
        std::size_t start = 0;
        while (true) {
            const std::size_t end = line.find(',', start);
            fields.push_back(trim(line.substr(start, end == std::string_view::npos ? end : end - start)));
            if (end == std::string_view::npos) {
                break;
            }
            start = end + 1;
        }
    } else {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && is_space(line[i])) {
                ++i;
            }
            const std::size_t start = i;
            while (i < line.size() && !is_space(line[i])) {
                ++i;
            }
            if (i > start) {
                fields.push_back(line.substr(start, i - start));
            }
        }
    }
    return fields;
}

double parse_real(std::string_view field, std::size_t row, std::size_t column, const std::string& source) {
    // from_chars rejects a leading '+', which some writers emit.
    if (!field.empty() && field.front() == '+') {
        field.remove_prefix(1);
    }
    double value = 0.0;
    const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || result.ec != std::errc{} || result.ptr != field.data() + field.size()) {
        throw ParseError(source + ": cannot parse '" + std::string(field) + "' as a number", row, column);
    }
    if (!std::isfinite(value)) {
        throw ParseError(source + ": non-finite value '" + std::string(field) + "'", row, column);
    }
    return value;
}

} // namespace

Dataset parse_ucr(std::istream& in, const std::string& source_name) {
    std::vector<long long> raw_labels;
    std::vector<double> values;
    std::size_t length = 0;
    std::optional<bool> comma;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const std::string_view text = trim(line);
        if (text.empty() || text.front() == '#') {
            continue;
        }
        if (!comma) {
            comma = text.find(',') != std::string_view::npos;
        }
        const auto fields = split_fields(text, *comma);
        if (fields.size() < 2) {
            throw ParseError(source_name + ": row needs a label and at least one value", row, fields.size());
        }
        if (length == 0) {
            length = fields.size() - 1;
        } else if (fields.size() - 1 != length) {
            throw RaggedRows(source_name + ": line " + std::to_string(row) + " has " +
                             std::to_string(fields.size() - 1) + " values, expected " + std::to_string(length));
        }
        const double label = parse_real(fields[0], row, 1, source_name);
        if (label != std::floor(label) || std::abs(label) > 1e15) {
            throw ParseError(source_name + ": class label '" + std::string(fields[0]) + "' is not an integer", row, 1);
        }
        raw_labels.push_back(static_cast<long long>(label));
        for (std::size_t f = 1; f < fields.size(); ++f) {
            values.push_back(parse_real(fields[f], row, f + 1, source_name));
        }
    }
    if (raw_labels.empty()) {
        throw EmptyFile(source_name + ": no data rows");
    }

    std::vector<long long> distinct = raw_labels;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<Label> labels;
    labels.reserve(raw_labels.size());
    for (long long raw : raw_labels) {
        labels.push_back(static_cast<Label>(std::lower_bound(distinct.begin(), distinct.end(), raw) - distinct.begin()) +
                         1);
    }
    const std::size_t num_classes = distinct.size();
    return Dataset(std::move(values), length, std::move(labels), num_classes, std::move(distinct));
}

Dataset load_ucr(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open dataset file: " + path.string());
    }
    return parse_ucr(in, path.string());
}

void write_ucr(std::ostream& out, const Dataset& data, const std::string& manifest) {
    if (!manifest.empty()) {
        out << "# " << manifest << '\n';
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        out << data.original_labels()[static_cast<std::size_t>(data.label(i) - 1)];
        for (double v : data.series(i)) {
            out << ',' << format_double(v);
        }
        out << '\n';
    }
}

void save_ucr(const std::filesystem::path& path, const Dataset& data, const std::string& manifest) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open dataset file for writing: " + path.string());
    }
    write_ucr(out, data, manifest);
    if (!out) {
        throw Error("failed writing dataset file: " + path.string());
    }
}

Dataset remap_labels(const Dataset& data, const std::vector<long long>& class_labels) {
    std::map<long long, Label> index;
    for (std::size_t c = 0; c < class_labels.size(); ++c) {
        index.emplace(class_labels[c], static_cast<Label>(c + 1));
    }
    std::vector<Label> labels;
    labels.reserve(data.size());
    for (Label y : data.labels()) {
        const long long source = data.original_labels()[static_cast<std::size_t>(y - 1)];
        const auto it = index.find(source);
        if (it == index.end()) {
            throw InvalidLabel("class label " + std::to_string(source) + " is unknown to the model");
        }
        labels.push_back(it->second);
    }
    return Dataset(data.values(), data.series_length(), std::move(labels), class_labels.size(), class_labels);
}

namespace {

Dataset generate(const SyntheticSpec& spec, bool shifted) {
    if (spec.length < 1 || spec.per_class < 1) {
        throw Error("synthetic data needs length >= 1 and per_class >= 1");
    }
    if (shifted && (!spec.mean_interval.valid_for(spec.length) || !spec.std_interval.valid_for(spec.length))) {
        throw InvalidInterval("synthetic override interval does not fit series length " +
                              std::to_string(spec.length));
    }
    const std::size_t n = 2 * spec.per_class;
    const RngStream master(spec.seed);
    std::vector<double> values(n * spec.length);
    std::vector<Label> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Label label = i < spec.per_class ? 1 : 2;
        labels[i] = label;
        RngStream rng = master.derive(i);
        double* row = values.data() + i * spec.length;
        for (std::size_t t = 1; t <= spec.length; ++t) {
            double v = rng.normal();
            if (shifted && label == 2) {
                if (spec.std_interval.contains(t)) {
                    v *= spec.std_factor;
                }
                if (spec.mean_interval.contains(t)) {
                    v += spec.mean_shift;
                }
            }
            row[t - 1] = v;
        }
    }
    return Dataset(std::move(values), spec.length, std::move(labels), 2);
}

} // namespace

Dataset generate_noise_dataset(const SyntheticSpec& spec) {
    return generate(spec, false);
}

Dataset generate_shifted_dataset(const SyntheticSpec& spec) {
    return generate(spec, true);
}

std::string synthetic_manifest(std::string_view kind, const SyntheticSpec& spec) {
    std::ostringstream out;
    out << "tsf-synth kind=" << kind << " M=" << spec.length << " per_class=" << spec.per_class
        << " seed=" << spec.seed;
    if (kind == "shifted") {
        out << " mean_interval=" << spec.mean_interval.t1 << '-' << spec.mean_interval.t2
            << " mean_shift=" << format_double(spec.mean_shift) << " std_interval=" << spec.std_interval.t1 << '-'
            << spec.std_interval.t2 << " std_factor=" << format_double(spec.std_factor);
    }
    return out.str();
}

} // namespace tsf
