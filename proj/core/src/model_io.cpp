#include "tsf/model_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace tsf {

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(std::begin(buffer), std::end(buffer), value);
    return std::string(buffer, result.ptr);
}

void write_model(std::ostream& out, const Forest& forest) {
    const ForestConfig& config = forest.config();
    out << "tsf-model " << Forest::kFormatVersion << '\n';
    out << "n_trees " << config.n_trees << '\n';
    out << "kappa " << config.tree.kappa << '\n';
    out << "max_depth ";
    if (config.tree.max_depth) {
        out << *config.tree.max_depth << '\n';
    } else {
        out << "none\n";
    }
    out << "min_node_size " << config.tree.min_node_size << '\n';
    out << "master_seed " << config.master_seed << '\n';
    out << "criterion " << to_string(config.criterion) << '\n';
    out << "num_classes " << forest.num_classes() << '\n';
    out << "series_length " << forest.series_length() << '\n';
    out << "class_labels";
    for (long long label : forest.class_labels()) {
        out << ' ' << label;
    }
    out << '\n';
    for (std::size_t t = 0; t < forest.trees().size(); ++t) {
        const Tree& tree = forest.trees()[t];
        out << "tree " << t << " nodes " << tree.nodes().size() << '\n';
        for (const TreeNode& node : tree.nodes()) {
            if (const auto* split = std::get_if<SplitNode>(&node)) {
                out << "split " << to_string(split->kind) << ' ' << split->interval.t1 << ' ' << split->interval.t2
                    << ' ' << format_double(split->threshold) << ' ' << format_double(split->gain) << ' '
                    << split->left << ' ' << split->right << '\n';
            } else {
                const auto& leaf = std::get<LeafNode>(node);
                out << "leaf " << leaf.label;
                for (std::size_t count : leaf.class_counts) {
                    out << ' ' << count;
                }
                out << '\n';
            }
        }
    }
    out << "end\n";
}

std::string model_to_string(const Forest& forest) {
    std::ostringstream out;
    write_model(out, forest);
    return out.str();
}

void save_model(const std::filesystem::path& path, const Forest& forest) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open model file for writing: " + path.string());
    }
    write_model(out, forest);
    if (!out) {
        throw Error("failed writing model file: " + path.string());
    }
}

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::istringstream next(std::string_view expected_key) {
        std::string line;
        if (!std::getline(in_, line)) {
            fail("unexpected end of file, expected '" + std::string(expected_key) + "'");
        }
        ++line_no_;
        std::istringstream fields(line);
        std::string key;
        fields >> key;
        if (key != expected_key) {
            fail("expected '" + std::string(expected_key) + "', found '" + key + "'");
        }
        return fields;
    }

    std::string raw(std::string_view context) {
        std::string line;
        if (!std::getline(in_, line)) {
            fail("unexpected end of file " + std::string(context));
        }
        ++line_no_;
        return line;
    }

    template <class T>
    T read_value(std::istringstream& fields, std::string_view what) {
        std::string token;
        if (!(fields >> token)) {
            fail("missing " + std::string(what));
        }
        T value{};
        const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
        if (result.ec != std::errc{} || result.ptr != token.data() + token.size()) {
            fail("bad " + std::string(what) + " '" + token + "'");
        }
        return value;
    }

    void expect_end(std::istringstream& fields) {
        std::string extra;
        if (fields >> extra) {
            fail("unexpected trailing field '" + extra + "'");
        }
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ModelFormatError("model line " + std::to_string(line_no_) + ": " + message);
    }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

} // namespace

Forest read_model(std::istream& in) {
    LineReader reader(in);
    auto header = reader.next("tsf-model");
    const int version = reader.read_value<int>(header, "format version");
    if (version != Forest::kFormatVersion) {
        reader.fail("unsupported format version " + std::to_string(version));
    }

    ForestConfig config;
    auto line = reader.next("n_trees");
    config.n_trees = reader.read_value<std::size_t>(line, "n_trees");
    line = reader.next("kappa");
    config.tree.kappa = reader.read_value<std::size_t>(line, "kappa");
    line = reader.next("max_depth");
    {
        std::string token;
        line >> token;
        if (token != "none") {
            std::istringstream value(token);
            config.tree.max_depth = reader.read_value<std::size_t>(value, "max_depth");
        }
    }
    line = reader.next("min_node_size");
    config.tree.min_node_size = reader.read_value<std::size_t>(line, "min_node_size");
    line = reader.next("master_seed");
    config.master_seed = reader.read_value<std::uint64_t>(line, "master_seed");
    line = reader.next("criterion");
    {
        std::string token;
        line >> token;
        try {
            config.criterion = parse_split_criterion(token);
        } catch (const Error& e) {
            reader.fail(e.what());
        }
    }
    line = reader.next("num_classes");
    const auto num_classes = reader.read_value<std::size_t>(line, "num_classes");
    line = reader.next("series_length");
    const auto series_length = reader.read_value<std::size_t>(line, "series_length");
    line = reader.next("class_labels");
    std::vector<long long> class_labels;
    for (std::size_t c = 0; c < num_classes; ++c) {
        class_labels.push_back(reader.read_value<long long>(line, "class label"));
    }
    reader.expect_end(line);

    std::vector<Tree> trees;
    trees.reserve(config.n_trees);
    for (std::size_t t = 0; t < config.n_trees; ++t) {
        line = reader.next("tree");
        if (reader.read_value<std::size_t>(line, "tree index") != t) {
            reader.fail("trees out of order");
        }
        std::string nodes_key;
        line >> nodes_key;
        if (nodes_key != "nodes") {
            reader.fail("expected 'nodes'");
        }
        const auto count = reader.read_value<std::size_t>(line, "node count");
        std::vector<TreeNode> nodes;
        nodes.reserve(count);
        for (std::size_t n = 0; n < count; ++n) {
            std::istringstream fields(reader.raw("inside tree " + std::to_string(t)));
            std::string key;
            fields >> key;
            if (key == "split") {
                SplitNode split;
                std::string kind;
                fields >> kind;
                try {
                    split.kind = parse_feature_kind(kind);
                } catch (const Error& e) {
                    reader.fail(e.what());
                }
                split.interval.t1 = reader.read_value<std::size_t>(fields, "t1");
                split.interval.t2 = reader.read_value<std::size_t>(fields, "t2");
                split.threshold = reader.read_value<double>(fields, "threshold");
                split.gain = reader.read_value<double>(fields, "gain");
                split.left = reader.read_value<std::uint32_t>(fields, "left child");
                split.right = reader.read_value<std::uint32_t>(fields, "right child");
                reader.expect_end(fields);
                nodes.emplace_back(split);
            } else if (key == "leaf") {
                LeafNode leaf;
                leaf.label = reader.read_value<Label>(fields, "leaf label");
                for (std::size_t c = 0; c < num_classes; ++c) {
                    leaf.class_counts.push_back(reader.read_value<std::size_t>(fields, "class count"));
                }
                reader.expect_end(fields);
                nodes.emplace_back(std::move(leaf));
            } else {
                reader.fail("expected 'split' or 'leaf', found '" + key + "'");
            }
        }
        try {
            trees.emplace_back(std::move(nodes), series_length, num_classes);
        } catch (const Error& e) {
            reader.fail(std::string("tree ") + std::to_string(t) + ": " + e.what());
        }
    }
    line = reader.next("end");
    try {
        return Forest(std::move(trees), config, num_classes, series_length, std::move(class_labels));
    } catch (const Error& e) {
        reader.fail(e.what());
    }
}

Forest model_from_string(const std::string& text) {
    std::istringstream in(text);
    return read_model(in);
}

Forest load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open model file: " + path.string());
    }
    return read_model(in);
}

} // namespace tsf
