#pragma once

#include "tsf/forest.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace tsf {

class ModelFormatError : public Error {
public:
    using Error::Error;
};

/// Line-oriented text model format, version 1:
///
///     tsf-model 1
///     n_trees <n>
///     kappa <k>
///     max_depth <d|none>
///     min_node_size <s>
///     master_seed <u64>
///     criterion <entrance|entropy>
///     num_classes <C>
///     series_length <M>
///     class_labels <l_1> ... <l_C>
///     tree <index> nodes <count>
///     split <mean|stddev|slope> <t1> <t2> <tau> <gain> <left> <right>
///     leaf <label> <count_1> ... <count_C>
///     ...
///     end
///
/// Nodes are listed in preorder with node 0 the root. Reals use the
/// shortest representation that parses back to the same double, so
/// save -> load -> save is byte-identical.
void write_model(std::ostream& out, const Forest& forest);
[[nodiscard]] std::string model_to_string(const Forest& forest);
void save_model(const std::filesystem::path& path, const Forest& forest);

[[nodiscard]] Forest read_model(std::istream& in);
[[nodiscard]] Forest model_from_string(const std::string& text);
[[nodiscard]] Forest load_model(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
[[nodiscard]] std::string format_double(double value);

} // namespace tsf
