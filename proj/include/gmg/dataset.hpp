#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmg/graph.hpp"

namespace gmg {

/**
 * Which GXL attributes feed a vertex or edge attribute.
 *
 *   auto          first int/string attribute as a label, else all float
 *                 attributes as a vector, else unlabeled
 *   none          unlabeled (label 1 everywhere)
 *   label:NAME    integer or string attribute NAME as a label
 *   vector:A,B,.. numeric attributes A, B, ... as a real vector
 *
 * `auto` is resolved on the first node (or edge) of a load and then applies
 * to every later element of the same load.
 */
struct AttributeHint {
    enum class Kind { Auto, None, Label, Vector };
    Kind kind = Kind::Auto;
    std::vector<std::string> names;

    // Throws std::invalid_argument on an unknown form.
    static AttributeHint parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const AttributeHint&, const AttributeHint&) = default;
};

struct ModeHints {
    AttributeHint vertex;
    AttributeHint edge;
    friend bool operator==(const ModeHints&, const ModeHints&) = default;
};

/// String label to integer, numbered 1, 2, ... in first-occurrence order.
class LabelDictionary {
public:
    Label intern(const std::string& text);
    std::size_t size() const { return ids_.size(); }
    std::optional<Label> find(const std::string& text) const;

private:
    std::map<std::string, Label> ids_;
};

// State shared by all graphs of one load so that labels and modes agree across files.
struct ParseContext {
    ModeHints hints;
    LabelDictionary vertex_labels;
    LabelDictionary edge_labels;
};

// Throws DataError on malformed XML, a missing attribute, a dangling endpoint or a duplicate edge.
AttributedGraph parse_gxl(std::string_view text, ParseContext& context, std::string fallback_id = {});

enum class EdgeMode { Labeled, Unlabeled };

struct DatasetEntry {
    std::string graph_id;
    std::string class_label;
    AttributedGraph graph;
};

struct DatasetDescriptor {
    std::string name;
    AttributeKind vertex_kind = AttributeKind::Label;
    std::size_t vector_dim = 0;
    EdgeMode edge_mode = EdgeMode::Labeled;
    std::vector<DatasetEntry> graphs;

    // Distinct class labels in first-occurrence order.
    std::vector<std::string> classes() const;
    std::vector<AttributedGraph> graphs_of(const std::string& class_label) const;
    std::vector<AttributedGraph> all_graphs() const;
};

/**
 * Parses a CXL-style index: every element carrying both `file` and `class`
 * attributes names one GXL file relative to `base`. Throws DataError on an
 * empty index, a missing file (naming it), or a parse failure (prefixed
 * with the file name).
 */
DatasetDescriptor parse_collection(std::string_view index_text, const std::filesystem::path& base,
                                   const ModeHints& hints = {}, std::string name = {});

DatasetDescriptor load_collection(const std::filesystem::path& index_path, const ModeHints& hints = {});

// GXL by extension (.gxl), native format otherwise.
AttributedGraph load_graph(const std::filesystem::path& path, ParseContext& context);

/**
 * Native text format:
 *
 *     gmg 1 <n> <label|vector:m> <label|none>
 *     v <i> <label | x1 .. xm>        one line per vertex, 1-based
 *     e <i> <j> [<label>]             one line per undirected edge, i < j
 *
 * Reals are written in shortest round-trip form.
 */
void write_graph(std::ostream& out, const AttributedGraph& g, EdgeMode edge_mode = EdgeMode::Labeled);
std::string write_graph(const AttributedGraph& g, EdgeMode edge_mode = EdgeMode::Labeled);

// Throws DataError on an unsupported version or a malformed line.
AttributedGraph read_graph(std::istream& in, std::string id = {});
AttributedGraph read_graph(std::string_view text, std::string id = {});

std::string read_file(const std::filesystem::path& path);

// Shortest decimal form that parses back to the same double.
std::string format_real(double x);

} // namespace gmg
