#include "gmg/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "gmg/errors.hpp"

namespace gmg {

namespace pt = boost::property_tree;

namespace {

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

std::string trim(std::string_view s)
{
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

// One <attr name=...><type>value</type></attr> child.
struct GxlValue {
    std::string type;
    std::string text;
};

std::vector<std::pair<std::string, GxlValue>> gxl_attributes(const pt::ptree& element)
{
    std::vector<std::pair<std::string, GxlValue>> out;
    for (const auto& [tag, child] : element) {
        if (tag != "attr")
            continue;
        auto name = child.get_optional<std::string>("<xmlattr>.name");
        if (!name)
            throw DataError("gxl: <attr> without a name");
        for (const auto& [type, value] : child) {
            if (type == "<xmlattr>")
                continue;
            out.push_back({*name, {type, trim(value.data())}});
            break;
        }
    }
    return out;
}

const GxlValue* find_value(const std::vector<std::pair<std::string, GxlValue>>& attrs, const std::string& name)
{
    for (const auto& [n, v] : attrs)
        if (n == name)
            return &v;
    return nullptr;
}

bool is_numeric_type(const std::string& type) { return type == "float" || type == "double" || type == "int"; }

double to_double(const GxlValue& v, const std::string& name)
{
    if (!is_numeric_type(v.type))
        throw DataError("gxl: attribute '" + name + "' is not numeric");
    try {
        std::size_t used = 0;
        double x = std::stod(v.text, &used);
        if (used != v.text.size())
            throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw DataError("gxl: attribute '" + name + "' has invalid number '" + v.text + "'");
    }
}

Label to_label(const GxlValue& v, const std::string& name, LabelDictionary& dictionary)
{
    if (v.type == "int") {
        Label out = 0;
        auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
        if (ec != std::errc{} || ptr != v.text.data() + v.text.size())
            throw DataError("gxl: attribute '" + name + "' has invalid label '" + v.text + "'");
        return out;
    }
    if (v.type == "string")
        return dictionary.intern(v.text);
    throw DataError("gxl: attribute '" + name + "' of type <" + v.type + "> cannot be a label");
}

void resolve_auto(AttributeHint& hint, const std::vector<std::pair<std::string, GxlValue>>& attrs, bool allow_vector)
{
    if (hint.kind != AttributeHint::Kind::Auto)
        return;
    for (const auto& [name, value] : attrs) {
        if (value.type == "int" || value.type == "string") {
            hint = {AttributeHint::Kind::Label, {name}};
            return;
        }
    }
    std::vector<std::string> numeric;
    for (const auto& [name, value] : attrs)
        if (is_numeric_type(value.type))
            numeric.push_back(name);
    if (!numeric.empty()) {
        if (!allow_vector)
            throw DataError("gxl: real-valued edge attributes are not supported");
        hint = {AttributeHint::Kind::Vector, numeric};
        return;
    }
    hint = {AttributeHint::Kind::None, {}};
}

Attribute extract(const AttributeHint& hint, const std::vector<std::pair<std::string, GxlValue>>& attrs,
                  LabelDictionary& dictionary, const std::string& where)
{
    switch (hint.kind) {
    case AttributeHint::Kind::None:
    case AttributeHint::Kind::Auto: return Attribute::label(1);
    case AttributeHint::Kind::Label: {
        const GxlValue* v = find_value(attrs, hint.names.front());
        if (!v)
            throw DataError("gxl: " + where + " is missing attribute '" + hint.names.front() + "'");
        return Attribute::label(to_label(*v, hint.names.front(), dictionary));
    }
    case AttributeHint::Kind::Vector: {
        std::vector<double> values;
        for (const std::string& name : hint.names) {
            const GxlValue* v = find_value(attrs, name);
            if (!v)
                throw DataError("gxl: " + where + " is missing attribute '" + name + "'");
            values.push_back(to_double(*v, name));
        }
        return Attribute::vector(std::move(values));
    }
    }
    return Attribute::label(1);
}

const pt::ptree& graph_element(const pt::ptree& doc)
{
    auto gxl = doc.get_child_optional("gxl");
    if (!gxl)
        throw DataError("gxl: missing <gxl> root element");
    auto graph = gxl->get_child_optional("graph");
    if (!graph)
        throw DataError("gxl: missing <graph> element");
    return *graph;
}

void collect_index_entries(const pt::ptree& tree, std::vector<std::pair<std::string, std::string>>& out)
{
    for (const auto& [tag, child] : tree) {
        if (tag == "<xmlattr>" || tag == "<xmlcomment>")
            continue;
        auto file = child.get_optional<std::string>("<xmlattr>.file");
        auto cls = child.get_optional<std::string>("<xmlattr>.class");
        if (file && cls)
            out.emplace_back(*file, *cls);
        collect_index_entries(child, out);
    }
}

} // namespace

std::string format_real(double x)
{
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
    return std::string(buffer, ptr);
}

AttributeHint AttributeHint::parse(std::string_view text)
{
    if (text == "auto")
        return {Kind::Auto, {}};
    if (text == "none")
        return {Kind::None, {}};
    auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        std::string_view kind = text.substr(0, colon);
        auto names = split(text.substr(colon + 1), ',');
        bool ok = !names.empty();
        for (const auto& n : names)
            ok = ok && !n.empty();
        if (ok && kind == "label" && names.size() == 1)
            return {Kind::Label, names};
        if (ok && kind == "vector")
            return {Kind::Vector, names};
    }
    throw std::invalid_argument("attribute hint '" + std::string(text) +
                                "' is not one of auto, none, label:NAME, vector:A,B,...");
}

std::string AttributeHint::to_string() const
{
    switch (kind) {
    case Kind::Auto: return "auto";
    case Kind::None: return "none";
    case Kind::Label: return "label:" + names.front();
    case Kind::Vector: {
        std::string s = "vector:";
        for (std::size_t i = 0; i < names.size(); ++i)
            s += (i ? "," : "") + names[i];
        return s;
    }
    }
    return "auto";
}

Label LabelDictionary::intern(const std::string& text)
{
    auto [it, inserted] = ids_.try_emplace(text, static_cast<Label>(ids_.size() + 1));
    return it->second;
}

std::optional<Label> LabelDictionary::find(const std::string& text) const
{
    auto it = ids_.find(text);
    if (it == ids_.end())
        return std::nullopt;
    return it->second;
}

AttributedGraph parse_gxl(std::string_view text, ParseContext& context, std::string fallback_id)
{
    pt::ptree doc;
    try {
        std::istringstream in{std::string(text)};
        pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw DataError(std::string("gxl: malformed XML: ") + e.what());
    }
    const pt::ptree& graph = graph_element(doc);
    std::string id = graph.get<std::string>("<xmlattr>.id", fallback_id);

    std::unordered_map<std::string, std::size_t> index;
    std::vector<Attribute> vertices;
    struct RawEdge {
        std::string from, to;
        std::vector<std::pair<std::string, GxlValue>> attrs;
    };
    std::vector<RawEdge> raw_edges;

    for (const auto& [tag, child] : graph) {
        if (tag == "node") {
            auto node_id = child.get_optional<std::string>("<xmlattr>.id");
            if (!node_id)
                throw DataError("gxl: <node> without an id in graph '" + id + "'");
            if (!index.emplace(*node_id, vertices.size()).second)
                throw DataError("gxl: duplicate node id '" + *node_id + "' in graph '" + id + "'");
            auto attrs = gxl_attributes(child);
            resolve_auto(context.hints.vertex, attrs, true);
            vertices.push_back(extract(context.hints.vertex, attrs, context.vertex_labels, "node '" + *node_id + "'"));
        } else if (tag == "edge") {
            auto from = child.get_optional<std::string>("<xmlattr>.from");
            auto to = child.get_optional<std::string>("<xmlattr>.to");
            if (!from || !to)
                throw DataError("gxl: <edge> without from/to in graph '" + id + "'");
            raw_edges.push_back({*from, *to, gxl_attributes(child)});
        }
    }

    std::vector<Edge> edges;
    for (const RawEdge& e : raw_edges) {
        auto u = index.find(e.from);
        auto v = index.find(e.to);
        if (u == index.end() || v == index.end())
            throw DataError("gxl: edge (" + e.from + "," + e.to + ") has a dangling endpoint in graph '" + id + "'");
        resolve_auto(context.hints.edge, e.attrs, false);
        edges.push_back({u->second, v->second,
                         extract(context.hints.edge, e.attrs, context.edge_labels, "edge (" + e.from + "," + e.to + ")")});
    }

    try {
        std::size_t order = vertices.size();
        return AttributedGraph::build(order, std::move(vertices), edges, id);
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("gxl: ") + e.what());
    }
}

std::vector<std::string> DatasetDescriptor::classes() const
{
    std::vector<std::string> out;
    for (const auto& entry : graphs)
        if (std::find(out.begin(), out.end(), entry.class_label) == out.end())
            out.push_back(entry.class_label);
    return out;
}

std::vector<AttributedGraph> DatasetDescriptor::graphs_of(const std::string& class_label) const
{
    std::vector<AttributedGraph> out;
    for (const auto& entry : graphs)
        if (entry.class_label == class_label)
            out.push_back(entry.graph);
    return out;
}

std::vector<AttributedGraph> DatasetDescriptor::all_graphs() const
{
    std::vector<AttributedGraph> out;
    for (const auto& entry : graphs)
        out.push_back(entry.graph);
    return out;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DatasetDescriptor parse_collection(std::string_view index_text, const std::filesystem::path& base,
                                   const ModeHints& hints, std::string name)
{
    pt::ptree doc;
    try {
        std::istringstream in{std::string(index_text)};
        pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw DataError(std::string("collection index: malformed XML: ") + e.what());
    }
    std::vector<std::pair<std::string, std::string>> entries;
    collect_index_entries(doc, entries);
    if (entries.empty())
        throw DataError("collection index: empty collection");

    DatasetDescriptor out;
    out.name = std::move(name);
    ParseContext context{hints, {}, {}};
    for (const auto& [file, cls] : entries) {
        std::filesystem::path path = base / file;
        if (!std::filesystem::exists(path))
            throw DataError("collection index: missing file '" + path.string() + "'");
        try {
            AttributedGraph g = parse_gxl(read_file(path), context, std::filesystem::path(file).stem().string());
            out.graphs.push_back({g.id(), cls, std::move(g)});
        } catch (const DataError& e) {
            throw DataError(path.string() + ": " + e.what());
        }
    }

    const AttributeHint& vh = context.hints.vertex;
    out.vertex_kind = vh.kind == AttributeHint::Kind::Vector ? AttributeKind::Vector : AttributeKind::Label;
    out.vector_dim = out.vertex_kind == AttributeKind::Vector ? vh.names.size() : 0;
    out.edge_mode =
        context.hints.edge.kind == AttributeHint::Kind::Label ? EdgeMode::Labeled : EdgeMode::Unlabeled;
    return out;
}

DatasetDescriptor load_collection(const std::filesystem::path& index_path, const ModeHints& hints)
{
    return parse_collection(read_file(index_path), index_path.parent_path(), hints, index_path.stem().string());
}

AttributedGraph load_graph(const std::filesystem::path& path, ParseContext& context)
{
    std::string text = read_file(path);
    try {
        if (path.extension() == ".gxl")
            return parse_gxl(text, context, path.stem().string());
        return read_graph(text, path.stem().string());
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void write_graph(std::ostream& out, const AttributedGraph& g, EdgeMode edge_mode)
{
    std::string vertex_mode = "label";
    if (g.order() > 0 && g.vertex_attr(0).is_vector())
        vertex_mode = "vector:" + std::to_string(g.vertex_attr(0).dimension());
    bool labeled = edge_mode == EdgeMode::Labeled;
    out << "gmg 1 " << g.order() << ' ' << vertex_mode << ' ' << (labeled ? "label" : "none") << '\n';
    for (std::size_t i = 0; i < g.order(); ++i) {
        out << "v " << i + 1;
        const Attribute& a = g.vertex_attr(i);
        if (a.is_label())
            out << ' ' << a.as_label();
        else
            for (double x : a.as_vector())
                out << ' ' << format_real(x);
        out << '\n';
    }
    for (const Edge& e : g.edges()) {
        out << "e " << e.u + 1 << ' ' << e.v + 1;
        if (labeled)
            out << ' ' << e.attr.as_label();
        out << '\n';
    }
}

std::string write_graph(const AttributedGraph& g, EdgeMode edge_mode)
{
    std::ostringstream out;
    write_graph(out, g, edge_mode);
    return out.str();
}

namespace {

template <class T>
T parse_number(const std::string& token, std::size_t line_no)
{
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw DataError("gmg line " + std::to_string(line_no) + ": invalid number '" + token + "'");
    return value;
}

std::vector<std::string> tokens(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream ss(line);
    for (std::string t; ss >> t;)
        out.push_back(t);
    return out;
}

} // namespace

AttributedGraph read_graph(std::istream& in, std::string id)
{
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line))
        throw DataError("gmg: empty input");
    auto header = tokens(line);
    if (header.size() != 5 || header[0] != "gmg")
        throw DataError("gmg line 1: malformed header");
    if (header[1] != "1")
        throw DataError("gmg: unsupported version '" + header[1] + "'");
    auto order = parse_number<std::size_t>(header[2], line_no);

    std::size_t dim = 0;
    if (header[3] == "label") {
        dim = 0;
    } else if (header[3].rfind("vector:", 0) == 0) {
        dim = parse_number<std::size_t>(header[3].substr(7), line_no);
        if (dim == 0)
            throw DataError("gmg line 1: vector dimension must be positive");
    } else {
        throw DataError("gmg line 1: unknown vertex mode '" + header[3] + "'");
    }
    bool labeled_edges;
    if (header[4] == "label")
        labeled_edges = true;
    else if (header[4] == "none")
        labeled_edges = false;
    else
        throw DataError("gmg line 1: unknown edge mode '" + header[4] + "'");

    std::vector<std::optional<Attribute>> vertices(order);
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = tokens(line);
        if (t.empty())
            continue;
        if (t[0] == "v") {
            if (t.size() != (dim == 0 ? 3 : 2 + dim))
                throw DataError("gmg line " + std::to_string(line_no) + ": malformed vertex line");
            auto i = parse_number<std::size_t>(t[1], line_no);
            if (i < 1 || i > order || vertices[i - 1])
                throw DataError("gmg line " + std::to_string(line_no) + ": bad or repeated vertex index");
            if (dim == 0) {
                vertices[i - 1] = Attribute::label(parse_number<Label>(t[2], line_no));
            } else {
                std::vector<double> x;
                for (std::size_t k = 0; k < dim; ++k)
                    x.push_back(parse_number<double>(t[2 + k], line_no));
                vertices[i - 1] = Attribute::vector(std::move(x));
            }
        } else if (t[0] == "e") {
            if (t.size() != (labeled_edges ? 4u : 3u))
                throw DataError("gmg line " + std::to_string(line_no) + ": malformed edge line");
            auto i = parse_number<std::size_t>(t[1], line_no);
            auto j = parse_number<std::size_t>(t[2], line_no);
            if (i < 1 || j < 1 || i > order || j > order)
                throw DataError("gmg line " + std::to_string(line_no) + ": edge endpoint out of range");
            Label label = labeled_edges ? parse_number<Label>(t[3], line_no) : 1;
            edges.push_back({i - 1, j - 1, Attribute::label(label)});
        } else {
            throw DataError("gmg line " + std::to_string(line_no) + ": unknown record '" + t[0] + "'");
        }
    }
    std::vector<Attribute> attrs;
    for (std::size_t i = 0; i < order; ++i) {
        if (!vertices[i])
            throw DataError("gmg: vertex " + std::to_string(i + 1) + " is missing");
        attrs.push_back(std::move(*vertices[i]));
    }
    try {
        return AttributedGraph::build(order, std::move(attrs), edges, std::move(id));
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("gmg: ") + e.what());
    }
}

AttributedGraph read_graph(std::string_view text, std::string id)
{
    std::istringstream in{std::string(text)};
    return read_graph(in, std::move(id));
}

} // namespace gmg
