#include "gmg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmg/dataset.hpp"
#include "gmg/edit_cost.hpp"
#include "gmg/errors.hpp"
#include "gmg/experiment.hpp"
#include "gmg/ged.hpp"
#include "gmg/log.hpp"
#include "gmg/median.hpp"
#include "gmg/parallel.hpp"

namespace gmg::cli {

namespace {

using json = nlohmann::ordered_json;

struct CostFlags {
    double c_vs = 1.0;
    double c_es = 1.0;
    double c_vi = 3.0;
    double c_vr = 3.0;
    double c_ei = 3.0;
    double c_er = 3.0;
};

struct RunConfig {
    CostFlags cost;
    GedSolverConfig ged;
    GedMethod phase1 = GedMethod::MultistartIpfp;
    GedMethod phase2 = GedMethod::MultistartIpfp;
    std::size_t max_iters = 100;
    std::size_t threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    std::string sample = "10";
    std::size_t repeats = 1;
    std::string dataset;
    std::string class_label;
    std::string out;
    std::string vertex_attr = "auto";
    std::string edge_attr = "auto";
    bool timings = true;
};

GedMethod method_from(const std::string& name)
{
    auto m = parse_ged_method(name);
    if (!m)
        throw ConfigError("unknown GED method '" + name + "' (exact, bipartite, ipfp, mbipartite, mipfp)");
    return *m;
}

json to_json(const RunConfig& c)
{
    json j;
    j["cost"] = {{"c_vs", c.cost.c_vs}, {"c_es", c.cost.c_es}, {"c_vi", c.cost.c_vi},
                 {"c_vr", c.cost.c_vr}, {"c_ei", c.cost.c_ei}, {"c_er", c.cost.c_er}};
    j["ged"] = {{"method", std::string(to_string(c.ged.method))},
                {"multistart", c.ged.multistart_count},
                {"seed", c.ged.rng_seed},
                {"ipfp_max_iters", c.ged.ipfp_max_iters},
                {"ipfp_tol", c.ged.ipfp_tol},
                {"exact_order_cap", c.ged.exact_order_cap}};
    j["phase1"] = std::string(to_string(c.phase1));
    j["phase2"] = std::string(to_string(c.phase2));
    j["max_iters"] = c.max_iters;
    j["threads"] = c.threads;
    j["sample"] = c.sample;
    j["repeats"] = c.repeats;
    j["dataset"] = c.dataset;
    j["class"] = c.class_label;
    j["out"] = c.out;
    j["vertex_attr"] = c.vertex_attr;
    j["edge_attr"] = c.edge_attr;
    j["timings"] = c.timings;
    return j;
}

template <class T>
void read_key(const json& j, const char* key, T& target)
{
    if (j.contains(key))
        target = j.at(key).get<T>();
}

void apply_json(const json& j, RunConfig& c)
{
    if (j.contains("cost")) {
        const json& cost = j["cost"];
        read_key(cost, "c_vs", c.cost.c_vs);
        read_key(cost, "c_es", c.cost.c_es);
        read_key(cost, "c_vi", c.cost.c_vi);
        read_key(cost, "c_vr", c.cost.c_vr);
        read_key(cost, "c_ei", c.cost.c_ei);
        read_key(cost, "c_er", c.cost.c_er);
    }
    if (j.contains("ged")) {
        const json& ged = j["ged"];
        if (ged.contains("method"))
            c.ged.method = method_from(ged["method"].get<std::string>());
        read_key(ged, "multistart", c.ged.multistart_count);
        read_key(ged, "seed", c.ged.rng_seed);
        read_key(ged, "ipfp_max_iters", c.ged.ipfp_max_iters);
        read_key(ged, "ipfp_tol", c.ged.ipfp_tol);
        read_key(ged, "exact_order_cap", c.ged.exact_order_cap);
    }
    if (j.contains("phase1"))
        c.phase1 = method_from(j["phase1"].get<std::string>());
    if (j.contains("phase2"))
        c.phase2 = method_from(j["phase2"].get<std::string>());
    read_key(j, "max_iters", c.max_iters);
    read_key(j, "threads", c.threads);
    read_key(j, "sample", c.sample);
    read_key(j, "repeats", c.repeats);
    read_key(j, "dataset", c.dataset);
    read_key(j, "class", c.class_label);
    read_key(j, "out", c.out);
    read_key(j, "vertex_attr", c.vertex_attr);
    read_key(j, "edge_attr", c.edge_attr);
    read_key(j, "timings", c.timings);
}

// "c_vs=1,c_er=3" -> overrides.
void apply_cost_flag(const std::string& text, CostFlags& cost)
{
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--cost entry '" + item + "' is not key=value");
        std::string key = item.substr(0, eq);
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1)
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("--cost entry '" + item + "' has an invalid value");
        }
        if (key == "c_vs") cost.c_vs = value;
        else if (key == "c_es") cost.c_es = value;
        else if (key == "c_vi") cost.c_vi = value;
        else if (key == "c_vr") cost.c_vr = value;
        else if (key == "c_ei") cost.c_ei = value;
        else if (key == "c_er") cost.c_er = value;
        else throw ConfigError("--cost: unknown constant '" + key + "'");
    }
}

void validate(const RunConfig& c)
{
    const CostFlags& k = c.cost;
    for (double v : {k.c_vs, k.c_es, k.c_vi, k.c_vr, k.c_ei, k.c_er})
        if (!(v > 0.0))
            throw ConfigError("cost constants must be positive");
    if (c.threads < 1)
        throw ConfigError("thread count must be at least 1");
    if (c.ged.multistart_count < 1)
        throw ConfigError("multistart count must be at least 1");
    if (c.repeats < 1)
        throw ConfigError("repeats must be at least 1");
}

CostModel make_model(const RunConfig& c, AttributeKind vertex_kind, EdgeMode edge_mode)
{
    CostConstants constants{c.cost.c_vr, c.cost.c_vi, c.cost.c_er, c.cost.c_ei};
    VertexSubstitution vs = vertex_kind == AttributeKind::Vector ? VertexSubstitution{SquaredEuclidean{}}
                                                                  : VertexSubstitution{LabelDelta{c.cost.c_vs}};
    EdgeSubstitution es = edge_mode == EdgeMode::Labeled ? EdgeSubstitution{LabelDelta{c.cost.c_es}}
                                                         : EdgeSubstitution{ZeroCost{}};
    try {
        return CostModel(constants, vs, es);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

GedSolverConfig solver_for(const RunConfig& c, GedMethod method)
{
    GedSolverConfig s = c.ged;
    s.method = method;
    return s;
}

DescentConfig descent_for(const RunConfig& c)
{
    return {c.max_iters, solver_for(c, c.phase1), solver_for(c, c.phase2)};
}

ModeHints hints_for(const RunConfig& c)
{
    try {
        return {AttributeHint::parse(c.vertex_attr), AttributeHint::parse(c.edge_attr)};
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

struct LoadedCollection {
    DatasetDescriptor dataset;
    CostModel model;
};

LoadedCollection load(const RunConfig& c)
{
    if (c.dataset.empty())
        throw ConfigError("--dataset is required");
    DatasetDescriptor d = load_collection(c.dataset, hints_for(c));
    if (!c.class_label.empty()) {
        std::erase_if(d.graphs, [&](const DatasetEntry& e) { return e.class_label != c.class_label; });
        if (d.graphs.empty())
            throw DataError("no graph of class '" + c.class_label + "' in " + c.dataset);
    }
    CostModel model = make_model(c, d.vertex_kind, d.edge_mode);
    std::vector<Attribute> attrs;
    for (const auto& e : d.graphs)
        attrs.insert(attrs.end(), e.graph.vertex_attrs().begin(), e.graph.vertex_attrs().end());
    if (auto warning = metric_guard_warning(model, attrs); !warning.empty())
        log().warn("{}", warning);
    return {std::move(d), model};
}

void write_output(const std::string& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw DataError("cannot write '" + path + "'");
    f << content;
}

std::string forward_text(const Transformation& t)
{
    std::string s;
    for (std::size_t i = 0; i < t.source_order(); ++i)
        s += (i ? " " : "") + (t.substitutes(i) ? std::to_string(t[i] + 1) : std::string("-"));
    return s;
}

int cmd_ged(const RunConfig& c, const std::vector<std::string>& files, std::ostream& out)
{
    ParseContext context{hints_for(c), {}, {}};
    AttributedGraph g = load_graph(files.at(0), context);
    AttributedGraph g2 = load_graph(files.at(1), context);
    AttributeKind kind = AttributeKind::Label;
    for (const AttributedGraph* x : {&g, &g2})
        if (x->order() > 0)
            kind = x->vertex_attr(0).kind();
    EdgeMode edges = context.hints.edge.kind == AttributeHint::Kind::None ? EdgeMode::Unlabeled : EdgeMode::Labeled;
    CostModel model = make_model(c, kind, edges);
    GedResult r = compute_ged(model, g, g2, c.ged);
    out << "cost " << format_real(r.cost) << '\n';
    out << "transformation " << forward_text(r.transformation) << '\n';
    out << "exact " << (r.is_exact ? "yes" : "no") << '\n';
    return kExitOk;
}

int cmd_set_median(const RunConfig& c, std::ostream& out)
{
    LoadedCollection lc = load(c);
    auto graphs = lc.dataset.all_graphs();
    SetMedianResult sm = set_median(lc.model, graphs, solver_for(c, c.phase1));
    const AttributedGraph& median = graphs[sm.median_index];
    out << "set-median " << sm.median_index + 1 << ' ' << median.id() << '\n';
    out << "sod " << format_real(sm.sod) << '\n';
    std::string text = write_graph(median, lc.dataset.edge_mode);
    if (c.out.empty())
        out << text;
    else
        write_output(c.out, text);
    return kExitOk;
}

int cmd_median(const RunConfig& c, std::ostream& out)
{
    LoadedCollection lc = load(c);
    auto graphs = lc.dataset.all_graphs();
    MedianResult m = compute_median(lc.model, graphs, descent_for(c));
    out << "set-median " << m.set_median_index + 1 << ' ' << graphs[m.set_median_index].id() << '\n';
    out << "iteration 0 sod " << format_real(m.sod_trace.front()) << '\n';
    for (const IterationRecord& r : m.iterations)
        out << "iteration " << r.iteration << " sod " << format_real(r.sod_upper) << " changed "
            << r.changed_transformations << '\n';
    out << "converged " << (m.converged ? "yes" : "no") << " iterations " << m.iterations.size() << '\n';
    log().info("timing phase1={}s phase2={}s", m.phase1_seconds, m.phase2_seconds);
    std::string text = write_graph(m.median, lc.dataset.edge_mode);
    if (c.out.empty())
        out << text;
    else
        write_output(c.out, text);
    return kExitOk;
}

ExperimentConfig experiment_for(const RunConfig& c, const CostModel& model)
{
    ExperimentConfig e;
    try {
        e.per_class_sample = SampleSize::parse(c.sample);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(ex.what());
    }
    e.repeats = c.repeats;
    e.rng_seed = c.ged.rng_seed;
    e.model = model;
    e.descent = descent_for(c);
    return e;
}

int cmd_sod_table(const RunConfig& c, std::ostream& out)
{
    auto t0 = std::chrono::steady_clock::now();
    LoadedCollection lc = load(c);
    double load_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    SodReport report = run_sod_experiment(lc.dataset, experiment_for(c, lc.model));
    print_sod_table(out, report);
    if (c.timings)
        out << "load time " << load_seconds << " s\n";
    if (!c.out.empty()) {
        std::ostringstream csv;
        write_sod_csv(csv, report, c.timings);
        write_output(c.out, csv.str());
    }
    return kExitOk;
}

int cmd_classify(const RunConfig& c, std::ostream& out)
{
    auto t0 = std::chrono::steady_clock::now();
    LoadedCollection lc = load(c);
    double load_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ClassifReport report = run_classification(lc.dataset, experiment_for(c, lc.model));
    print_classif_table(out, report);
    if (c.timings)
        out << "load time " << load_seconds << " s\n";
    if (!c.out.empty()) {
        std::ostringstream csv;
        write_classif_csv(csv, report, c.timings);
        write_output(c.out, csv.str());
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Generalized median graphs by block coordinate descent over graph edit distance", "gmg"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::optional<std::string> config_path, cost, phase1, phase2, method, sample, dataset, class_label, output,
        vertex_attr, edge_attr;
    std::optional<std::size_t> multistart, threads, repeats, max_iters, ipfp_max_iters;
    std::optional<std::uint64_t> seed;
    std::optional<double> ipfp_tol;
    bool dump_config = false;
    bool no_timings = false;
    std::vector<std::string> ged_files;

    app.add_option("--config", config_path, "JSON config file (flags override it)");
    app.add_option("--cost", cost, "Edit costs, e.g. c_vs=1,c_es=1,c_vi=3,c_vr=3,c_ei=3,c_er=3");
    app.add_option("--phase1", phase1, "Set-median GED method: exact|bipartite|ipfp|mbipartite|mipfp");
    app.add_option("--phase2", phase2, "Descent GED method");
    app.add_option("--method", method, "GED method for the ged subcommand");
    app.add_option("--multistart", multistart, "Starts for multistart methods");
    app.add_option("--seed", seed, "Random seed");
    app.add_option("--threads", threads, "Worker threads");
    app.add_option("--ipfp-max-iters", ipfp_max_iters, "IPFP iteration limit");
    app.add_option("--ipfp-tol", ipfp_tol, "IPFP convergence tolerance");
    app.add_option("--max-iters", max_iters, "Descent iteration limit");
    app.add_option("--sample", sample, "Per-class sample: count (50) or fraction (0.3)");
    app.add_option("--repeats", repeats, "Experiment repeats");
    app.add_option("--dataset", dataset, "CXL collection index");
    app.add_option("--class", class_label, "Restrict to one class");
    app.add_option("--out", output, "Output path");
    app.add_option("--vertex-attr", vertex_attr, "Vertex attribute hint: auto|none|label:NAME|vector:A,B");
    app.add_option("--edge-attr", edge_attr, "Edge attribute hint: auto|none|label:NAME");
    app.add_flag("--no-timings", no_timings, "Write zero times to CSV reports");
    app.add_flag("--dump-config", dump_config, "Print the effective configuration as JSON and exit");

    auto* ged = app.add_subcommand("ged", "GED between two graph files");
    ged->add_option("graphs", ged_files, "Two .gxl or native graph files")->expected(2)->required();
    auto* set_median_cmd = app.add_subcommand("set-median", "Set median of a collection");
    auto* median_cmd = app.add_subcommand("median", "Generalized median of a collection");
    auto* sod_cmd = app.add_subcommand("sod-table", "Per-class SOD experiment");
    auto* classify_cmd = app.add_subcommand("classify", "1-NN classification experiment");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        RunConfig config;
        if (config_path) {
            json j;
            try {
                j = json::parse(read_file(*config_path));
                apply_json(j, config);
            } catch (const json::exception& e) {
                throw ConfigError("config '" + *config_path + "': " + e.what());
            }
        }
        if (cost) apply_cost_flag(*cost, config.cost);
        if (method) config.ged.method = method_from(*method);
        if (phase1) config.phase1 = method_from(*phase1);
        if (phase2) config.phase2 = method_from(*phase2);
        if (multistart) config.ged.multistart_count = *multistart;
        if (seed) config.ged.rng_seed = *seed;
        if (threads) config.threads = *threads;
        if (ipfp_max_iters) config.ged.ipfp_max_iters = *ipfp_max_iters;
        if (ipfp_tol) config.ged.ipfp_tol = *ipfp_tol;
        if (max_iters) config.max_iters = *max_iters;
        if (sample) config.sample = *sample;
        if (repeats) config.repeats = *repeats;
        if (dataset) config.dataset = *dataset;
        if (class_label) config.class_label = *class_label;
        if (output) config.out = *output;
        if (vertex_attr) config.vertex_attr = *vertex_attr;
        if (edge_attr) config.edge_attr = *edge_attr;
        if (no_timings) config.timings = false;
        validate(config);

        if (dump_config) {
            out << to_json(config).dump(2) << '\n';
            return kExitOk;
        }
        set_thread_count(config.threads);

        if (ged->parsed()) return cmd_ged(config, ged_files, out);
        if (set_median_cmd->parsed()) return cmd_set_median(config, out);
        if (median_cmd->parsed()) return cmd_median(config, out);
        if (sod_cmd->parsed()) return cmd_sod_table(config, out);
        if (classify_cmd->parsed()) return cmd_classify(config, out);
        err << app.help();
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "gmg: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        err << "gmg: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        err << "gmg: " << e.what() << '\n';
        return kExitData;
    }
}

} // namespace gmg::cli
