// Command-line surface: generate synthetic geosocial graphs, run detections
// (single and batch), and evaluate metrics for stored communities.
//
// Exit codes: 0 success, 2 usage error, 3 data error.

#include "slcd/baseline.hpp"
#include "slcd/engine.hpp"
#include "slcd/geograph.hpp"
#include "slcd/metrics.hpp"
#include "slcd/record.hpp"
#include "slcd/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct GraphArgs {
    std::string edge_path;
    std::string location_path;
    std::string metric = "euclidean";

    slcd::GeoGraph load() const {
        slcd::DistanceMetric m;
        if (metric == "euclidean")
            m = slcd::DistanceMetric::Euclidean;
        else if (metric == "haversine")
            m = slcd::DistanceMetric::Haversine;
        else
            throw slcd::UsageError("unknown metric: " + metric);
        return slcd::load_graph(edge_path, location_path, m);
    }
};

void add_graph_options(CLI::App* cmd, GraphArgs& args) {
    cmd->add_option("--edges", args.edge_path, "edge list file")->required();
    cmd->add_option("--locations", args.location_path, "node location file")->required();
    cmd->add_option("--metric", args.metric, "euclidean|haversine (default euclidean)");
}

struct DetectArgs {
    std::string algo = "appsldr";
    std::string frac;
    std::string prune_source = "own";
    double budget = 600.0;
    std::optional<std::size_t> max_size;
};

void add_detect_options(CLI::App* cmd, DetectArgs& args) {
    cmd->add_option("--algo", args.algo, "sldr|appsldr|mgreedy")->required();
    cmd->add_option("--frac", args.frac, "prune fraction for appsldr (default 1/3)");
    cmd->add_option("--prune-source", args.prune_source,
                    "frontier the prune count is taken from: own|parent (default own)");
    cmd->add_option("--budget", args.budget, "per-node wall-clock budget in seconds (default 600)");
    cmd->add_option_function<std::size_t>(
        "--max-size", [&args](std::size_t v) { args.max_size = v; },
        "optional cap on community size");
}

slcd::DetectionConfig build_config(const DetectArgs& args) {
    auto algo = slcd::parse_algorithm(args.algo);
    if (!algo) throw slcd::UsageError("unknown algorithm: " + args.algo);
    slcd::DetectionConfig cfg = *algo == slcd::Algorithm::AppSldr
                                    ? slcd::DetectionConfig::appsldr()
                                    : slcd::DetectionConfig::sldr();
    cfg.algorithm = *algo;
    if (!args.frac.empty()) cfg.prune_fraction = slcd::parse_fraction(args.frac);
    if (args.prune_source == "own")
        cfg.prune_source = slcd::PruneSource::OwnFrontier;
    else if (args.prune_source == "parent")
        cfg.prune_source = slcd::PruneSource::ParentFrontier;
    else
        throw slcd::UsageError("unknown prune source: " + args.prune_source);
    cfg.budget_seconds = args.budget;
    cfg.max_community_size = args.max_size;
    cfg.validate();
    return cfg;
}

slcd::DetectionResult run_detection(const slcd::GeoGraph& g, slcd::NodeId v,
                                    const slcd::DetectionConfig& cfg) {
    if (cfg.algorithm == slcd::Algorithm::MGreedy) return slcd::detect_mgreedy(g, v, cfg);
    return slcd::detect(g, v, cfg);
}

std::string detection_record_line(const slcd::GeoGraph& g, const std::string& algo,
                                  const std::string& label, const slcd::DetectionResult& result) {
    auto metrics = slcd::evaluate(g, *result.community);
    return slcd::to_json_line(slcd::make_record(g, algo, label, result, metrics));
}

int cmd_gen(const std::string& out_dir, std::size_t nodes, std::size_t edges,
            std::uint64_t seed, const std::string& probs) {
    slcd::SynthConfig cfg;
    cfg.n_nodes = nodes;
    cfg.n_edges = edges;
    cfg.seed = seed;
    if (!probs.empty()) {
        std::istringstream iss(probs);
        std::string tok;
        std::size_t i = 0;
        while (std::getline(iss, tok, ',')) {
            if (i >= 4) throw slcd::UsageError("--probs takes four comma-separated values");
            cfg.rmat_probs[i++] = std::stod(tok);
        }
        if (i != 4) throw slcd::UsageError("--probs takes four comma-separated values");
    }
    cfg.validate();
    if (edges + 1 < nodes)
        std::cerr << "warning: fewer edges than nodes-1; the graph cannot be connected\n";

    fs::create_directories(out_dir);
    auto data = slcd::generate_data(cfg);
    const auto edge_path = (fs::path(out_dir) / "edges.txt").string();
    const auto loc_path = (fs::path(out_dir) / "locations.txt").string();
    slcd::write_graph_files(data, edge_path, loc_path);

    ordered_json manifest;
    manifest["nodes"] = cfg.n_nodes;
    manifest["edges"] = cfg.n_edges;
    manifest["rmat_probs"] = cfg.rmat_probs;
    manifest["seed"] = cfg.seed;
    manifest["generator"] = "rmat(mt19937_64)";
    manifest["files"] = {{"edges", "edges.txt"}, {"locations", "locations.txt"}};
    std::ofstream mf(fs::path(out_dir) / "manifest");
    mf << manifest.dump(2) << '\n';
    if (!mf.flush()) throw slcd::DataError("failed writing manifest");

    std::cout << "wrote " << edge_path << " (" << data.edges.size() << " edges), " << loc_path
              << " (" << data.locations.size() << " nodes)\n";
    return 0;
}

int cmd_detect(const GraphArgs& graph_args, const DetectArgs& detect_args,
               const std::string& node_label) {
    auto cfg = build_config(detect_args);
    auto g = graph_args.load();
    const slcd::NodeId v = g.require_label(node_label);
    auto result = run_detection(g, v, cfg);
    std::cout << detection_record_line(g, detect_args.algo, node_label, result) << '\n';
    return 0;
}

std::size_t worker_count() {
    if (const char* env = std::getenv("SLCD_WORKERS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<std::size_t>(n);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

// Batch records are written in query-node order as they complete so an
// interrupted run can be resumed; reused lines are kept verbatim.
int cmd_batch(const GraphArgs& graph_args, const DetectArgs& detect_args, std::size_t count,
              const std::string& out_path, bool resume) {
    auto cfg = build_config(detect_args);
    auto g = graph_args.load();
    auto nodes = slcd::select_query_nodes(g, count);

    std::unordered_map<std::string, std::string> reusable;
    if (resume && fs::exists(out_path)) {
        std::ifstream in(out_path);
        std::string line;
        while (std::getline(in, line)) {
            ordered_json j = ordered_json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object()) continue; // ignore partial trailing line
            if (j.contains("summary")) continue;
            if (j.contains("error")) continue;
            if (j.value("algo", "") != detect_args.algo) continue; // stale file, recompute
            if (j.contains("node") && j["node"].is_string())
                reusable[j["node"].get<std::string>()] = line;
        }
    }

    std::vector<std::optional<std::string>> lines(nodes.size());
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string label = g.label(nodes[i]);
        auto it = reusable.find(label);
        if (it != reusable.end())
            lines[i] = it->second;
        else
            pending.push_back(i);
    }

    std::mutex mu;
    std::condition_variable cv;
    std::size_t next_pending = 0;

    auto work = [&]() {
        while (true) {
            std::size_t idx;
            {
                std::lock_guard lock(mu);
                if (next_pending >= pending.size()) return;
                idx = pending[next_pending++];
            }
            const std::string label = g.label(nodes[idx]);
            std::string line;
            try {
                auto result = run_detection(g, nodes[idx], cfg);
                line = detection_record_line(g, detect_args.algo, label, result);
            } catch (const std::exception& e) {
                ordered_json j;
                j["algo"] = detect_args.algo;
                j["node"] = label;
                j["error"] = e.what();
                line = j.dump();
            }
            {
                std::lock_guard lock(mu);
                lines[idx] = std::move(line);
            }
            cv.notify_all();
        }
    };

    const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(pending.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);

    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw slcd::DataError("cannot write results file: " + out_path);

    // single writer, strictly in node order
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return lines[i].has_value(); });
        out << *lines[i] << '\n';
        out.flush();
    }
    for (auto& t : pool) t.join();

    // summary over the records just written
    std::size_t failures = 0, timeouts = 0;
    struct Mean {
        double sum = 0.0;
        std::size_t n = 0, skipped = 0;
    };
    std::map<std::string, Mean> means{
        {"communitude", {}}, {"d_avg", {}}, {"d_io", {}}, {"expansion", {}}};
    for (const auto& line : lines) {
        ordered_json j = ordered_json::parse(*line);
        if (j.contains("error")) {
            ++failures;
            continue;
        }
        if (j.value("timed_out", false)) ++timeouts;
        for (auto& [name, mean] : means) {
            if (j.contains(name) && j[name].is_number()) {
                mean.sum += j[name].get<double>();
                ++mean.n;
            } else {
                ++mean.skipped;
            }
        }
    }
    ordered_json summary;
    summary["summary"] = true;
    summary["algo"] = detect_args.algo;
    summary["count"] = nodes.size();
    summary["failed"] = failures;
    summary["timed_out"] = timeouts;
    ordered_json jmeans = ordered_json::object(), jskips = ordered_json::object();
    for (auto& [name, mean] : means) {
        jmeans[name] = mean.n > 0 ? ordered_json(mean.sum / static_cast<double>(mean.n))
                                  : ordered_json(nullptr);
        jskips[name] = mean.skipped;
    }
    summary["means"] = jmeans;
    summary["skips"] = jskips;
    out << summary.dump() << '\n';
    if (!out.flush()) throw slcd::DataError("failed writing " + out_path);
    return 0;
}

int cmd_eval(const GraphArgs& graph_args, const std::string& community_path) {
    auto g = graph_args.load();

    std::ifstream in(community_path);
    if (!in) throw slcd::DataError("cannot open community file: " + community_path);
    std::vector<slcd::NodeId> members;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        std::istringstream iss(line);
        std::string tok;
        while (iss >> tok) members.push_back(g.require_label(tok));
    }

    slcd::AccessScope scope{&g, nullptr};
    auto community = slcd::community_from_members(scope, std::move(members));
    auto metrics = slcd::evaluate(g, *community);

    ordered_json j;
    j["members"] = slcd::member_labels(g, *community);
    ordered_json skips = ordered_json::object();
    auto put = [&](const char* name, const slcd::MetricValue& v) {
        if (v.ok())
            j[name] = v.value;
        else {
            j[name] = nullptr;
            skips[name] = slcd::to_string(v.skip);
        }
    };
    put("communitude", metrics.communitude);
    put("d_avg", metrics.d_avg);
    put("d_io", metrics.d_io);
    put("expansion", metrics.expansion);
    j["skip_reasons"] = skips;
    std::cout << j.dump() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spatial-aware local community detection"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic geosocial graph");
    std::size_t gen_nodes = 0, gen_edges = 0;
    std::uint64_t gen_seed = 1;
    std::string gen_out = ".", gen_probs;
    gen->add_option("--nodes", gen_nodes, "node count")->required();
    gen->add_option("--edges", gen_edges, "edge count")->required();
    gen->add_option("--seed", gen_seed, "generator seed (default 1)");
    gen->add_option("--out", gen_out, "output directory")->required();
    gen->add_option("--probs", gen_probs, "R-MAT quadrant probabilities a,b,c,d");

    // detect
    auto* detect = app.add_subcommand("detect", "detect the community of one node");
    GraphArgs detect_graph;
    DetectArgs detect_args;
    std::string detect_node;
    add_graph_options(detect, detect_graph);
    add_detect_options(detect, detect_args);
    detect->add_option("--node", detect_node, "query node label")->required();

    // batch
    auto* batch = app.add_subcommand("batch", "run detections for evenly selected query nodes");
    GraphArgs batch_graph;
    DetectArgs batch_args;
    std::size_t batch_count = 0;
    std::string batch_out;
    bool batch_resume = false;
    add_graph_options(batch, batch_graph);
    add_detect_options(batch, batch_args);
    batch->add_option("--count", batch_count, "number of query nodes")->required();
    batch->add_option("--out", batch_out, "results file (one JSON record per line)")->required();
    batch->add_flag("--resume", batch_resume, "reuse complete records from an interrupted run");

    // eval
    auto* eval = app.add_subcommand("eval", "recompute metrics for a stored community");
    GraphArgs eval_graph;
    std::string eval_community;
    add_graph_options(eval, eval_graph);
    eval->add_option("--community", eval_community, "file listing member labels")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_out, gen_nodes, gen_edges, gen_seed, gen_probs);
        if (detect->parsed()) return cmd_detect(detect_graph, detect_args, detect_node);
        if (batch->parsed())
            return cmd_batch(batch_graph, batch_args, batch_count, batch_out, batch_resume);
        if (eval->parsed()) return cmd_eval(eval_graph, eval_community);
    } catch (const slcd::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const slcd::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
