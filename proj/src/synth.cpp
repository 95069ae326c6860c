#include "slcd/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_set>

namespace slcd {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

void SynthConfig::validate() const {
    if (n_nodes == 0) throw UsageError("generator needs at least one node");
    double sum = 0.0;
    for (double p : rmat_probs) {
        if (p < 0.0 || p > 1.0) throw UsageError("quadrant probabilities must lie in [0, 1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw UsageError("quadrant probabilities must sum to 1");
    const std::size_t max_edges =
        n_nodes < 2 ? 0 : n_nodes * (n_nodes - 1) / 2;
    if (n_edges > max_edges)
        throw UsageError("edge count exceeds the number of distinct node pairs");
}

SynthData generate_data(const SynthConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);

    SynthData data;
    data.locations.reserve(cfg.n_nodes);
    for (std::size_t v = 0; v < cfg.n_nodes; ++v) {
        const double x = rng.next_unit();
        const double y = rng.next_unit();
        data.locations.emplace_back(x, y);
    }

    int scale = 0;
    while ((std::size_t{1} << scale) < cfg.n_nodes) ++scale;

    const double pa = cfg.rmat_probs[0];
    const double pab = pa + cfg.rmat_probs[1];
    const double pabc = pab + cfg.rmat_probs[2];

    std::unordered_set<std::uint64_t> edge_set;
    edge_set.reserve(cfg.n_edges * 2);
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(cfg.n_edges);

    // Duplicates, self-loops, and endpoints beyond n_nodes are rejected and
    // resampled so the realized edge count is exact.
    std::uint64_t attempts = 0;
    const std::uint64_t attempt_cap = 1000 * (static_cast<std::uint64_t>(cfg.n_edges) + 1000);
    while (edges.size() < cfg.n_edges) {
        if (++attempts > attempt_cap)
            throw DataError("R-MAT sampling failed to reach the requested edge count");
        std::uint64_t u = 0, v = 0;
        for (int level = 0; level < scale; ++level) {
            const double r = rng.next_unit();
            const int row = (r >= pab) ? 1 : 0;
            const int col = (r >= pa && r < pab) || (r >= pabc) ? 1 : 0;
            u = (u << 1) | static_cast<std::uint64_t>(row);
            v = (v << 1) | static_cast<std::uint64_t>(col);
        }
        if (u >= cfg.n_nodes || v >= cfg.n_nodes || u == v) continue;
        if (u > v) std::swap(u, v);
        const std::uint64_t key = (u << 32) | v;
        if (!edge_set.insert(key).second) continue;
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }

    std::sort(edges.begin(), edges.end());
    data.edges = std::move(edges);
    return data;
}

GeoGraph generate(const SynthConfig& cfg) {
    auto data = generate_data(cfg);
    std::vector<std::pair<std::string, std::string>> edges;
    edges.reserve(data.edges.size() + cfg.n_nodes);
    for (const auto& [u, v] : data.edges)
        edges.emplace_back(std::to_string(u), std::to_string(v));

    std::vector<std::uint8_t> has_edge(cfg.n_nodes, 0);
    for (const auto& [u, v] : data.edges) {
        has_edge[u] = 1;
        has_edge[v] = 1;
    }
    for (std::size_t v = 0; v < cfg.n_nodes; ++v)
        if (!has_edge[v]) edges.emplace_back(std::to_string(v), std::to_string(v));

    std::vector<std::tuple<std::string, double, double>> locations;
    locations.reserve(cfg.n_nodes);
    for (std::size_t v = 0; v < cfg.n_nodes; ++v)
        locations.emplace_back(std::to_string(v), data.locations[v].first,
                               data.locations[v].second);

    return GeoGraph::build(edges, locations, DistanceMetric::Euclidean);
}

void write_graph_files(const SynthData& data, const std::string& edge_path,
                       const std::string& location_path) {
    std::ofstream ef(edge_path);
    if (!ef) throw DataError("cannot write edge file: " + edge_path);
    std::vector<std::uint8_t> has_edge(data.locations.size(), 0);
    for (const auto& [u, v] : data.edges) {
        ef << u << ' ' << v << '\n';
        has_edge[u] = 1;
        has_edge[v] = 1;
    }
    // self-loop lines register isolated nodes without adding edges
    for (std::size_t v = 0; v < data.locations.size(); ++v)
        if (!has_edge[v]) ef << v << ' ' << v << '\n';
    if (!ef.flush()) throw DataError("failed writing " + edge_path);

    std::ofstream lf(location_path);
    if (!lf) throw DataError("cannot write location file: " + location_path);
    for (std::size_t v = 0; v < data.locations.size(); ++v)
        lf << v << ' ' << format_double(data.locations[v].first) << ' '
           << format_double(data.locations[v].second) << '\n';
    if (!lf.flush()) throw DataError("failed writing " + location_path);
}

std::vector<NodeId> select_query_nodes(const GeoGraph& g, std::size_t count) {
    const std::size_t n = g.node_count();
    if (count > n) throw DataError("cannot select more query nodes than the graph has");
    std::vector<NodeId> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        out.push_back(static_cast<NodeId>(k * n / count));
    return out;
}

} // namespace slcd
