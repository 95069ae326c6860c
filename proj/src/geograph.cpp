#include "slcd/geograph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

namespace slcd {

namespace {

constexpr double kEarthRadiusKm = 6371.0;
constexpr double kDegToRad = 3.141592653589793238462643383279502884 / 180.0;

double haversine_km(double lon1, double lat1, double lon2, double lat2) {
    const double phi1 = lat1 * kDegToRad;
    const double phi2 = lat2 * kDegToRad;
    const double dphi = (lat2 - lat1) * kDegToRad;
    const double dlam = (lon2 - lon1) * kDegToRad;
    const double sp = std::sin(dphi / 2.0);
    const double sl = std::sin(dlam / 2.0);
    const double a = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
    return 2.0 * kEarthRadiusKm * std::atan2(std::sqrt(a), std::sqrt(1.0 - a));
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

bool parse_double(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool is_numeric_label(const std::string& s) {
    if (s.empty() || s.size() > 19) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

} // namespace

double GeoGraph::distance(NodeId i, NodeId j) const {
    check_node(i);
    check_node(j);
    const double dx = xs_[i] - xs_[j];
    const double dy = ys_[i] - ys_[j];
    if (metric_ == DistanceMetric::Euclidean)
        return std::sqrt(dx * dx + dy * dy);
    return haversine_km(xs_[i], ys_[i], xs_[j], ys_[j]);
}

GeoGraph GeoGraph::build(const std::vector<std::pair<std::string, std::string>>& edges,
                         const std::vector<std::tuple<std::string, double, double>>& locations,
                         DistanceMetric metric) {
    GeoGraph g;
    g.metric_ = metric;

    // Internal ids follow a canonical ordering of the external labels
    // (numeric when every label is an integer, lexicographic otherwise), so
    // the loaded graph does not depend on the line order of the input files.
    for (const auto& [la, lb] : edges) {
        g.labels_.push_back(la);
        g.labels_.push_back(lb);
    }
    std::sort(g.labels_.begin(), g.labels_.end());
    g.labels_.erase(std::unique(g.labels_.begin(), g.labels_.end()), g.labels_.end());
    if (g.labels_.empty()) throw DataError("empty graph: no nodes in edge list");

    g.numeric_labels_ = std::all_of(g.labels_.begin(), g.labels_.end(), is_numeric_label);
    if (g.numeric_labels_) {
        std::sort(g.labels_.begin(), g.labels_.end(),
                  [](const std::string& a, const std::string& b) {
                      if (a.size() != b.size()) return a.size() < b.size();
                      return a < b;
                  });
    }
    g.label_to_id_.reserve(g.labels_.size());
    for (NodeId id = 0; id < g.labels_.size(); ++id) g.label_to_id_.emplace(g.labels_[id], id);

    // Self-loops register the node above but contribute no edge.
    std::vector<std::pair<NodeId, NodeId>> edge_ids;
    edge_ids.reserve(edges.size());
    for (const auto& [la, lb] : edges) {
        NodeId a = g.label_to_id_.at(la);
        NodeId b = g.label_to_id_.at(lb);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        edge_ids.emplace_back(a, b);
    }

    g.xs_.assign(g.labels_.size(), 0.0);
    g.ys_.assign(g.labels_.size(), 0.0);
    std::vector<std::uint8_t> located(g.labels_.size(), 0);
    for (const auto& [label, x, y] : locations) {
        auto it = g.label_to_id_.find(label);
        if (it == g.label_to_id_.end())
            throw DataError("node " + label + " has a location but appears in no edge-file line");
        if (located[it->second])
            throw DataError("node " + label + " has more than one location");
        located[it->second] = 1;
        g.xs_[it->second] = x;
        g.ys_[it->second] = y;
    }
    for (NodeId v = 0; v < located.size(); ++v)
        if (!located[v])
            throw DataError("node " + g.labels_[v] + " appears in the edge list but has no location");

    std::sort(edge_ids.begin(), edge_ids.end());
    edge_ids.erase(std::unique(edge_ids.begin(), edge_ids.end()), edge_ids.end());

    g.adjacency_.assign(g.labels_.size(), {});
    for (const auto& [a, b] : edge_ids) {
        g.adjacency_[a].push_back(b);
        g.adjacency_[b].push_back(a);
    }
    for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
    g.edge_count_ = edge_ids.size();
    return g;
}

GeoGraph load_graph(const std::string& edge_path, const std::string& location_path,
                    DistanceMetric metric) {
    std::ifstream ef(edge_path);
    if (!ef) throw DataError("cannot open edge file: " + edge_path);

    std::vector<std::pair<std::string, std::string>> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ef, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '#') continue;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks.size() != 2)
            throw DataError(edge_path + ":" + std::to_string(lineno) +
                            ": expected two node labels, got " + std::to_string(toks.size()) +
                            " fields");
        edges.emplace_back(std::move(toks[0]), std::move(toks[1]));
    }

    std::ifstream lf(location_path);
    if (!lf) throw DataError("cannot open location file: " + location_path);

    std::vector<std::tuple<std::string, double, double>> locations;
    lineno = 0;
    while (std::getline(lf, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '#') continue;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        double x = 0.0, y = 0.0;
        if (toks.size() != 3 || !parse_double(toks[1], x) || !parse_double(toks[2], y))
            throw DataError(location_path + ":" + std::to_string(lineno) +
                            ": expected 'label x y'");
        locations.emplace_back(std::move(toks[0]), x, y);
    }

    return GeoGraph::build(edges, locations, metric);
}

} // namespace slcd
