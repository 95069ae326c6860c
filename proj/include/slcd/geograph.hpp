#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace slcd {

using NodeId = std::uint32_t;

enum class DistanceMetric { Euclidean, Haversine };

// Malformed or inconsistent input data. The CLI maps this to exit code 3.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration (bad flag combinations etc.). CLI exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Set of nodes touched during one detection run. Any adjacency or location
// read counts as touching that node. Single-writer, reset per run.
class AccessLog {
public:
    explicit AccessLog(std::size_t node_count) : touched_(node_count, 0) {}

    void touch(NodeId v) {
        if (!touched_[v]) {
            touched_[v] = 1;
            ++count_;
        }
    }

    bool was_touched(NodeId v) const { return touched_[v] != 0; }
    std::size_t count() const { return count_; }

    std::vector<NodeId> touched_nodes() const {
        std::vector<NodeId> out;
        out.reserve(count_);
        for (NodeId v = 0; v < touched_.size(); ++v)
            if (touched_[v]) out.push_back(v);
        return out;
    }

private:
    std::vector<std::uint8_t> touched_;
    std::size_t count_ = 0;
};

// Undirected simple graph with one 2-D location per node. Immutable after
// construction and safe to share across concurrent detection runs.
//
// External labels are remapped to dense internal ids in first-seen edge-file
// order; the label map is retained for output.
class GeoGraph {
public:
    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    DistanceMetric metric() const { return metric_; }

    // Sorted, self-loop-free adjacency.
    std::span<const NodeId> neighbors(NodeId v) const {
        check_node(v);
        return adjacency_[v];
    }

    std::size_t degree(NodeId v) const {
        check_node(v);
        return adjacency_[v].size();
    }

    std::pair<double, double> location(NodeId v) const {
        check_node(v);
        return {xs_[v], ys_[v]};
    }

    // Symmetric, non-negative. Kilometers under Haversine (x = longitude
    // degrees, y = latitude degrees), raw coordinate units under Euclidean.
    double distance(NodeId i, NodeId j) const;

    const std::string& label(NodeId v) const {
        check_node(v);
        return labels_[v];
    }

    std::optional<NodeId> find_label(const std::string& label) const {
        auto it = label_to_id_.find(label);
        if (it == label_to_id_.end()) return std::nullopt;
        return it->second;
    }

    NodeId require_label(const std::string& label) const {
        auto id = find_label(label);
        if (!id) throw DataError("unknown node label: " + label);
        return *id;
    }

    // True when every external label parses as a non-negative integer, in
    // which case member lists are reported in numeric label order.
    bool numeric_labels() const { return numeric_labels_; }

    // Builds a graph from in-memory data. Duplicate edges and self-loops are
    // dropped; a node present in only one of (edges, locations) is an error.
    static GeoGraph build(const std::vector<std::pair<std::string, std::string>>& edges,
                          const std::vector<std::tuple<std::string, double, double>>& locations,
                          DistanceMetric metric);

private:
    void check_node(NodeId v) const {
        if (v >= adjacency_.size())
            throw DataError("unknown node id " + std::to_string(v));
    }

    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<double> xs_, ys_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> label_to_id_;
    std::size_t edge_count_ = 0;
    bool numeric_labels_ = false;
    DistanceMetric metric_ = DistanceMetric::Euclidean;
};

// Parses the text formats described in the README:
//   edge file:     one edge per line, two whitespace-separated labels
//   location file: one node per line: label x y
// Lines beginning with '#' are ignored. A self-loop line registers the node
// and drops the edge, which is also how isolated nodes are expressed.
GeoGraph load_graph(const std::string& edge_path, const std::string& location_path,
                    DistanceMetric metric = DistanceMetric::Euclidean);

// Logged view of a graph for one detection run. `log` may be null for
// unaudited access (loaders, metrics, oracles).
struct AccessScope {
    const GeoGraph* graph = nullptr;
    AccessLog* log = nullptr;

    std::span<const NodeId> neighbors(NodeId v) const {
        if (log) log->touch(v);
        return graph->neighbors(v);
    }

    std::size_t degree(NodeId v) const {
        if (log) log->touch(v);
        return graph->degree(v);
    }

    double distance(NodeId i, NodeId j) const {
        if (log) {
            log->touch(i);
            log->touch(j);
        }
        return graph->distance(i, j);
    }
};

} // namespace slcd
