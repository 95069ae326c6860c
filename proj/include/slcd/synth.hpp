#pragma once

#include "slcd/geograph.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace slcd {

// Seedable generator with a portable output stream: raw 64-bit values come
// from std::mt19937_64 (whose sequence is pinned by the C++ standard) and all
// mappings to ranges are implemented here, never via std::distributions,
// whose streams vary between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform double in [0, 1) from the top 53 bits
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // unbiased integer in [0, n) by rejection
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

private:
    std::mt19937_64 gen_;
};

struct SynthConfig {
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    // R-MAT quadrant probabilities (top-left, top-right, bottom-left,
    // bottom-right); must sum to 1.
    std::array<double, 4> rmat_probs{0.45, 0.15, 0.15, 0.25};
    std::uint64_t seed = 1;

    void validate() const; // throws UsageError
};

struct SynthData {
    std::vector<std::pair<NodeId, NodeId>> edges; // canonical (u < v), sorted
    std::vector<std::pair<double, double>> locations;
};

// R-MAT edge sampling over the next power-of-two grid, rejecting self-loops,
// duplicates, and out-of-range endpoints until exactly n_edges distinct edges
// exist, plus an independent uniform location in [0,1)^2 per node. Identical
// seeds give identical output on every platform.
SynthData generate_data(const SynthConfig& cfg);

GeoGraph generate(const SynthConfig& cfg);

// Writes the edge/location text files. Nodes that ended up with no incident
// edge are recorded as self-loop lines so the two files always describe the
// same node set.
void write_graph_files(const SynthData& data, const std::string& edge_path,
                       const std::string& location_path);

// Even-stride sample over internal node ids: indices floor(k*|V|/count).
std::vector<NodeId> select_query_nodes(const GeoGraph& g, std::size_t count);

} // namespace slcd
