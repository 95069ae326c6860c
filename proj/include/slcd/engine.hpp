#pragma once

#include "slcd/community.hpp"
#include "slcd/dominance.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace slcd {

enum class Algorithm { Sldr, AppSldr, MGreedy };

std::string algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(const std::string& name);

// Which frontier size the pruned-expansion count is taken from. OwnFrontier
// uses the community's own frontier (self-consistent for the seed singleton);
// ParentFrontier uses the frontier size of the community it was derived from.
enum class PruneSource { OwnFrontier, ParentFrontier };

// Exact rational in (0, 1]; the pruned expansion count is
// ceil(frontier_size * num / den), computed in integer arithmetic.
struct Fraction {
    std::int64_t num = 1;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_one() const { return num == den; }

    std::size_t ceil_of(std::size_t count) const {
        if (count == 0) return 0;
        const std::int64_t n = static_cast<std::int64_t>(count) * num;
        return static_cast<std::size_t>((n + den - 1) / den);
    }
};

// Parses "1/3" or a decimal such as "0.5" into an exact fraction.
Fraction parse_fraction(const std::string& text);

struct DetectionConfig {
    Algorithm algorithm = Algorithm::Sldr;
    Fraction prune_fraction{1, 1}; // fixed at 1 for Sldr; 1/3 default for AppSldr
    PruneSource prune_source = PruneSource::OwnFrontier;
    double budget_seconds = 7200.0;
    std::optional<std::size_t> max_community_size;
    std::uint64_t seed = 0; // reserved; detection itself is deterministic
    bool keep_trace = false;

    static DetectionConfig sldr();
    static DetectionConfig appsldr();

    void validate() const; // throws UsageError
};

// Pool states captured after one derivation/filtration loop.
struct LoopSnapshot {
    std::vector<CommunityPtr> derived; // D
    std::vector<CommunityPtr> nd;
    std::vector<CommunityPtr> hnd;
    std::vector<CommunityPtr> nde;
};

struct DetectionResult {
    CommunityPtr community;
    std::int64_t iterations = 0;
    std::int64_t derived_total = 0;
    double runtime_seconds = 0.0;
    bool timed_out = false;
    std::int64_t nd_final_size = 0;
    std::int64_t accessed_nodes = 0;

    std::vector<CommunityPtr> final_nd;
    std::vector<CommunityPtr> final_hnd;
    std::vector<NodeId> touched;        // from the run's AccessLog
    std::vector<LoopSnapshot> trace;    // populated when keep_trace is set
};

using Deadline = std::chrono::steady_clock::time_point;

struct DeriveOutcome {
    std::vector<CommunityPtr> derived;
    bool completed = true; // false when the deadline interrupted derivation
};

// One community-derivation pass: for each parent, expands every node of its
// expansion set and deduplicates children by member set (first writer wins;
// parents are visited in dominance order). With prune fraction 1 the
// expansion set is the full frontier; otherwise the top ceil(|N_C| * frac)
// frontier nodes by inward ratio (descending, ties by node id).
DeriveOutcome derive(const AccessScope& g, const std::vector<CommunityPtr>& parents,
                     const DetectionConfig& cfg,
                     std::optional<Deadline> deadline = std::nullopt);

// Frontier nodes of c ranked for pruned expansion, in emission order.
std::vector<NodeId> expansion_targets(const AccessScope& g, const Community& c,
                                      const DetectionConfig& cfg);

// The 1-based ceil(|nd|/2)-th community of nd, which must be sorted in
// dominance order. Throws on an empty pool.
CommunityPtr select_final(const std::vector<CommunityPtr>& nd);

// The main detection loop: derive from NDE, filter D ∪ ND, update HND/NDE,
// repeat until NDE empties or the budget runs out, then select the middle
// community of ND. cfg.algorithm must be Sldr or AppSldr.
DetectionResult detect(const GeoGraph& g, NodeId v, const DetectionConfig& cfg);

// Locality certificate: every node touched during the run must lie in the
// final ND ∪ HND member sets, their frontiers, or the neighbors of those
// frontiers. Returns the offending nodes (empty means the run was local).
std::vector<NodeId> locality_violations(const GeoGraph& g, const DetectionResult& result);

} // namespace slcd
