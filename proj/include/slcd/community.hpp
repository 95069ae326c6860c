#pragma once

#include "slcd/geograph.hpp"

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

namespace slcd {

// Exact e_in/e_out ratio, compared by cross-multiplication so that equal
// modularities are detected exactly (no floating-point ratio rounding).
// e_out == 0 with e_in > 0 normalizes to the +infinity sentinel (1, 0);
// e_in == 0 normalizes to zero (0, 1).
struct ModularityRatio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static ModularityRatio of(std::int64_t e_in, std::int64_t e_out) {
        if (e_in == 0) return {0, 1};
        if (e_out == 0) return {1, 0};
        return {e_in, e_out};
    }

    bool infinite() const { return den == 0; }

    double value() const {
        if (den == 0) return std::numeric_limits<double>::infinity();
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

// -1, 0, +1 for a < b, a == b, a > b. Counts stay below ~1e9, so the
// cross products fit comfortably in 64 bits.
inline int compare(ModularityRatio a, ModularityRatio b) {
    const std::int64_t lhs = a.num * b.den;
    const std::int64_t rhs = b.num * a.den;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

struct Objectives {
    ModularityRatio m;
    double s = -std::numeric_limits<double>::infinity(); // -inf for singletons
};

class Community;
using CommunityPtr = std::shared_ptr<const Community>;

// A connected node set grown from a query node, with incrementally maintained
// edge counters, pairwise-distance sum, and frontier. Immutable value:
// expand() produces a new community and leaves the input untouched.
class Community {
public:
    const std::vector<NodeId>& members() const { return members_; }   // sorted
    const std::vector<NodeId>& frontier() const { return frontier_; } // sorted
    std::size_t size() const { return members_.size(); }

    std::int64_t internal_edges() const { return e_in_; }
    std::int64_t boundary_edges() const { return e_out_; }
    double pair_distance_sum() const { return dist_sum_; }

    bool contains(NodeId v) const;
    bool in_frontier(NodeId v) const;

    const Objectives& objectives() const { return objectives_; }

    // Commutative 64-bit digest of the member set, used for hash buckets.
    // Deduplication always confirms with an exact member comparison, so a
    // digest collision cannot merge distinct communities.
    std::uint64_t key_hash() const { return key_hash_; }

    // Frontier size of the community this one was derived from (its own
    // frontier size for a seed singleton); used by the parent-frontier
    // pruning variant.
    std::uint32_t parent_frontier_size() const { return parent_frontier_size_; }

    static CommunityPtr from_parts(std::vector<NodeId> members, std::vector<NodeId> frontier,
                                   std::int64_t e_in, std::int64_t e_out, double dist_sum);

private:
    friend CommunityPtr singleton(const AccessScope&, NodeId);
    friend CommunityPtr expand(const AccessScope&, const Community&, NodeId);
    friend CommunityPtr community_from_members(const AccessScope&, std::vector<NodeId>);

    Community() = default;

    std::vector<NodeId> members_;
    std::vector<NodeId> frontier_;
    std::int64_t e_in_ = 0;
    std::int64_t e_out_ = 0;
    double dist_sum_ = 0.0;
    std::uint64_t key_hash_ = 0;
    std::uint32_t parent_frontier_size_ = 0;
    Objectives objectives_;
};

// {v} with frontier N_v, objectives (0, -inf).
CommunityPtr singleton(const AccessScope& g, NodeId v);

// c plus one frontier node u. Letting k = |N_u ∩ members|:
//   e_in += k, e_out += deg(u) - 2k, dist_sum += sum of d(u, member).
CommunityPtr expand(const AccessScope& g, const Community& c, NodeId u);

// From-scratch build for an arbitrary member set (evaluation path); counters
// and frontier are recomputed directly from the graph.
CommunityPtr community_from_members(const AccessScope& g, std::vector<NodeId> members);

std::uint64_t member_digest(const std::vector<NodeId>& sorted_members);

// Digest the expansion of c by u would have, without building it.
std::uint64_t child_key_hash(const Community& c, NodeId u);

// Does `child` equal `parent` with u inserted? Allocation-free membership
// probe used by derivation deduplication.
bool members_equal_plus(const std::vector<NodeId>& child, const std::vector<NodeId>& parent,
                        NodeId u);

// Lexicographic comparison of sorted member lists; the deterministic final
// tie-break of the dominance ordering.
int compare_members(const Community& a, const Community& b);
bool same_members(const Community& a, const Community& b);

} // namespace slcd
