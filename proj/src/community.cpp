#include "slcd/community.hpp"

#include <algorithm>
#include <cassert>

namespace slcd {

namespace {

// splitmix64 finalizer; summed per member so the digest is order-independent.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Objectives compute_objectives(std::size_t size, std::int64_t e_in, std::int64_t e_out,
                              double dist_sum) {
    Objectives obj;
    obj.m = ModularityRatio::of(e_in, e_out);
    if (size >= 2) {
        const double pairs = 0.5 * static_cast<double>(size) * static_cast<double>(size - 1);
        obj.s = -(dist_sum / pairs);
    }
    return obj;
}

bool sorted_contains(const std::vector<NodeId>& v, NodeId x) {
    return std::binary_search(v.begin(), v.end(), x);
}

} // namespace

bool Community::contains(NodeId v) const { return sorted_contains(members_, v); }
bool Community::in_frontier(NodeId v) const { return sorted_contains(frontier_, v); }

std::uint64_t member_digest(const std::vector<NodeId>& sorted_members) {
    std::uint64_t h = mix64(sorted_members.size());
    for (NodeId v : sorted_members) h += mix64(v);
    return h;
}

std::uint64_t child_key_hash(const Community& c, NodeId u) {
    return c.key_hash() - mix64(c.size()) + mix64(c.size() + 1) + mix64(u);
}

bool members_equal_plus(const std::vector<NodeId>& child, const std::vector<NodeId>& parent,
                        NodeId u) {
    if (child.size() != parent.size() + 1) return false;
    std::size_t ci = 0, pi = 0;
    bool seen_u = false;
    while (ci < child.size()) {
        if (!seen_u && (pi == parent.size() || u < parent[pi])) {
            if (child[ci] != u) return false;
            seen_u = true;
            ++ci;
        } else {
            if (pi >= parent.size() || child[ci] != parent[pi]) return false;
            ++ci;
            ++pi;
        }
    }
    return seen_u && pi == parent.size();
}

int compare_members(const Community& a, const Community& b) {
    const auto& ma = a.members();
    const auto& mb = b.members();
    if (auto c = std::lexicographical_compare_three_way(ma.begin(), ma.end(), mb.begin(), mb.end());
        c != 0)
        return c < 0 ? -1 : 1;
    return 0;
}

bool same_members(const Community& a, const Community& b) {
    return a.key_hash() == b.key_hash() && a.members() == b.members();
}

CommunityPtr singleton(const AccessScope& g, NodeId v) {
    auto nbrs = g.neighbors(v);
    auto c = std::shared_ptr<Community>(new Community());
    c->members_ = {v};
    c->frontier_.assign(nbrs.begin(), nbrs.end());
    c->e_in_ = 0;
    c->e_out_ = static_cast<std::int64_t>(nbrs.size());
    c->dist_sum_ = 0.0;
    c->key_hash_ = member_digest(c->members_);
    c->parent_frontier_size_ = static_cast<std::uint32_t>(c->frontier_.size());
    c->objectives_ = compute_objectives(1, c->e_in_, c->e_out_, 0.0);
    return c;
}

CommunityPtr expand(const AccessScope& g, const Community& c, NodeId u) {
    if (!c.in_frontier(u))
        throw DataError("expand: node " + std::to_string(u) + " is not in the frontier");

    auto nbrs = g.neighbors(u);
    std::int64_t inward = 0;
    for (NodeId w : nbrs)
        if (c.contains(w)) ++inward;

    auto out = std::shared_ptr<Community>(new Community());

    out->members_.reserve(c.members_.size() + 1);
    auto pos = std::lower_bound(c.members_.begin(), c.members_.end(), u);
    out->members_.insert(out->members_.end(), c.members_.begin(), pos);
    out->members_.push_back(u);
    out->members_.insert(out->members_.end(), pos, c.members_.end());

    out->e_in_ = c.e_in_ + inward;
    out->e_out_ = c.e_out_ + static_cast<std::int64_t>(nbrs.size()) - 2 * inward;
    assert(out->e_out_ >= 0);

    // Members iterated in ascending id order so the accumulation is
    // reproducible run to run.
    double sum = c.dist_sum_;
    for (NodeId w : c.members_) sum += g.distance(u, w);
    out->dist_sum_ = sum;

    // N_{C'} = N_C ∪ N_u − C'  (merge of two sorted ranges, members excluded)
    out->frontier_.reserve(c.frontier_.size() + nbrs.size());
    auto fit = c.frontier_.begin();
    auto nit = nbrs.begin();
    auto emit = [&](NodeId w) {
        if (w != u && !out->contains(w)) out->frontier_.push_back(w);
    };
    while (fit != c.frontier_.end() || nit != nbrs.end()) {
        if (nit == nbrs.end() || (fit != c.frontier_.end() && *fit < *nit)) {
            emit(*fit++);
        } else if (fit == c.frontier_.end() || *nit < *fit) {
            emit(*nit++);
        } else {
            emit(*fit);
            ++fit;
            ++nit;
        }
    }

    out->key_hash_ = c.key_hash_ - mix64(c.members_.size()) + mix64(out->members_.size()) + mix64(u);
    out->parent_frontier_size_ = static_cast<std::uint32_t>(c.frontier_.size());
    out->objectives_ =
        compute_objectives(out->members_.size(), out->e_in_, out->e_out_, out->dist_sum_);
    return out;
}

CommunityPtr community_from_members(const AccessScope& g, std::vector<NodeId> members) {
    if (members.empty()) throw DataError("community must contain at least one node");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());

    auto c = std::shared_ptr<Community>(new Community());
    c->members_ = std::move(members);

    std::int64_t degree_sum = 0;
    std::vector<NodeId> frontier;
    for (NodeId v : c->members_) {
        auto nbrs = g.neighbors(v);
        degree_sum += static_cast<std::int64_t>(nbrs.size());
        for (NodeId w : nbrs) {
            if (c->contains(w)) {
                if (w > v) ++c->e_in_;
            } else {
                frontier.push_back(w);
            }
        }
    }
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    c->frontier_ = std::move(frontier);
    c->e_out_ = degree_sum - 2 * c->e_in_;

    double sum = 0.0;
    for (std::size_t i = 0; i < c->members_.size(); ++i)
        for (std::size_t j = i + 1; j < c->members_.size(); ++j)
            sum += g.distance(c->members_[i], c->members_[j]);
    c->dist_sum_ = sum;

    c->key_hash_ = member_digest(c->members_);
    c->parent_frontier_size_ = static_cast<std::uint32_t>(c->frontier_.size());
    c->objectives_ = compute_objectives(c->members_.size(), c->e_in_, c->e_out_, c->dist_sum_);
    return c;
}

CommunityPtr Community::from_parts(std::vector<NodeId> members, std::vector<NodeId> frontier,
                                   std::int64_t e_in, std::int64_t e_out, double dist_sum) {
    auto c = std::shared_ptr<Community>(new Community());
    std::sort(members.begin(), members.end());
    std::sort(frontier.begin(), frontier.end());
    c->members_ = std::move(members);
    c->frontier_ = std::move(frontier);
    c->e_in_ = e_in;
    c->e_out_ = e_out;
    c->dist_sum_ = dist_sum;
    c->key_hash_ = member_digest(c->members_);
    c->parent_frontier_size_ = static_cast<std::uint32_t>(c->frontier_.size());
    c->objectives_ = compute_objectives(c->members_.size(), e_in, e_out, dist_sum);
    return c;
}

} // namespace slcd
