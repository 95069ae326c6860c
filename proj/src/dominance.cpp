#include "slcd/dominance.hpp"

#include <algorithm>
#include <unordered_set>

namespace slcd {

bool dominates(const Objectives& c1, const Objectives& c2) {
    const int mc = compare(c1.m, c2.m);
    if (mc >= 0 && c1.s > c2.s) return true;
    if (c1.s >= c2.s && mc > 0) return true;
    return false;
}

bool dominance_order_less(const Community& a, const Community& b) {
    const auto& oa = a.objectives();
    const auto& ob = b.objectives();
    if (int c = compare(oa.m, ob.m); c != 0) return c > 0;
    if (oa.s != ob.s) return oa.s > ob.s;
    return compare_members(a, b) < 0;
}

namespace {

struct PtrHash {
    std::size_t operator()(const CommunityPtr& c) const {
        return static_cast<std::size_t>(c->key_hash());
    }
};

struct PtrEq {
    bool operator()(const CommunityPtr& a, const CommunityPtr& b) const {
        return same_members(*a, *b);
    }
};

} // namespace

std::vector<CommunityPtr> filter_nondominated(std::vector<CommunityPtr> pool) {
    if (pool.empty()) return {};

    std::unordered_set<CommunityPtr, PtrHash, PtrEq> seen;
    seen.reserve(pool.size());
    std::vector<CommunityPtr> unique;
    unique.reserve(pool.size());
    for (auto& c : pool)
        if (seen.insert(c).second) unique.push_back(std::move(c));

    std::sort(unique.begin(), unique.end(), DominanceLess{});

    // After the sort, anything that dominates a community also dominates it
    // through the nearest retained predecessor, so one comparison suffices.
    std::vector<CommunityPtr> out;
    out.reserve(unique.size());
    out.push_back(std::move(unique.front()));
    for (std::size_t i = 1; i < unique.size(); ++i) {
        if (!dominates(*out.back(), *unique[i])) out.push_back(std::move(unique[i]));
    }
    return out;
}

} // namespace slcd
