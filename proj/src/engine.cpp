#include "slcd/engine.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace slcd {

std::string algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::Sldr: return "sldr";
    case Algorithm::AppSldr: return "appsldr";
    case Algorithm::MGreedy: return "mgreedy";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
    if (name == "sldr") return Algorithm::Sldr;
    if (name == "appsldr") return Algorithm::AppSldr;
    if (name == "mgreedy") return Algorithm::MGreedy;
    return std::nullopt;
}

Fraction parse_fraction(const std::string& text) {
    auto bad = [&] { return UsageError("invalid fraction: " + text); };
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::int64_t num = 0, den = 0;
        auto r1 = std::from_chars(text.data(), text.data() + slash, num);
        auto r2 = std::from_chars(text.data() + slash + 1, text.data() + text.size(), den);
        if (r1.ec != std::errc() || r2.ec != std::errc() ||
            r1.ptr != text.data() + slash || r2.ptr != text.data() + text.size())
            throw bad();
        if (num <= 0 || den <= 0 || num > den) throw bad();
        return {num, den};
    }
    // decimal: digits and at most one dot, converted exactly to num/10^k
    std::int64_t num = 0, den = 1;
    bool seen_dot = false, seen_digit = false;
    for (char ch : text) {
        if (ch == '.') {
            if (seen_dot) throw bad();
            seen_dot = true;
        } else if (ch >= '0' && ch <= '9') {
            if (num > (1LL << 50)) throw bad();
            num = num * 10 + (ch - '0');
            if (seen_dot) den *= 10;
            seen_digit = true;
        } else {
            throw bad();
        }
    }
    if (!seen_digit || num <= 0 || num > den) throw bad();
    return {num, den};
}

DetectionConfig DetectionConfig::sldr() {
    DetectionConfig cfg;
    cfg.algorithm = Algorithm::Sldr;
    cfg.prune_fraction = {1, 1};
    return cfg;
}

DetectionConfig DetectionConfig::appsldr() {
    DetectionConfig cfg;
    cfg.algorithm = Algorithm::AppSldr;
    cfg.prune_fraction = {1, 3};
    return cfg;
}

void DetectionConfig::validate() const {
    if (prune_fraction.num <= 0 || prune_fraction.den <= 0 ||
        prune_fraction.num > prune_fraction.den)
        throw UsageError("prune fraction must lie in (0, 1]");
    if (algorithm == Algorithm::Sldr && !prune_fraction.is_one())
        throw UsageError("sldr expands the full frontier; the prune fraction is fixed at 1");
    if (budget_seconds < 0.0) throw UsageError("budget must be non-negative");
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

using KeySet = std::unordered_set<CommunityPtr, PtrHash, PtrEq>;

// Checks candidate children against already-derived ones without
// materializing the candidate's member list.
class DeriveDedup {
public:
    bool known(const Community& parent, NodeId u) const {
        auto it = buckets_.find(child_key_hash(parent, u));
        if (it == buckets_.end()) return false;
        for (const auto& existing : it->second)
            if (members_equal_plus(existing->members(), parent.members(), u)) return true;
        return false;
    }

    void insert(const CommunityPtr& child) { buckets_[child->key_hash()].push_back(child); }

private:
    std::unordered_map<std::uint64_t, std::vector<CommunityPtr>> buckets_;
};

} // namespace

std::vector<NodeId> expansion_targets(const AccessScope& g, const Community& c,
                                      const DetectionConfig& cfg) {
    const auto& frontier = c.frontier();
    if (cfg.prune_fraction.is_one())
        return {frontier.begin(), frontier.end()};

    const std::size_t base = cfg.prune_source == PruneSource::ParentFrontier
                                 ? c.parent_frontier_size()
                                 : frontier.size();
    std::size_t k = cfg.prune_fraction.ceil_of(base);
    if (k > frontier.size()) k = frontier.size();
    if (k == frontier.size()) return {frontier.begin(), frontier.end()};

    // inward ratio = |N_u ∩ C| / (deg(u) - |N_u ∩ C|); out-degree 0 means
    // +infinity. Compared exactly by cross-multiplication.
    struct Ranked {
        NodeId node;
        std::int64_t inward;
        std::int64_t out;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(frontier.size());
    for (NodeId u : frontier) {
        auto nbrs = g.neighbors(u);
        std::int64_t inward = 0;
        for (NodeId w : nbrs)
            if (c.contains(w)) ++inward;
        ranked.push_back({u, inward, static_cast<std::int64_t>(nbrs.size()) - inward});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        const std::int64_t lhs = a.inward * b.out;
        const std::int64_t rhs = b.inward * a.out;
        if (lhs != rhs) return lhs > rhs;
        return a.node < b.node;
    });

    std::vector<NodeId> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(ranked[i].node);
    return out;
}

DeriveOutcome derive(const AccessScope& g, const std::vector<CommunityPtr>& parents,
                     const DetectionConfig& cfg, std::optional<Deadline> deadline) {
    DeriveOutcome result;
    DeriveDedup seen;
    int since_check = 0;
    for (const auto& parent : parents) {
        if (deadline && std::chrono::steady_clock::now() > *deadline) {
            result.completed = false;
            return result;
        }
        if (cfg.max_community_size && parent->size() >= *cfg.max_community_size) continue;

        for (NodeId u : expansion_targets(g, *parent, cfg)) {
            if (deadline && ++since_check >= 64) {
                since_check = 0;
                if (std::chrono::steady_clock::now() > *deadline) {
                    result.completed = false;
                    return result;
                }
            }
            // membership test before paying for the expansion
            if (seen.known(*parent, u)) continue;
            auto child = expand(g, *parent, u);
            seen.insert(child);
            result.derived.push_back(std::move(child));
        }
    }
    return result;
}

CommunityPtr select_final(const std::vector<CommunityPtr>& nd) {
    if (nd.empty()) throw DataError("select_final: empty nondominated pool");
    return nd[(nd.size() + 1) / 2 - 1];
}

DetectionResult detect(const GeoGraph& g, NodeId v, const DetectionConfig& cfg) {
    cfg.validate();
    if (cfg.algorithm == Algorithm::MGreedy)
        throw UsageError("detect() runs sldr/appsldr; use detect_mgreedy for the baseline");

    const auto start = std::chrono::steady_clock::now();
    const Deadline deadline =
        start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(cfg.budget_seconds));

    AccessLog log(g.node_count());
    AccessScope scope{&g, &log};

    DetectionResult result;
    auto seed = singleton(scope, v);
    std::vector<CommunityPtr> nd{seed};
    std::vector<CommunityPtr> nde{seed};
    std::vector<CommunityPtr> hnd;

    while (!nde.empty()) {
        if (std::chrono::steady_clock::now() > deadline) {
            result.timed_out = true;
            break;
        }
        ++result.iterations;

        auto outcome = derive(scope, nde, cfg, deadline);
        if (!outcome.completed) {
            // in-flight derivation results are discarded; selection falls
            // back to the current ND
            result.timed_out = true;
            break;
        }
        result.derived_total += static_cast<std::int64_t>(outcome.derived.size());

        // ND instances precede D so that an already-known community keeps its
        // original cached state when the same member set is re-derived.
        std::vector<CommunityPtr> pool;
        pool.reserve(nd.size() + outcome.derived.size());
        pool.insert(pool.end(), nd.begin(), nd.end());
        pool.insert(pool.end(), outcome.derived.begin(), outcome.derived.end());

        auto new_nd = filter_nondominated(std::move(pool));

        KeySet previously_known;
        previously_known.reserve(hnd.size() + nde.size());
        for (const auto& c : hnd) previously_known.insert(c);
        for (const auto& c : nde) previously_known.insert(c);

        // HND ← (ND ∩ HND) ∪ (NDE ∩ ND); NDE ← ND − HND
        std::vector<CommunityPtr> new_hnd, new_nde;
        for (const auto& c : new_nd) {
            if (previously_known.count(c))
                new_hnd.push_back(c);
            else
                new_nde.push_back(c);
        }

        if (cfg.keep_trace)
            result.trace.push_back({std::move(outcome.derived), new_nd, new_hnd, new_nde});

        nd = std::move(new_nd);
        hnd = std::move(new_hnd);
        nde = std::move(new_nde);
    }

    result.community = select_final(nd);
    result.nd_final_size = static_cast<std::int64_t>(nd.size());
    result.final_nd = std::move(nd);
    result.final_hnd = std::move(hnd);
    result.touched = log.touched_nodes();
    result.accessed_nodes = static_cast<std::int64_t>(result.touched.size());
    result.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<NodeId> locality_violations(const GeoGraph& g, const DetectionResult& result) {
    std::vector<std::uint8_t> allowed(g.node_count(), 0);
    std::vector<NodeId> frontier_nodes;

    auto admit_pool = [&](const std::vector<CommunityPtr>& pool) {
        for (const auto& c : pool) {
            for (NodeId m : c->members()) allowed[m] = 1;
            for (NodeId f : c->frontier()) {
                allowed[f] = 1;
                frontier_nodes.push_back(f);
            }
        }
    };
    admit_pool(result.final_nd);
    admit_pool(result.final_hnd);

    // frontier-of-frontier: degree/location lookups made while ranking and
    // expanding candidates
    std::sort(frontier_nodes.begin(), frontier_nodes.end());
    frontier_nodes.erase(std::unique(frontier_nodes.begin(), frontier_nodes.end()),
                         frontier_nodes.end());
    for (NodeId f : frontier_nodes)
        for (NodeId w : g.neighbors(f)) allowed[w] = 1;

    std::vector<NodeId> violations;
    for (NodeId v : result.touched)
        if (!allowed[v]) violations.push_back(v);
    return violations;
}

} // namespace slcd
