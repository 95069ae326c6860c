#include "slcd/baseline.hpp"

#include <chrono>

namespace slcd {

DetectionResult detect_mgreedy(const GeoGraph& g, NodeId v, const DetectionConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const auto deadline =
        start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(cfg.budget_seconds));

    AccessLog log(g.node_count());
    AccessScope scope{&g, &log};

    DetectionResult result;
    CommunityPtr current = singleton(scope, v);

    while (true) {
        if (cfg.max_community_size && current->size() >= *cfg.max_community_size) break;
        if (std::chrono::steady_clock::now() > deadline) {
            result.timed_out = true;
            break;
        }

        // Candidate M computed from the counter updates alone; the frontier
        // is sorted ascending, so a strict comparison keeps the lowest id on
        // ties.
        bool found = false;
        NodeId best_node = 0;
        ModularityRatio best_m{};
        for (NodeId u : current->frontier()) {
            auto nbrs = scope.neighbors(u);
            std::int64_t inward = 0;
            for (NodeId w : nbrs)
                if (current->contains(w)) ++inward;
            const std::int64_t e_in = current->internal_edges() + inward;
            const std::int64_t e_out = current->boundary_edges() +
                                       static_cast<std::int64_t>(nbrs.size()) - 2 * inward;
            const ModularityRatio m = ModularityRatio::of(e_in, e_out);
            ++result.derived_total;
            if (!found || compare(m, best_m) > 0) {
                found = true;
                best_node = u;
                best_m = m;
            }
        }

        if (!found || compare(best_m, current->objectives().m) <= 0) break;
        current = expand(scope, *current, best_node);
        ++result.iterations;
    }

    result.community = current;
    result.nd_final_size = 1;
    result.final_nd = {current};
    result.touched = log.touched_nodes();
    result.accessed_nodes = static_cast<std::int64_t>(result.touched.size());
    result.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace slcd
