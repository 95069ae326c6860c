#pragma once

#include "slcd/community.hpp"

#include <vector>

namespace slcd {

// C1 dominates C2 iff M1 >= M2 and S1 > S2, or S1 >= S2 and M1 > M2.
// Never true when both objectives are equal.
bool dominates(const Objectives& c1, const Objectives& c2);

inline bool dominates(const Community& c1, const Community& c2) {
    return dominates(c1.objectives(), c2.objectives());
}

// Total order over communities: M descending, then S descending, then
// member list ascending. The final tie-break makes pool iteration and
// first-writer-wins deduplication deterministic.
bool dominance_order_less(const Community& a, const Community& b);

struct DominanceLess {
    bool operator()(const CommunityPtr& a, const CommunityPtr& b) const {
        return dominance_order_less(*a, *b);
    }
};

// Sort-and-sweep filtration. Collapses exact duplicates (first occurrence in
// `pool` wins), sorts by the dominance ordering, then removes every community
// dominated by its nearest retained predecessor. Returns exactly the
// nondominated communities, sorted; the first element has the maximum M.
std::vector<CommunityPtr> filter_nondominated(std::vector<CommunityPtr> pool);

} // namespace slcd
