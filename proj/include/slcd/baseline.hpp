#pragma once

#include "slcd/engine.hpp"

namespace slcd {

// Structural-only greedy baseline: starting from {v}, repeatedly add the
// frontier node giving the largest strictly positive gain in local
// modularity M, ties broken by node id ascending; stop when no frontier
// addition increases M. Addition-only (no deletion phase).
DetectionResult detect_mgreedy(const GeoGraph& g, NodeId v, const DetectionConfig& cfg);

} // namespace slcd
