// Brute-force reference implementations used across the test suite. These
// recompute everything naively from raw graph accessors and share no code
// with the incremental production paths they check.
#pragma once

#include "slcd/geograph.hpp"

#include <cstdint>
#include <vector>

namespace oracle {

struct Recount {
    std::int64_t e_in = 0;
    std::int64_t e_out = 0;
    double dist_sum = 0.0;
    std::vector<slcd::NodeId> frontier; // sorted
};

// Exhaustive recount of edge counters, pairwise distances, and frontier for
// an arbitrary member set.
Recount recount(const slcd::GeoGraph& g, const std::vector<slcd::NodeId>& members);

// Objective values as used by the dominance definition: an exact integer
// pair for M (den == 0 encodes +infinity) and a double for S (-infinity for
// singletons).
struct Point {
    std::int64_t m_num = 0;
    std::int64_t m_den = 1;
    double s = 0.0;
};

Point objectives(const slcd::GeoGraph& g, const std::vector<slcd::NodeId>& members);
Point point_from_counts(std::int64_t e_in, std::int64_t e_out, double dist_sum,
                        std::size_t size);

bool dominates(const Point& a, const Point& b);

// All-pairs nondominated subset: returns the indices of items dominated by
// no other item. Exact duplicates must be removed by the caller first.
std::vector<std::size_t> nondominated_indices(const std::vector<Point>& points);

struct Metrics {
    bool communitude_ok = false;
    double communitude = 0.0;
    bool d_avg_ok = false;
    double d_avg = 0.0;
    bool d_io_ok = false;
    double d_io = 0.0;
    double expansion = 0.0;
};

Metrics metrics(const slcd::GeoGraph& g, const std::vector<slcd::NodeId>& members);

} // namespace oracle
