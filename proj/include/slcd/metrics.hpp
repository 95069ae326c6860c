#pragma once

#include "slcd/community.hpp"

namespace slcd {

// Metrics that are undefined on degenerate inputs return a typed skip rather
// than a sentinel number, so batch averages can exclude them explicitly.
enum class MetricSkip {
    None,
    SingletonCommunity, // d_avg/d_io need at least two members
    WholeComponent,     // d_io needs a nonempty frontier
    DegenerateDegrees,  // communitude denominator vanishes (D[C] = 0 or 2m)
    ZeroDenominator,    // member-to-frontier distances sum to zero
};

const char* to_string(MetricSkip skip);

struct MetricValue {
    double value = 0.0;
    MetricSkip skip = MetricSkip::None;

    bool ok() const { return skip == MetricSkip::None; }

    static MetricValue of(double v) { return {v, MetricSkip::None}; }
    static MetricValue skipped(MetricSkip why) { return {0.0, why}; }
};

// (e[C]/m - (D[C]/2m)^2) / sqrt((D[C]/2m)^2 (1 - (D[C]/2m)^2))
// where m is the total edge count of the network and D[C] the degree sum of
// the members. Evaluation may read global graph facts; it is exempt from the
// locality contract.
MetricValue communitude(const GeoGraph& g, const Community& c);

// Mean pairwise member distance; equals -S exactly (shared code path).
MetricValue d_avg(const GeoGraph& g, const Community& c);

// d_avg divided by the mean member-to-frontier distance.
MetricValue d_io(const GeoGraph& g, const Community& c);

// Boundary edges per member.
MetricValue expansion(const GeoGraph& g, const Community& c);

struct CommunityMetrics {
    MetricValue communitude;
    MetricValue d_avg;
    MetricValue d_io;
    MetricValue expansion;
};

CommunityMetrics evaluate(const GeoGraph& g, const Community& c);

} // namespace slcd
