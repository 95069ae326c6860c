#include "slcd/metrics.hpp"

#include <cmath>

namespace slcd {

const char* to_string(MetricSkip skip) {
    switch (skip) {
    case MetricSkip::None: return "none";
    case MetricSkip::SingletonCommunity: return "singleton_community";
    case MetricSkip::WholeComponent: return "whole_component";
    case MetricSkip::DegenerateDegrees: return "degenerate_degrees";
    case MetricSkip::ZeroDenominator: return "zero_denominator";
    }
    return "?";
}

MetricValue communitude(const GeoGraph& g, const Community& c) {
    const double m = static_cast<double>(g.edge_count());
    std::int64_t degree_sum = 0;
    for (NodeId v : c.members()) degree_sum += static_cast<std::int64_t>(g.degree(v));
    if (degree_sum == 0 || degree_sum == 2 * static_cast<std::int64_t>(g.edge_count()))
        return MetricValue::skipped(MetricSkip::DegenerateDegrees);

    const double frac = static_cast<double>(degree_sum) / (2.0 * m);
    const double expected = frac * frac;
    const double internal = static_cast<double>(c.internal_edges()) / m;
    return MetricValue::of((internal - expected) / std::sqrt(expected * (1.0 - expected)));
}

MetricValue d_avg(const GeoGraph&, const Community& c) {
    if (c.size() < 2) return MetricValue::skipped(MetricSkip::SingletonCommunity);
    return MetricValue::of(-c.objectives().s);
}

MetricValue d_io(const GeoGraph& g, const Community& c) {
    auto inner = d_avg(g, c);
    if (!inner.ok()) return inner;
    if (c.frontier().empty()) return MetricValue::skipped(MetricSkip::WholeComponent);

    double sum = 0.0;
    for (NodeId i : c.members())
        for (NodeId j : c.frontier()) sum += g.distance(i, j);
    const double denom =
        sum / (static_cast<double>(c.size()) * static_cast<double>(c.frontier().size()));
    if (denom == 0.0) return MetricValue::skipped(MetricSkip::ZeroDenominator);
    return MetricValue::of(inner.value / denom);
}

MetricValue expansion(const GeoGraph&, const Community& c) {
    return MetricValue::of(static_cast<double>(c.boundary_edges()) /
                           static_cast<double>(c.size()));
}

CommunityMetrics evaluate(const GeoGraph& g, const Community& c) {
    return {communitude(g, c), d_avg(g, c), d_io(g, c), expansion(g, c)};
}

} // namespace slcd
