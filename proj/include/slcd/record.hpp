#pragma once

#include "slcd/engine.hpp"
#include "slcd/metrics.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace slcd {

// One self-describing result line. M is serialized as the exact integer pair
// (m_num, m_den) plus a decimal convenience field; non-finite values are
// emitted as null with an entry in skip_reasons, never as NaN/inf literals.
struct ResultRecord {
    std::string algo;
    std::string node;
    std::vector<std::string> members;
    std::int64_t m_num = 0;
    std::int64_t m_den = 1;
    double s = 0.0;
    bool s_finite = true;
    CommunityMetrics metrics;
    std::int64_t iterations = 0;
    std::int64_t derived_total = 0;
    double runtime_seconds = 0.0;
    bool timed_out = false;
    std::int64_t accessed_nodes = 0;
};

// Member labels in numeric order when every label is an integer, otherwise
// lexicographic.
std::vector<std::string> member_labels(const GeoGraph& g, const Community& c);

ResultRecord make_record(const GeoGraph& g, const std::string& algo, const std::string& node,
                         const DetectionResult& result, const CommunityMetrics& metrics);

nlohmann::ordered_json to_json(const ResultRecord& record);
std::string to_json_line(const ResultRecord& record);

} // namespace slcd
