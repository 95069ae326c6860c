#include "slcd/record.hpp"

#include <cmath>

namespace slcd {

std::vector<std::string> member_labels(const GeoGraph& g, const Community& c) {
    // internal ids follow the canonical label ordering, so the sorted member
    // list is already in label order
    std::vector<std::string> labels;
    labels.reserve(c.size());
    for (NodeId v : c.members()) labels.push_back(g.label(v));
    return labels;
}

ResultRecord make_record(const GeoGraph& g, const std::string& algo, const std::string& node,
                         const DetectionResult& result, const CommunityMetrics& metrics) {
    ResultRecord rec;
    rec.algo = algo;
    rec.node = node;
    rec.members = member_labels(g, *result.community);
    const auto& obj = result.community->objectives();
    rec.m_num = obj.m.num;
    rec.m_den = obj.m.den;
    rec.s = obj.s;
    rec.s_finite = std::isfinite(obj.s);
    rec.metrics = metrics;
    rec.iterations = result.iterations;
    rec.derived_total = result.derived_total;
    rec.runtime_seconds = result.runtime_seconds;
    rec.timed_out = result.timed_out;
    rec.accessed_nodes = result.accessed_nodes;
    return rec;
}

nlohmann::ordered_json to_json(const ResultRecord& rec) {
    nlohmann::ordered_json j;
    j["algo"] = rec.algo;
    j["node"] = rec.node;
    j["members"] = rec.members;
    j["m_num"] = rec.m_num;
    j["m_den"] = rec.m_den;
    if (rec.m_den != 0)
        j["m"] = static_cast<double>(rec.m_num) / static_cast<double>(rec.m_den);
    else
        j["m"] = nullptr;
    if (rec.s_finite)
        j["s"] = rec.s;
    else
        j["s"] = nullptr;

    nlohmann::ordered_json skips = nlohmann::ordered_json::object();
    auto put_metric = [&](const char* name, const MetricValue& v) {
        if (v.ok())
            j[name] = v.value;
        else {
            j[name] = nullptr;
            skips[name] = to_string(v.skip);
        }
    };
    put_metric("communitude", rec.metrics.communitude);
    put_metric("d_avg", rec.metrics.d_avg);
    put_metric("d_io", rec.metrics.d_io);
    put_metric("expansion", rec.metrics.expansion);

    j["iterations"] = rec.iterations;
    j["derived_total"] = rec.derived_total;
    j["runtime_s"] = rec.runtime_seconds;
    j["timed_out"] = rec.timed_out;
    j["accessed_nodes"] = rec.accessed_nodes;
    j["skip_reasons"] = skips;
    return j;
}

std::string to_json_line(const ResultRecord& rec) { return to_json(rec).dump(); }

} // namespace slcd
