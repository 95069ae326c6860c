// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code is the failure count.
//
// The heavyweight criteria (5, 6, 9) drive the real CLI binary against a
// generated Syn1-scale graph; the path of the binary is baked in at
// configure time. Records land in a scratch directory under $TMPDIR.

#include "oracles.hpp"
#include "slcd/baseline.hpp"
#include "slcd/engine.hpp"
#include "slcd/metrics.hpp"
#include "slcd/record.hpp"
#include "slcd/synth.hpp"
#include "toy_fixture.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace slcd;

namespace {

struct CheckFailure {
    std::string what;
};

void require(bool cond, const std::string& what) {
    if (!cond) throw CheckFailure{what};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::set<std::vector<NodeId>> member_sets(const std::vector<CommunityPtr>& pool) {
    std::set<std::vector<NodeId>> out;
    for (const auto& c : pool) out.insert(c->members());
    return out;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SLCD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<json> read_records(const fs::path& path) {
    std::ifstream in(path);
    require(in.good(), "cannot read " + path.string());
    std::vector<json> out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(json::parse(line));
    return out;
}

// Shared scratch state across criteria.
struct Context {
    fs::path scratch;
    fs::path syn1_edges, syn1_locs;
    fs::path app_records_a; // criterion 5 AppSLDR run (reused by 9)
    double syn1_mean_davg_app = 0.0;

    GeoGraph load_syn1() const {
        return load_graph(syn1_edges.string(), syn1_locs.string());
    }
};

// ---------------------------------------------------------------- criterion 1
void criterion_toy_trace(Context&) {
    const auto start = std::chrono::steady_clock::now();
    auto g = fixture::build_toy_fixture();
    auto cfg = DetectionConfig::sldr();
    cfg.keep_trace = true;
    auto result = detect(g, fixture::A, cfg);

    using Sets = std::set<std::vector<NodeId>>;
    using fixture::A;
    using fixture::B;
    using fixture::C;
    using fixture::D;

    require(result.trace.size() >= 2, "trace has at least two loops");
    const auto& loop1 = result.trace[0];
    require(loop1.derived.size() == 5, "first-loop D has 5 communities");
    require(member_sets(loop1.nd) == Sets{{A, B}, {A, D}}, "first-loop ND = {ab, ad}");

    CommunityPtr ab;
    for (const auto& c : loop1.nd)
        if (c->members() == std::vector<NodeId>{A, B}) ab = c;
    require(ab != nullptr, "community {a,b} present");
    require(ab->objectives().m.num == 1 && ab->objectives().m.den == 6,
            "M_ab = 1/6 as an exact integer pair");
    require(std::abs(ab->objectives().s + 1.0) <= 1e-12, "S_ab = -1 within 1e-12");

    const auto& loop2 = result.trace[1];
    require(member_sets(loop2.hnd) == Sets{{A, B}, {A, D}}, "second-loop HND = {ab, ad}");
    require(member_sets(loop2.nde) == Sets{{A, B, C}, {A, B, D}, {A, C, D}},
            "second-loop NDE = {abc, abd, acd}");

    require(seconds_since(start) < 1.0, "runtime under 1 s");
}

// ---------------------------------------------------------------- criterion 2
void criterion_filtration_oracle(Context&) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(20241);
    std::size_t pools = 0;
    for (; pools < 1000; ++pools) {
        const std::size_t size = 1 + rng.next_below(200);
        std::vector<CommunityPtr> pool;
        pool.reserve(size + 4);
        const std::int64_t num_range = 1 + static_cast<std::int64_t>(rng.next_below(5));
        for (std::size_t i = 0; i < size; ++i) {
            const std::int64_t num = static_cast<std::int64_t>(rng.next_below(num_range));
            const std::int64_t den = 1 + static_cast<std::int64_t>(rng.next_below(4));
            double dist = 1.0 + static_cast<double>(rng.next_below(6));
            if (rng.next_below(3) == 0) dist += rng.next_unit();
            const NodeId base = static_cast<NodeId>(2 * i);
            pool.push_back(Community::from_parts({base, static_cast<NodeId>(base + 1)}, {},
                                                 num, den, dist));
        }
        // exact duplicates
        for (int k = 0; k < 2 && !pool.empty(); ++k) {
            const auto& c = pool[rng.next_below(pool.size())];
            pool.push_back(Community::from_parts(c->members(), {}, c->internal_edges(),
                                                 c->boundary_edges(), c->pair_distance_sum()));
        }

        auto got = filter_nondominated(pool);

        std::vector<CommunityPtr> unique;
        std::set<std::vector<NodeId>> seen;
        for (const auto& c : pool)
            if (seen.insert(c->members()).second) unique.push_back(c);
        std::vector<oracle::Point> points;
        for (const auto& c : unique)
            points.push_back(oracle::point_from_counts(c->internal_edges(), c->boundary_edges(),
                                                       c->pair_distance_sum(), c->size()));
        std::set<std::vector<NodeId>> expected;
        for (std::size_t idx : oracle::nondominated_indices(points))
            expected.insert(unique[idx]->members());

        require(member_sets(got) == expected,
                "pool " + std::to_string(pools) + " equals the all-pairs nondominated set");
    }
    require(pools >= 1000, "at least 1000 pools");
    require(seconds_since(start) < 30.0, "runtime under 30 s");
}

// ---------------------------------------------------------------- criterion 3
void criterion_incremental_state(Context&) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(333);
    int sequences = 0;
    for (int graph_round = 0; graph_round < 5; ++graph_round) {
        SynthConfig cfg;
        cfg.n_nodes = 200;
        cfg.n_edges = 700 + 50 * static_cast<std::size_t>(graph_round);
        cfg.seed = 100 + static_cast<std::uint64_t>(graph_round);
        auto g = generate(cfg);
        AccessScope scope{&g, nullptr};
        for (int seq = 0; seq < 40; ++seq, ++sequences) {
            NodeId v = static_cast<NodeId>(rng.next_below(g.node_count()));
            CommunityPtr c = singleton(scope, v);
            const int steps = 1 + static_cast<int>(rng.next_below(50));
            for (int i = 0; i < steps && !c->frontier().empty(); ++i)
                c = expand(scope, *c, c->frontier()[rng.next_below(c->frontier().size())]);

            auto truth = oracle::recount(g, c->members());
            require(c->internal_edges() == truth.e_in, "e_in matches recount exactly");
            require(c->boundary_edges() == truth.e_out, "e_out matches recount exactly");
            const double denom = std::max(1.0, std::abs(truth.dist_sum));
            require(std::abs(c->pair_distance_sum() - truth.dist_sum) / denom <= 1e-9,
                    "dist_sum within 1e-9 relative");
        }
    }
    require(sequences >= 200, "at least 200 growth sequences");
    require(seconds_since(start) < 60.0, "runtime under 60 s");
}

// ---------------------------------------------------------------- criterion 7
void criterion_selection_rule(Context&) {
    auto g = fixture::build_toy_fixture();
    AccessScope scope{&g, nullptr};
    SynthConfig cfg;
    cfg.n_nodes = 16;
    cfg.n_edges = 40;
    cfg.seed = 12;
    auto big = generate(cfg);
    AccessScope big_scope{&big, nullptr};
    for (std::size_t k = 1; k <= 9; ++k) {
        // singleton pools: objectives all tie, so the sorted order is the
        // member order and the expected pick is known in advance
        std::vector<CommunityPtr> nd;
        for (NodeId v = 0; v < k; ++v) nd.push_back(singleton(big_scope, v));
        auto sorted = filter_nondominated(nd);
        require(sorted.size() == k, "tied singleton pool keeps all entries");
        auto chosen = select_final(sorted);
        require(chosen->members() == std::vector<NodeId>{static_cast<NodeId>((k + 1) / 2 - 1)},
                "pool of " + std::to_string(k) + " selects element ceil(k/2)");
    }
}

// ---------------------------------------------------------------- criterion 8
void criterion_metric_correctness(Context&) {
    std::vector<std::pair<std::string, std::string>> tri_edges{
        {"0", "1"}, {"1", "2"}, {"0", "2"}, {"3", "4"}, {"4", "5"}, {"3", "5"}};
    std::vector<std::tuple<std::string, double, double>> tri_locs;
    for (int i = 0; i < 6; ++i) tri_locs.emplace_back(std::to_string(i), i, 0.0);
    auto tri = GeoGraph::build(tri_edges, tri_locs, DistanceMetric::Euclidean);
    AccessScope tri_scope{&tri, nullptr};
    auto one = community_from_members(tri_scope, {0, 1, 2});
    auto cv = communitude(tri, *one);
    require(cv.ok() && std::abs(cv.value - 0.5774) <= 1e-4,
            "two-triangle communitude = 0.5774 within 1e-4");

    SynthConfig cfg;
    cfg.n_nodes = 200;
    cfg.n_edges = 800;
    cfg.seed = 55;
    auto g = generate(cfg);
    AccessScope scope{&g, nullptr};
    Rng rng(7);
    int communities = 0;
    while (communities < 100) {
        NodeId v = static_cast<NodeId>(rng.next_below(g.node_count()));
        CommunityPtr c = singleton(scope, v);
        const std::size_t target = 2 + rng.next_below(12);
        while (c->size() < target && !c->frontier().empty())
            c = expand(scope, *c, c->frontier()[rng.next_below(c->frontier().size())]);
        if (c->size() < 2) continue;
        ++communities;

        auto got = evaluate(g, *c);
        auto want = oracle::metrics(g, c->members());
        require(got.d_avg.ok() == want.d_avg_ok, "d_avg definedness agrees");
        if (want.d_avg_ok)
            require(std::abs(got.d_avg.value - want.d_avg) <= 1e-9 * std::max(1.0, want.d_avg),
                    "d_avg within 1e-9");
        require(got.d_io.ok() == want.d_io_ok, "d_io definedness agrees");
        if (want.d_io_ok)
            require(std::abs(got.d_io.value - want.d_io) <= 1e-9 * std::max(1.0, want.d_io),
                    "d_io within 1e-9");
        if (want.communitude_ok)
            require(std::abs(got.communitude.value - want.communitude) <=
                        1e-9 * std::max(1.0, std::abs(want.communitude)),
                    "communitude within 1e-9");
        require(std::abs(got.expansion.value - want.expansion) <= 1e-9, "expansion within 1e-9");
    }

    // degenerate inputs produce typed skips and null JSON fields, never
    // non-finite numbers
    auto single = community_from_members(scope, {0});
    DetectionResult fake;
    fake.community = single;
    auto record = to_json(make_record(g, "sldr", "0", fake, evaluate(g, *single)));
    require(record["s"].is_null(), "singleton S serializes as null");
    require(record["d_avg"].is_null(), "singleton d_avg serializes as null");
    require(record["skip_reasons"].contains("d_avg"), "skip reason present");
    for (const auto& [key, value] : record.items()) {
        (void)key;
        if (value.is_number_float())
            require(std::isfinite(value.get<double>()), "no non-finite numbers in records");
    }
}

// ---------------------------------------------------------------- criterion 5
void criterion_directional_quality(Context& ctx) {
    const auto start = std::chrono::steady_clock::now();

    const auto app_out = ctx.scratch / "syn1_appsldr.jsonl";
    const auto greedy_out = ctx.scratch / "syn1_mgreedy.jsonl";
    const std::string graph_args =
        "--edges " + ctx.syn1_edges.string() + " --locations " + ctx.syn1_locs.string();

    require(run_cli("batch " + graph_args +
                    " --count 50 --algo appsldr --budget 600 --out " + app_out.string()) == 0,
            "appsldr batch succeeds");
    require(run_cli("batch " + graph_args +
                    " --count 50 --algo mgreedy --budget 600 --out " + greedy_out.string()) == 0,
            "mgreedy batch succeeds");

    auto read_mean = [](const fs::path& path, const char* metric) {
        auto records = read_records(path);
        const json& summary = records.back();
        require(summary.contains("summary"), "summary record present");
        require(summary["means"][metric].is_number(), std::string(metric) + " mean defined");
        return summary["means"][metric].get<double>();
    };
    const double app_mean = read_mean(app_out, "d_avg");
    const double greedy_mean = read_mean(greedy_out, "d_avg");
    require(app_mean < greedy_mean,
            "mean d_avg: appsldr " + std::to_string(app_mean) + " < mgreedy " +
                std::to_string(greedy_mean));

    ctx.app_records_a = app_out;
    ctx.syn1_mean_davg_app = app_mean;

    require(seconds_since(start) < 1800.0, "runtime under 30 min");
}

// ---------------------------------------------------------------- criterion 4
void criterion_locality(Context& ctx) {
    // Library-level detections elsewhere in the suite already assert an empty
    // locality_violations(); here the certificate is recomputed for a sample
    // of Syn1 queries (including the heavy hub node) and the touched-node cap
    // is checked on every AppSLDR record from criterion 5.
    std::ostringstream problems;

    auto toy = fixture::build_toy_fixture();
    auto toy_result = detect(toy, fixture::A, DetectionConfig::sldr());
    require(locality_violations(toy, toy_result).empty(), "toy run is local");

    auto g = ctx.load_syn1();
    auto queries = select_query_nodes(g, 50);
    for (std::size_t i = 0; i < queries.size(); i += 10) {
        auto result = detect(g, queries[i], DetectionConfig::appsldr());
        auto outside = locality_violations(g, result);
        if (!outside.empty())
            problems << " node " << g.label(queries[i]) << ": " << outside.size()
                     << " touched nodes outside closure(final ND u HND);";
    }

    require(!ctx.app_records_a.empty(), "criterion 5 records available");
    auto records = read_records(ctx.app_records_a);
    const double cap = 0.2 * static_cast<double>(g.node_count());
    for (const auto& rec : records) {
        if (rec.contains("summary")) continue;
        const double touched = rec["accessed_nodes"].get<double>();
        if (touched >= cap)
            problems << " node " << rec["node"].get<std::string>() << ": touched "
                     << static_cast<long long>(touched) << " >= 20% of |V|;";
    }

    require(problems.str().empty(), "locality certificate:" + problems.str());
}

// ---------------------------------------------------------------- criterion 6
void criterion_approximation_speed(Context& ctx) {
    const auto start = std::chrono::steady_clock::now();
    auto g = ctx.load_syn1();
    auto queries = select_query_nodes(g, 10);

    double sldr_total = 0.0, app_total = 0.0;
    std::ostringstream problems;
    for (NodeId v : queries) {
        auto scfg = DetectionConfig::sldr();
        scfg.budget_seconds = 300.0;
        auto full = detect(g, v, scfg);
        auto acfg = DetectionConfig::appsldr();
        acfg.budget_seconds = 300.0;
        auto app = detect(g, v, acfg);

        sldr_total += full.runtime_seconds;
        app_total += app.runtime_seconds;
        if (app.derived_total > full.derived_total)
            problems << " node " << g.label(v) << ": appsldr derived " << app.derived_total
                     << " > sldr " << full.derived_total
                     << (full.timed_out ? " (sldr timed out)" : " (both completed)") << ";";
    }
    if (app_total > sldr_total)
        problems << " total appsldr wall time " << app_total << " s > sldr " << sldr_total
                 << " s;";
    require(problems.str().empty(), "approximation speed:" + problems.str());
    require(seconds_since(start) < 7200.0, "runtime under 2 h");
}

// ---------------------------------------------------------------- criterion 9
void criterion_determinism(Context& ctx) {
    // criterion 1 rerun: serialized records byte-identical excluding runtime_s
    auto toy = fixture::build_toy_fixture();
    auto cfg = DetectionConfig::sldr();
    cfg.keep_trace = true;
    auto r1 = detect(toy, fixture::A, cfg);
    auto r2 = detect(toy, fixture::A, cfg);
    auto record_line = [&](const DetectionResult& r) {
        json j = to_json(make_record(toy, "sldr", "0", r, evaluate(toy, *r.community)));
        j.erase("runtime_s");
        return j.dump();
    };
    require(record_line(r1) == record_line(r2), "toy records byte-identical");
    require(member_sets(r1.final_nd) == member_sets(r2.final_nd), "toy final ND repeats");
    require(r1.touched == r2.touched, "toy access log repeats");

    // criterion 5 rerun: byte-identical records modulo runtime_s
    require(!ctx.app_records_a.empty(), "criterion 5 records available");
    const auto rerun_out = ctx.scratch / "syn1_appsldr_rerun.jsonl";
    const std::string graph_args =
        "--edges " + ctx.syn1_edges.string() + " --locations " + ctx.syn1_locs.string();
    require(run_cli("batch " + graph_args +
                    " --count 50 --algo appsldr --budget 600 --out " + rerun_out.string()) == 0,
            "appsldr rerun succeeds");

    auto a = read_records(ctx.app_records_a);
    auto b = read_records(rerun_out);
    require(a.size() == b.size(), "same record count");
    for (std::size_t i = 0; i < a.size(); ++i) {
        json ja = a[i], jb = b[i];
        ja.erase("runtime_s");
        jb.erase("runtime_s");
        require(ja == jb, "record " + std::to_string(i) + " identical excluding runtime_s");
    }
}

struct Criterion {
    int number;
    const char* title;
    std::function<void(Context&)> run;
};

} // namespace

int main() {
    Context ctx;
    ctx.scratch = fs::temp_directory_path() /
                  ("slcd_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(ctx.scratch);

    // Syn1-scale graph shared by criteria 4, 5, 6, 9 (5000 nodes, 20000
    // edges, fixed seed).
    {
        SynthConfig cfg;
        cfg.n_nodes = 5000;
        cfg.n_edges = 20000;
        cfg.seed = 42;
        auto data = generate_data(cfg);
        ctx.syn1_edges = ctx.scratch / "syn1_edges.txt";
        ctx.syn1_locs = ctx.scratch / "syn1_locations.txt";
        write_graph_files(data, ctx.syn1_edges.string(), ctx.syn1_locs.string());
    }

    std::vector<Criterion> criteria = {
        {1, "toy-network trace matches the hand-computed reference", criterion_toy_trace},
        {2, "filtration equals the all-pairs oracle on 1000 pools", criterion_filtration_oracle},
        {3, "incremental counters match brute-force recounts", criterion_incremental_state},
        {5, "AppSLDR beats M-greedy on mean d_avg at Syn1 scale", criterion_directional_quality},
        {4, "detections touch only the local closure, under 20% of |V|", criterion_locality},
        {6, "AppSLDR derives and runs no more than SLDR", criterion_approximation_speed},
        {7, "selection rule picks the ceil(k/2)-th community", criterion_selection_rule},
        {8, "metrics match hand values, oracles, and typed skips", criterion_metric_correctness},
        {9, "repeated runs are byte-identical except runtime_s", criterion_determinism},
    };

    int failures = 0;
    for (auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string detail;
        try {
            criterion.run(ctx);
        } catch (const CheckFailure& f) {
            verdict = "FAIL";
            detail = f.what;
            ++failures;
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
            ++failures;
        }
        std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", verdict.c_str(), criterion.number,
                    criterion.title, seconds_since(start), detail.empty() ? "" : " -- ",
                    detail.c_str());
        std::fflush(stdout);
    }

    fs::remove_all(ctx.scratch);
    return failures;
}
