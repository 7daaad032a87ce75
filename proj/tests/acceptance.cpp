// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "fuzz.hpp"
#include "gridweave/census.hpp"
#include "gridweave/error.hpp"
#include "gridweave/drawing.hpp"
#include "gridweave/geometry.hpp"
#include "gridweave/harness.hpp"
#include "gridweave/io.hpp"
#include "gridweave/verifier.hpp"
#include "oracles.hpp"

using namespace gridweave;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Tolerances.
constexpr double kCollinearSlopeLo = 5.6, kCollinearSlopeHi = 6.5;
constexpr double kOriginSlopeLo = 5.6, kOriginSlopeHi = 6.9;
constexpr std::int64_t kSegmentPairs = 100000;
constexpr int kFuzzGraphs = 1000;
constexpr int kTrials = 20;
constexpr double kMinSuccessRate = 0.90;
constexpr double kMaxRatio = 2 * DrawingParams{}.volume_constant;
constexpr double kMaxAspect = 1.1;
constexpr int kMutations = 100;
constexpr double kHandCountSeconds = 1.0;
constexpr double kHyperplaneSeconds = 60.0;
constexpr double kFirstMomentSeconds = 300.0;
constexpr double kGreedySeconds = 600.0;

// Shared across criteria: every drawing any drawer returned during the run.
struct SoundnessLedger {
    std::int64_t drawings = 0;
    std::int64_t invalid = 0;
    void record(const Graph& g, const Embedding& emb) {
        ++drawings;
        try {
            if (!verify_drawing(g, emb).valid) ++invalid;
        } catch (const Error&) {
            ++invalid;
        }
    }
};

SoundnessLedger soundness;

struct BenchOutcome {
    std::vector<ExperimentRecord> records;
    std::vector<Graph> graphs;
};

// Graphs are regenerated from the per-trial seeds so drawings can be audited
// outside the harness.
BenchOutcome run_family(Algorithm alg) {
    ExperimentConfig cfg;
    cfg.family = {FamilyKind::RandomRegular, 3};
    cfg.sizes = {50, 100, 200};
    cfg.algorithm = alg;
    cfg.trials = kTrials;
    cfg.master_seed = alg == Algorithm::FirstMoment ? 20260101 : 20260202;
    auto report = run_bench(cfg);
    BenchOutcome out;
    for (const auto& r : report.records) {
        out.graphs.push_back(generate_family(cfg.family, r.size, mix64(r.seed)));
        if (r.embedding) soundness.record(out.graphs.back(), *r.embedding);
    }
    out.records = std::move(report.records);
    return out;
}

BenchOutcome first_moment_runs;
BenchOutcome greedy_runs;
bool first_moment_ran = false;
bool greedy_ran = false;

struct Verdict {
    bool pass;
    std::string detail;
};

Verdict hand_counts() {
    const auto start = Clock::now();
    struct Row {
        const char* what;
        std::uint64_t frozen;
        std::uint64_t brute;
        std::uint64_t library;
    };
    const Row rows[] = {
        {"collinear 3-sets in [3]^2", 8, oracle::brute_collinear_ksets(2, 3, 3), count_collinear_ksets(2, 3, 3).count},
        {"collinear 3-sets in [2]^3", 0, oracle::brute_collinear_ksets(3, 3, 2), count_collinear_ksets(3, 3, 2).count},
        {"coplanar 4-sets in [2]^3", 12, oracle::brute_coplanar_4sets(2), count_coplanar_4sets(2).count},
    };
    bool ok = true;
    std::string detail;
    for (const auto& r : rows) {
        ok = ok && r.frozen == r.brute && r.frozen == r.library;
        detail += std::string(r.what) + "=" + std::to_string(r.library) + " ";
    }
    const double secs = seconds_since(start);
    ok = ok && secs < kHandCountSeconds;
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.3fs)", secs);
    return {ok, detail + buf};
}

Verdict growth(const char* label, const std::vector<std::int32_t>& sizes, double lo, double hi,
               const std::function<std::uint64_t(std::int32_t)>& count) {
    const auto start = Clock::now();
    std::vector<std::pair<double, double>> series;
    std::string detail;
    for (auto m : sizes) {
        const auto c = count(m);
        series.emplace_back(m, static_cast<double>(c));
        detail += std::to_string(m) + ":" + std::to_string(c) + " ";
    }
    const double slope = fit_growth_exponent(series);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s slope=%.4f in [%.1f, %.1f] (%.2fs)", label, slope, lo, hi, seconds_since(start));
    return {slope >= lo && slope <= hi, std::string(buf) + " counts " + detail};
}

Verdict hyperplane_bound() {
    const auto start = Clock::now();
    const auto sweep = sweep_hyperplane_bound(3, 12, 8);
    const double secs = seconds_since(start);
    char buf[160];
    std::snprintf(buf, sizeof buf, "normals=%llu spanning=%llu violations=%llu max count/bound=%.4f (%.2fs)",
                  static_cast<unsigned long long>(sweep.normals), static_cast<unsigned long long>(sweep.spanning),
                  static_cast<unsigned long long>(sweep.violations), sweep.max_ratio, secs);
    return {sweep.violations == 0 && sweep.spanning > 0 && secs < kHyperplaneSeconds, buf};
}

Verdict geometry_oracle() {
    Rng rng(5005);
    std::int64_t disagree = 0, conflicts = 0;
    for (std::int64_t i = 0; i < kSegmentPairs; ++i) {
        GridPoint p[4];
        for (auto& q : p) {
            q = {static_cast<std::int64_t>(uniform_below(rng, 10)), static_cast<std::int64_t>(uniform_below(rng, 10)),
                 static_cast<std::int64_t>(uniform_below(rng, 10))};
        }
        // Force a share of degenerate inputs: a common plane or a shared endpoint.
        switch (i % 4) {
            case 1: p[0].z = p[1].z = p[2].z = p[3].z; break;
            case 2: p[2] = p[0]; break;
            default: break;
        }
        if (p[0] == p[1] || p[2] == p[3]) {
            --i;
            continue;
        }
        const Segment a{p[0], p[1]}, b{p[2], p[3]};
        const bool fast = segments_conflict(a, b).has_value();
        disagree += fast != oracle::segments_conflict(a, b);
        conflicts += fast;
    }
    Rng fr(6006);
    std::int64_t graph_mismatch = 0, graphs_with_conflicts = 0;
    for (int i = 0; i < kFuzzGraphs; ++i) {
        const auto c = fuzz::random_case(fr, 12);
        const auto got = find_conflicts(c.graph, c.embedding);
        graph_mismatch += got != oracle::naive_conflicts(c.graph, c.embedding);
        graphs_with_conflicts += !got.empty();
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "%lld pairs (%lld conflicting), %lld disagreements; %d fuzz graphs (%lld with conflicts), %lld mismatches",
                  static_cast<long long>(kSegmentPairs), static_cast<long long>(conflicts), static_cast<long long>(disagree),
                  kFuzzGraphs, static_cast<long long>(graphs_with_conflicts), static_cast<long long>(graph_mismatch));
    return {disagree == 0 && graph_mismatch == 0, buf};
}

struct FamilySummary {
    std::string text;
    bool success_ok = true;
    double max_ratio = 0;
    double max_grid_aspect = 0;
    double max_tight_aspect = 0;
    bool all_edge_bounds = true;
};

FamilySummary summarize(const BenchOutcome& runs, bool require_first_level) {
    FamilySummary s;
    for (std::int32_t size : {50, 100, 200}) {
        int ok = 0, total = 0;
        std::int64_t max_m = 0;
        for (std::size_t i = 0; i < runs.records.size(); ++i) {
            const auto& r = runs.records[i];
            if (r.size != size) continue;
            ++total;
            const bool counted = r.success && (!require_first_level || r.escalations == 0);
            ok += counted;
            max_m = std::max(max_m, r.m);
            if (!r.success) continue;
            if (r.ratio) s.max_ratio = std::max(s.max_ratio, *r.ratio);
            const auto st = drawing_stats(*r.embedding, runs.graphs[i]);
            s.max_grid_aspect = std::max(s.max_grid_aspect, st.grid_aspect_ratio);
            s.max_tight_aspect = std::max(s.max_tight_aspect, st.aspect_ratio);
            s.all_edge_bounds = s.all_edge_bounds && st.edge_bound_ok &&
                                static_cast<std::int64_t>(runs.graphs[i].edge_count()) <= 8 * st.volume;
        }
        s.success_ok = s.success_ok && ok >= static_cast<int>(std::ceil(kMinSuccessRate * total));
        s.text += "n=" + std::to_string(size) + ":" + std::to_string(ok) + "/" + std::to_string(total) +
                  " m<=" + std::to_string(max_m) + " ";
    }
    return s;
}

Verdict first_moment() {
    const auto start = Clock::now();
    first_moment_runs = run_family(Algorithm::FirstMoment);
    first_moment_ran = true;
    const double secs = seconds_since(start);
    const auto s = summarize(first_moment_runs, true);
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.1fs)", secs);
    return {s.success_ok && secs < kFirstMomentSeconds, "no-escalation successes " + s.text + buf};
}

Verdict greedy() {
    const auto start = Clock::now();
    greedy_runs = run_family(Algorithm::BlowupGreedy);
    greedy_ran = true;
    const double secs = seconds_since(start);
    const auto s = summarize(greedy_runs, false);
    char buf[200];
    std::snprintf(buf, sizeof buf, "max ratio=%.3f (<= %.1f), grid aspect=%.3f (<= %.1f), tight-box aspect max=%.3f (%.1fs)",
                  s.max_ratio, kMaxRatio, s.max_grid_aspect, kMaxAspect, s.max_tight_aspect, secs);
    return {s.success_ok && s.max_ratio <= kMaxRatio && s.max_grid_aspect <= kMaxAspect && secs < kGreedySeconds,
            "successes " + s.text + buf};
}

std::int64_t gcd3(const GridPoint& d) {
    return std::gcd(std::gcd(std::abs(d.x), std::abs(d.y)), std::abs(d.z));
}

bool inside(const GridPoint& p, std::int64_t m) {
    return p.x >= 0 && p.y >= 0 && p.z >= 0 && p.x < m && p.y < m && p.z < m;
}

// Moves one vertex of a valid drawing so that it lands strictly inside a
// non-incident edge, or so that one of its edges passes through the interior
// of another edge. Returns false when this drawing offers no such move.
bool plant(const Graph& g, Embedding& emb, Rng& rng, bool crossing, VertexId* moved) {
    const auto edges = g.sorted_edges();
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    shuffle(std::span<std::size_t>(order), rng);
    std::vector<GridPoint> taken(emb.points);
    std::sort(taken.begin(), taken.end());
    const auto occupied = [&](const GridPoint& p) { return std::binary_search(taken.begin(), taken.end(), p); };
    for (auto ei : order) {
        const auto [a, b] = edges[ei];
        const auto pa = emb.points[static_cast<std::size_t>(a)];
        const auto delta = emb.points[static_cast<std::size_t>(b)] - pa;
        const auto steps = gcd3(delta);
        if (steps < 2) continue;
        const GridPoint unit{delta.x / steps, delta.y / steps, delta.z / steps};
        const auto q = pa + static_cast<std::int64_t>(1 + uniform_below(rng, static_cast<std::uint64_t>(steps - 1))) * unit;
        for (VertexId w = 0; w < g.vertex_count(); ++w) {
            if (w == a || w == b) continue;
            if (!crossing) {
                emb.points[static_cast<std::size_t>(w)] = q;
                *moved = w;
                return true;
            }
            for (auto x : g.neighbors(w)) {
                if (x == a || x == b) continue;
                const auto px = emb.points[static_cast<std::size_t>(x)];
                const auto target = 2 * q - px;
                if (!inside(target, emb.m) || occupied(target)) continue;
                emb.points[static_cast<std::size_t>(w)] = target;
                *moved = w;
                return true;
            }
        }
    }
    return false;
}

Verdict planted() {
    std::vector<std::pair<const Graph*, const Embedding*>> pool;
    for (auto* runs : {&greedy_runs, &first_moment_runs}) {
        for (std::size_t i = 0; i < runs->records.size(); ++i) {
            if (runs->records[i].embedding) pool.emplace_back(&runs->graphs[i], &*runs->records[i].embedding);
        }
    }
    if (pool.empty()) return {false, "no drawings available to mutate"};
    Rng rng(9009);
    int flagged = 0, named = 0, made = 0, tries = 0;
    while (made < kMutations && tries < 100 * kMutations) {
        ++tries;
        const auto& [g, base] = pool[uniform_below(rng, pool.size())];
        Embedding emb = *base;
        VertexId w = -1;
        const bool crossing = made % 2 == 1;
        if (!plant(*g, emb, rng, crossing, &w)) continue;
        ++made;
        const auto verdict = verify_drawing(*g, emb);
        flagged += !verdict.valid;
        if (!crossing) {
            named += std::any_of(verdict.violations.begin(), verdict.violations.end(), [w](const ConflictReport& r) {
                return r.kind == ConflictKind::VertexInEdgeInterior && r.vertex == w;
            });
        } else {
            named += std::any_of(verdict.violations.begin(), verdict.violations.end(), [w](const ConflictReport& r) {
                return r.kind == ConflictKind::EdgeInteriorIntersection &&
                       (r.first.u == w || r.first.v == w || r.second.u == w || r.second.v == w);
            });
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d/%d mutations flagged, %d with the planted violation reported", flagged, made, named);
    return {made == kMutations && flagged == kMutations && named == kMutations, buf};
}

Verdict determinism() {
    const auto g = generate_family({FamilyKind::RandomRegular, 3}, 60, 77);
    bool ok = true;
    std::string detail;
    for (auto alg : {Algorithm::FirstMoment, Algorithm::BlowupGreedy}) {
        DrawingParams p;
        p.seed = 4242;
        const auto a = run_draw(g, alg, p);
        const auto b = run_draw(g, alg, p);
        soundness.record(g, *a.outcome.embedding);
        soundness.record(g, *b.outcome.embedding);
        const auto svg_a = render_svg(parse_embedding_json(a.json).embedding, &g);
        const auto svg_b = render_svg(parse_embedding_json(b.json).embedding, &g);
        const bool same = a.json == b.json && svg_a == svg_b;
        ok = ok && same;
        detail += std::string(algorithm_name(alg)) + (same ? " json+svg identical; " : " json/svg differ; ");
    }
    const auto cfg = parse_experiment_config(
        R"({"family": {"kind": "random-regular", "degree": 3}, "sizes": [20, 40], "trials": 4, "master_seed": 99})");
    const auto r1 = run_bench(cfg);
    const auto r2 = run_bench(cfg);
    const bool bench_same = r1.records_csv == r2.records_csv && r1.summary_json == r2.summary_json;
    for (std::size_t i = 0; i < r1.records.size(); ++i) {
        if (r1.records[i].embedding) {
            soundness.record(generate_family(cfg.family, r1.records[i].size, mix64(r1.records[i].seed)), *r1.records[i].embedding);
        }
    }
    ok = ok && bench_same;
    detail += bench_same ? "bench csv+summary identical" : "bench output differs";
    return {ok, detail};
}

Verdict edge_bound() {
    std::int64_t checked = 0, bad = 0;
    for (auto* runs : {&first_moment_runs, &greedy_runs}) {
        for (std::size_t i = 0; i < runs->records.size(); ++i) {
            const auto& r = runs->records[i];
            if (!r.embedding) continue;
            ++checked;
            const auto k = static_cast<std::int64_t>(runs->graphs[i].edge_count());
            bad += !(k <= 8 * r.m * r.m * r.m) || !drawing_stats(*r.embedding, runs->graphs[i]).edge_bound_ok;
        }
    }
    return {first_moment_ran && greedy_ran && checked > 0 && bad == 0,
            std::to_string(checked) + " drawings checked, " + std::to_string(bad) + " over 8 m^3"};
}

Verdict soundness_verdict() {
    return {soundness.drawings > 0 && soundness.invalid == 0,
            std::to_string(soundness.drawings) + " returned drawings re-verified, " + std::to_string(soundness.invalid) +
                " invalid"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Verdict()> run;
    };
    // Soundness (6) is reported after every drawing-producing criterion has run.
    const std::vector<Criterion> criteria{
        {1, "hand-count censuses", hand_counts},
        {2, "collinear triple growth",
         [] {
             return growth("collinear 3-sets of [m]^3", {4, 6, 8, 10, 12}, kCollinearSlopeLo, kCollinearSlopeHi,
                           [](std::int32_t m) { return count_collinear_ksets(3, 3, m, CensusStrategy::Enumeration).count; });
         }},
        {3, "origin-coplanar triple growth",
         [] {
             return growth("origin-coplanar 3-sets of [m]^3", {4, 6, 8, 10}, kOriginSlopeLo, kOriginSlopeHi,
                           [](std::int32_t m) { return count_coplanar_origin_triples(m).count; });
         }},
        {4, "hyperplane point bound", hyperplane_bound},
        {5, "geometry oracle equivalence", geometry_oracle},
        {7, "first-moment calibration", first_moment},
        {8, "blowup-greedy volume and aspect", greedy},
        {9, "planted violations", planted},
        {10, "determinism", determinism},
        {11, "edge bound", edge_bound},
        {6, "soundness", soundness_verdict},
    };
    std::vector<std::pair<int, std::string>> lines;
    int failures = 0;
    for (const auto& c : criteria) {
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.pass;
        lines.emplace_back(c.id, std::string(v.pass ? "PASS" : "FAIL") + " criterion " + std::to_string(c.id) + " (" +
                                     c.name + "): " + v.detail);
        std::fprintf(stderr, "%s\n", lines.back().second.c_str());
    }
    std::sort(lines.begin(), lines.end());
    std::printf("\n");
    for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
