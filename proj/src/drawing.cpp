#include "gridweave/drawing.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "gridweave/error.hpp"

namespace gridweave {

void check_embedding(const Graph& g, const Embedding& emb) {
    if (emb.m < 1) {
        throw MalformedEmbedding("grid side m must be at least 1");
    }
    if (static_cast<std::int64_t>(emb.points.size()) != g.vertex_count()) {
        throw MalformedEmbedding("embedding places " + std::to_string(emb.points.size()) + " vertices, graph has " +
                                 std::to_string(g.vertex_count()));
    }
    std::unordered_set<std::uint64_t> used;
    used.reserve(emb.points.size() * 2);
    for (std::size_t v = 0; v < emb.points.size(); ++v) {
        const auto& p = emb.points[v];
        for (auto c : {p.x, p.y, p.z}) {
            if (c < 0 || c >= emb.m) {
                throw MalformedEmbedding("vertex " + std::to_string(v) + " has a coordinate outside [0, " +
                                         std::to_string(emb.m) + ")");
            }
        }
        const auto key = (static_cast<std::uint64_t>(p.x) * emb.m + p.y) * emb.m + p.z;
        if (!used.insert(key).second) {
            throw MalformedEmbedding("vertex " + std::to_string(v) + " shares its grid point with another vertex");
        }
    }
}

namespace {

struct Box {
    std::int64_t lo[3];
    std::int64_t hi[3];
};

Box segment_box(const GridPoint& a, const GridPoint& b) {
    return {{std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)},
            {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)}};
}

bool boxes_overlap_yz(const Box& a, const Box& b) {
    return a.lo[1] <= b.hi[1] && b.lo[1] <= a.hi[1] && a.lo[2] <= b.hi[2] && b.lo[2] <= a.hi[2];
}

ConflictReport edge_pair_report(Edge a, Edge b) {
    if (b < a) std::swap(a, b);
    return {ConflictKind::EdgeInteriorIntersection, -1, a, b};
}

}  // namespace

std::vector<ConflictReport> find_conflicts(const Graph& g, const Embedding& emb) {
    const auto edges = g.edges();
    const auto& pos = emb.points;
    std::vector<ConflictReport> out;

    std::vector<Box> boxes;
    boxes.reserve(edges.size());
    for (const auto& e : edges) {
        boxes.push_back(segment_box(pos[e.u], pos[e.v]));
    }
    std::vector<std::size_t> by_x(edges.size());
    std::iota(by_x.begin(), by_x.end(), 0);
    std::sort(by_x.begin(), by_x.end(), [&](auto a, auto b) { return boxes[a].lo[0] < boxes[b].lo[0]; });

    for (std::size_t i = 0; i < by_x.size(); ++i) {
        const auto ei = by_x[i];
        const Segment si{pos[edges[ei].u], pos[edges[ei].v]};
        for (std::size_t j = i + 1; j < by_x.size() && boxes[by_x[j]].lo[0] <= boxes[ei].hi[0]; ++j) {
            const auto ej = by_x[j];
            if (!boxes_overlap_yz(boxes[ei], boxes[ej])) continue;
            if (segments_conflict(si, {pos[edges[ej].u], pos[edges[ej].v]})) {
                out.push_back(edge_pair_report(edges[ei], edges[ej]));
            }
        }
    }

    std::vector<VertexId> vertices_by_x(pos.size());
    std::iota(vertices_by_x.begin(), vertices_by_x.end(), 0);
    std::sort(vertices_by_x.begin(), vertices_by_x.end(), [&](auto a, auto b) { return pos[a].x < pos[b].x; });
    for (std::size_t ei = 0; ei < edges.size(); ++ei) {
        const auto& e = edges[ei];
        const auto& box = boxes[ei];
        auto it = std::lower_bound(vertices_by_x.begin(), vertices_by_x.end(), box.lo[0],
                                   [&](VertexId v, std::int64_t x) { return pos[v].x < x; });
        for (; it != vertices_by_x.end() && pos[*it].x <= box.hi[0]; ++it) {
            const auto v = *it;
            if (v == e.u || v == e.v) continue;
            const auto& p = pos[v];
            if (p.y < box.lo[1] || p.y > box.hi[1] || p.z < box.lo[2] || p.z > box.hi[2]) continue;
            if (vertex_edge_conflict(p, {pos[e.u], pos[e.v]})) {
                out.push_back({ConflictKind::VertexInEdgeInterior, v, e, {}});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string_view algorithm_name(Algorithm alg) noexcept {
    return alg == Algorithm::FirstMoment ? "first-moment" : "blowup-greedy";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "first-moment" || name == "first" || name == "fm") return Algorithm::FirstMoment;
    if (name == "blowup-greedy" || name == "greedy") return Algorithm::BlowupGreedy;
    throw ParseError("unknown algorithm \"" + std::string(name) + "\"");
}

void validate_params(const DrawingParams& params) {
    if (!(params.volume_constant > 0.0) || !std::isfinite(params.volume_constant)) {
        throw InfeasibleError("volume constant must be positive");
    }
    if (params.attempt_budget < 1) {
        throw InfeasibleError("attempt budget must be at least 1");
    }
    if (!(params.growth_factor >= 1.0) || !std::isfinite(params.growth_factor)) {
        throw InfeasibleError("growth factor must be at least 1");
    }
    if (params.max_escalations < 0) {
        throw InfeasibleError("max escalations must be non-negative");
    }
    if (params.m < 0 || params.t < 0) {
        throw InfeasibleError("m and t must be non-negative (0 selects the default)");
    }
}

namespace {

std::int64_t smallest_side_for_volume(long double volume) {
    auto m = static_cast<std::int64_t>(std::floor(std::cbrt(volume)));
    m = std::max<std::int64_t>(m - 1, 1);
    while (static_cast<long double>(m) * m * m < volume) {
        ++m;
    }
    return m;
}

void check_side(std::int64_t m) {
    if (m > kCoordinateLimit) {
        throw InfeasibleError("grid side " + std::to_string(m) + " exceeds the supported coordinate range");
    }
}

}  // namespace

ResolvedParameters choose_parameters(const Graph& g, const DrawingParams& params, Algorithm alg) {
    validate_params(params);
    const auto n = static_cast<std::int64_t>(g.vertex_count());
    if (n == 0) {
        throw InfeasibleError("graph has no vertices");
    }
    const auto k = static_cast<std::int64_t>(g.edge_count());
    const long double c = params.volume_constant;
    ResolvedParameters out;

    if (alg == Algorithm::FirstMoment) {
        if (params.m > 0) {
            out.m = params.m;
        } else {
            const long double nk = static_cast<long double>(n) * k;
            const long double log_term =
                k > 1 ? std::pow(static_cast<long double>(k), 2.0L / 3) * std::cbrt(std::log(static_cast<long double>(k)))
                      : 0.0L;
            out.m = static_cast<std::int64_t>(std::ceil(c * (std::cbrt(nk) + log_term)));
            out.m = std::max(out.m, smallest_side_for_volume(static_cast<long double>(n)));
        }
        if (static_cast<long double>(out.m) * out.m * out.m < n) {
            throw InfeasibleError(std::to_string(n) + " vertices do not fit in [" + std::to_string(out.m) + "]^3");
        }
        check_side(out.m);
        return out;
    }

    const auto ordering = degeneracy_ordering(g);
    const long double D = ordering.degeneracy;
    const long double log_n = std::log(static_cast<long double>(n));
    out.degeneracy = ordering.degeneracy;
    if (params.t > 0) {
        out.t = params.t;
    } else {
        const auto t1 = static_cast<std::int64_t>(std::ceil(log_n));
        const auto t2 = D > 0 ? static_cast<std::int64_t>(std::ceil(D * std::log(D))) : 0;
        out.t = static_cast<std::int32_t>(std::max<std::int64_t>({t1, t2, 1}));
    }
    const long double blown_up = static_cast<long double>(n) * out.t;
    if (params.m > 0) {
        out.m = params.m;
    } else {
        const long double K = static_cast<long double>(std::max(k, n));
        const long double volume = std::max(c * D * K * log_n, blown_up);
        out.m = smallest_side_for_volume(volume);
    }
    if (static_cast<long double>(out.m) * out.m * out.m < blown_up) {
        throw InfeasibleError(std::to_string(n) + " parts of " + std::to_string(out.t) + " vertices do not fit in [" +
                              std::to_string(out.m) + "]^3");
    }
    check_side(out.m);
    return out;
}

Embedding random_embedding(std::int64_t vertex_count, std::int64_t m, Rng& rng) {
    if (m < 1 || vertex_count < 0) {
        throw InfeasibleError("random embedding needs m >= 1 and a non-negative vertex count");
    }
    check_side(m);
    const auto cells = static_cast<UInt128>(m) * m * m;
    if (static_cast<UInt128>(vertex_count) > cells) {
        throw InfeasibleError(std::to_string(vertex_count) + " vertices do not fit in [" + std::to_string(m) + "]^3");
    }
    const auto volume = static_cast<std::uint64_t>(cells);
    auto decode = [m](std::uint64_t idx) {
        const auto um = static_cast<std::uint64_t>(m);
        return GridPoint{static_cast<std::int64_t>(idx / (um * um)), static_cast<std::int64_t>((idx / um) % um),
                         static_cast<std::int64_t>(idx % um)};
    };

    Embedding out;
    out.m = m;
    out.points.reserve(static_cast<std::size_t>(vertex_count));
    if (static_cast<std::uint64_t>(vertex_count) * 2 <= volume) {
        std::unordered_set<std::uint64_t> used;
        used.reserve(static_cast<std::size_t>(vertex_count) * 2);
        while (static_cast<std::int64_t>(out.points.size()) < vertex_count) {
            const auto idx = uniform_below(rng, volume);
            if (used.insert(idx).second) {
                out.points.push_back(decode(idx));
            }
        }
    } else {
        std::vector<std::uint64_t> cells_list(volume);
        std::iota(cells_list.begin(), cells_list.end(), std::uint64_t{0});
        for (std::int64_t i = 0; i < vertex_count; ++i) {
            const auto j = static_cast<std::size_t>(i + static_cast<std::int64_t>(uniform_below(rng, volume - i)));
            std::swap(cells_list[i], cells_list[j]);
            out.points.push_back(decode(cells_list[i]));
        }
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::int64_t next_side(std::int64_t m, double growth) {
    const auto grown = static_cast<std::int64_t>(std::ceil(static_cast<double>(m) * growth));
    return std::max(grown, m + 1);
}

// Runs `attempt(m)` with the restart budget and grid escalation shared by
// both drawers. `attempt` returns an embedding or nothing.
template <typename Attempt>
DrawingOutcome run_with_escalation(const DrawingParams& params, std::int64_t initial_m, DrawingStats stats,
                                   Attempt&& attempt) {
    const auto start = Clock::now();
    DrawingOutcome outcome;
    std::int64_t m = initial_m;
    for (std::int32_t level = 0; level <= params.max_escalations; ++level) {
        if (m > kCoordinateLimit) break;
        stats.levels.push_back({m, 0});
        for (std::int32_t a = 0; a < params.attempt_budget; ++a) {
            ++stats.levels.back().attempts;
            ++stats.attempts;
            if (auto emb = attempt(m, stats)) {
                outcome.embedding = std::move(emb);
                stats.elapsed_ms = ms_since(start);
                outcome.stats = std::move(stats);
                return outcome;
            }
        }
        m = next_side(m, params.growth_factor);
    }
    stats.elapsed_ms = ms_since(start);
    outcome.stats = std::move(stats);
    return outcome;
}

}  // namespace

DrawingOutcome try_draw_first_moment(const Graph& g, const DrawingParams& params) {
    const auto resolved = choose_parameters(g, params, Algorithm::FirstMoment);
    Rng rng(params.seed);
    DrawingStats stats;
    stats.t = 1;
    return run_with_escalation(params, resolved.m, std::move(stats),
                               [&](std::int64_t m, DrawingStats& st) -> std::optional<Embedding> {
                                   auto emb = random_embedding(g.vertex_count(), m, rng);
                                   const auto conflicts = find_conflicts(g, emb);
                                   if (conflicts.empty()) {
                                       return emb;
                                   }
                                   st.conflicts_seen += static_cast<std::int64_t>(conflicts.size());
                                   return std::nullopt;
                               });
}

std::optional<std::vector<GridPoint>> greedy_select(const Graph& g, const DegeneracyOrdering& ordering,
                                                    std::span<const std::vector<GridPoint>> candidates, Rng& rng,
                                                    std::int64_t* rejected) {
    const auto n = g.vertex_count();
    struct PlacedEdge {
        VertexId u;
        VertexId v;
        Segment seg;
    };
    std::vector<std::optional<GridPoint>> chosen(n);
    std::vector<VertexId> placed;
    std::vector<PlacedEdge> placed_edges;
    std::vector<VertexId> later;
    std::vector<Segment> fresh;
    std::vector<std::size_t> scan;

    for (std::int32_t part = n - 1; part >= 0; --part) {
        const auto v = ordering.order[part];
        later.clear();
        for (VertexId w : g.neighbors(v)) {
            if (ordering.rank[w] > part) later.push_back(w);
        }
        const auto& pool = candidates[part];
        scan.resize(pool.size());
        std::iota(scan.begin(), scan.end(), std::size_t{0});
        shuffle(std::span<std::size_t>(scan), rng);

        bool found = false;
        for (auto idx : scan) {
            const auto& w = pool[idx];
            bool ok = true;
            // New vertex inside an existing edge.
            for (const auto& e : placed_edges) {
                if (vertex_edge_conflict(w, e.seg)) {
                    ok = false;
                    break;
                }
            }
            fresh.clear();
            for (std::size_t j = 0; ok && j < later.size(); ++j) {
                const Segment seg{w, *chosen[later[j]]};
                // Existing vertices inside the new edge.
                for (VertexId x : placed) {
                    if (x != later[j] && vertex_edge_conflict(*chosen[x], seg)) {
                        ok = false;
                        break;
                    }
                }
                // New edge against existing edges and the other new edges.
                for (std::size_t e = 0; ok && e < placed_edges.size(); ++e) {
                    if (segments_conflict(seg, placed_edges[e].seg)) ok = false;
                }
                for (std::size_t e = 0; ok && e < fresh.size(); ++e) {
                    if (segments_conflict(seg, fresh[e])) ok = false;
                }
                fresh.push_back(seg);
            }
            if (!ok) {
                if (rejected) ++*rejected;
                continue;
            }
            chosen[v] = w;
            placed.push_back(v);
            for (VertexId u : later) {
                placed_edges.push_back({v, u, {w, *chosen[u]}});
            }
            found = true;
            break;
        }
        if (!found) {
            return std::nullopt;
        }
    }
    std::vector<GridPoint> out(n);
    for (VertexId v = 0; v < n; ++v) out[v] = *chosen[v];
    return out;
}

DrawingOutcome try_draw_blowup_greedy(const Graph& g, const DrawingParams& params) {
    const auto resolved = choose_parameters(g, params, Algorithm::BlowupGreedy);
    const auto blown = blowup(g, resolved.t);
    const auto t = resolved.t;
    const auto parts = blown.part_count();
    Rng rng(params.seed);
    DrawingStats stats;
    stats.t = t;
    stats.degeneracy = blown.ordering.degeneracy;
    std::vector<std::vector<GridPoint>> candidates(parts);
    return run_with_escalation(params, resolved.m, std::move(stats),
                               [&](std::int64_t m, DrawingStats& st) -> std::optional<Embedding> {
                                   const auto all = random_embedding(blown.graph.vertex_count(), m, rng);
                                   for (std::int32_t i = 0; i < parts; ++i) {
                                       candidates[i].assign(all.points.begin() + static_cast<std::ptrdiff_t>(i) * t,
                                                            all.points.begin() + static_cast<std::ptrdiff_t>(i + 1) * t);
                                   }
                                   auto chosen = greedy_select(g, blown.ordering, candidates, rng, &st.conflicts_seen);
                                   if (!chosen) {
                                       return std::nullopt;
                                   }
                                   return Embedding{m, std::move(*chosen)};
                               });
}

DrawingOutcome try_draw(const Graph& g, const DrawingParams& params, Algorithm alg) {
    return alg == Algorithm::FirstMoment ? try_draw_first_moment(g, params) : try_draw_blowup_greedy(g, params);
}

namespace {

DrawingOutcome require_success(DrawingOutcome outcome, Algorithm alg) {
    if (!outcome.embedding) {
        throw BudgetExhausted(std::string(algorithm_name(alg)) + " found no drawing after " +
                              std::to_string(outcome.stats.attempts) + " attempts up to m=" +
                              std::to_string(outcome.stats.final_m()));
    }
    return outcome;
}

}  // namespace

DrawingOutcome draw_first_moment(const Graph& g, const DrawingParams& params) {
    return require_success(try_draw_first_moment(g, params), Algorithm::FirstMoment);
}

DrawingOutcome draw_blowup_greedy(const Graph& g, const DrawingParams& params) {
    return require_success(try_draw_blowup_greedy(g, params), Algorithm::BlowupGreedy);
}

}  // namespace gridweave
