#include "gridweave/verifier.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace gridweave {

DrawingStatsRecord drawing_stats(const Embedding& emb, const Graph& g) {
    DrawingStatsRecord out;
    out.volume = emb.m * emb.m * emb.m;
    out.edge_count = static_cast<std::int64_t>(g.edge_count());
    out.edge_bound_ok = out.edge_count <= 8 * out.volume;
    if (emb.points.empty()) {
        return out;
    }
    std::int64_t lo[3] = {INT64_MAX, INT64_MAX, INT64_MAX};
    std::int64_t hi[3] = {INT64_MIN, INT64_MIN, INT64_MIN};
    for (const auto& p : emb.points) {
        const std::int64_t c[3] = {p.x, p.y, p.z};
        for (int a = 0; a < 3; ++a) {
            lo[a] = std::min(lo[a], c[a]);
            hi[a] = std::max(hi[a], c[a]);
            out.max_abs_coordinate = std::max(out.max_abs_coordinate, std::abs(c[a]));
        }
    }
    for (int a = 0; a < 3; ++a) out.extent[a] = hi[a] - lo[a];
    const auto longest = *std::max_element(std::begin(out.extent), std::end(out.extent));
    const auto shortest = *std::min_element(std::begin(out.extent), std::end(out.extent));
    if (longest == 0) {
        out.aspect_ratio = 1.0;
    } else if (shortest == 0) {
        out.aspect_ratio = std::numeric_limits<double>::infinity();
    } else {
        out.aspect_ratio = static_cast<double>(longest) / static_cast<double>(shortest);
    }
    return out;
}

VerificationVerdict verify_drawing(const Graph& g, const Embedding& emb) {
    check_embedding(g, emb);
    VerificationVerdict verdict;
    const auto edges = g.edges();
    const auto& pos = emb.points;

    // (i) no edge passes through a vertex it is not incident to
    for (const auto& e : edges) {
        const Segment seg{pos[e.u], pos[e.v]};
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (v == e.u || v == e.v) continue;
            if (vertex_edge_conflict(pos[v], seg)) {
                verdict.violations.push_back({ConflictKind::VertexInEdgeInterior, v, e, {}});
            }
        }
    }
    // (ii) no two edges share an interior point
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Segment si{pos[edges[i].u], pos[edges[i].v]};
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (segments_conflict(si, {pos[edges[j].u], pos[edges[j].v]})) {
                auto a = edges[i];
                auto b = edges[j];
                if (b < a) std::swap(a, b);
                verdict.violations.push_back({ConflictKind::EdgeInteriorIntersection, -1, a, b});
            }
        }
    }
    std::sort(verdict.violations.begin(), verdict.violations.end());
    verdict.valid = verdict.violations.empty();
    verdict.stats = drawing_stats(emb, g);
    return verdict;
}

}  // namespace gridweave
