#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gridweave/geometry.hpp"
#include "gridweave/graph.hpp"
#include "gridweave/rng.hpp"

namespace gridweave {

/// Placement of vertex ids 0..n-1 on points of [m]^3. Drawers always produce
/// injective placements inside the grid; check_embedding() enforces that for
/// placements read from elsewhere.
struct Embedding {
    std::int64_t m = 0;
    std::vector<GridPoint> points;

    friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// Throws MalformedEmbedding unless emb places exactly the vertices of g at
/// distinct points of [0, m)^3.
void check_embedding(const Graph& g, const Embedding& emb);

struct ConflictReport {
    ConflictKind kind = ConflictKind::EdgeInteriorIntersection;
    VertexId vertex = -1;  // VertexInEdgeInterior only
    Edge first;            // the edge containing the vertex, or the smaller edge of the pair
    Edge second;           // EdgeInteriorIntersection only

    friend auto operator<=>(const ConflictReport&, const ConflictReport&) = default;
};

/// Every vertex strictly inside a non-incident edge and every pair of edges
/// sharing an interior point, sorted. Empty iff emb is a grid-drawing of g.
/// Candidate pairs are pruned by bounding-box sweep along x.
std::vector<ConflictReport> find_conflicts(const Graph& g, const Embedding& emb);

enum class Algorithm { FirstMoment, BlowupGreedy };

std::string_view algorithm_name(Algorithm alg) noexcept;
Algorithm parse_algorithm(std::string_view name);

struct DrawingParams {
    std::int64_t m = 0;            // grid side; 0 = derived from the volume formula
    std::int32_t t = 0;            // blowup part size; 0 = derived
    double volume_constant = 10.0;
    std::int32_t attempt_budget = 20;   // attempts per grid side before escalating
    double growth_factor = 1.2599210498948732;  // 2^(1/3): each escalation doubles the volume
    std::int32_t max_escalations = 12;
    std::uint64_t seed = 1;
};

/// Throws InfeasibleError on out-of-range fields.
void validate_params(const DrawingParams& params);

struct ResolvedParameters {
    std::int64_t m = 0;
    std::int32_t t = 1;
    std::int32_t degeneracy = 0;
};

/// First-moment: m = ceil(c ((nk)^(1/3) + k^(2/3) (ln k)^(1/3))).
/// Blowup-greedy: t = max(ceil(ln n), ceil(D ln D), 1) and the smallest m with
/// m^3 >= c D K ln n and m^3 >= n t, K = max(k, n). Explicit m/t in params
/// override the formulas. Throws InfeasibleError for n = 0 or when the
/// vertices (times t) do not fit in [m]^3.
ResolvedParameters choose_parameters(const Graph& g, const DrawingParams& params, Algorithm alg);

/// Uniform injective placement of vertex_count points in [m]^3.
Embedding random_embedding(std::int64_t vertex_count, std::int64_t m, Rng& rng);

struct LevelStats {
    std::int64_t m = 0;
    std::int32_t attempts = 0;
};

struct DrawingStats {
    std::vector<LevelStats> levels;  // one entry per grid side tried, in order
    std::int32_t t = 1;
    std::int32_t degeneracy = 0;
    std::int64_t attempts = 0;
    std::int64_t conflicts_seen = 0;  // conflicts in rejected embeddings / rejected greedy candidates
    double elapsed_ms = 0.0;

    std::int64_t final_m() const noexcept { return levels.empty() ? 0 : levels.back().m; }
    std::int32_t escalations() const noexcept {
        return levels.empty() ? 0 : static_cast<std::int32_t>(levels.size()) - 1;
    }
};

struct DrawingOutcome {
    std::optional<Embedding> embedding;  // empty when the budget ran out
    DrawingStats stats;
};

/// Samples random embeddings until one is conflict-free; after
/// attempt_budget failures the grid side grows by growth_factor.
DrawingOutcome try_draw_first_moment(const Graph& g, const DrawingParams& params);

/// Random embedding of the t-blowup, then one representative per part,
/// parts taken in reverse degeneracy order, each the first candidate (in
/// seeded random order) that keeps the partial drawing conflict-free.
DrawingOutcome try_draw_blowup_greedy(const Graph& g, const DrawingParams& params);

DrawingOutcome try_draw(const Graph& g, const DrawingParams& params, Algorithm alg);

/// Throwing forms: BudgetExhausted when no drawing was found.
DrawingOutcome draw_first_moment(const Graph& g, const DrawingParams& params);
DrawingOutcome draw_blowup_greedy(const Graph& g, const DrawingParams& params);

/// One pass of the greedy selection over fixed candidate points.
/// candidates[i] holds the embedded points of part i (the part of base vertex
/// ordering.order[i]). Returns the chosen point per base vertex, or nothing
/// if some part has no viable candidate. `rejected` counts discarded
/// candidates.
std::optional<std::vector<GridPoint>> greedy_select(const Graph& g, const DegeneracyOrdering& ordering,
                                                    std::span<const std::vector<GridPoint>> candidates, Rng& rng,
                                                    std::int64_t* rejected = nullptr);

}  // namespace gridweave
