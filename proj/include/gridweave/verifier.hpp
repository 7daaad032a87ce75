#pragma once

#include <cstdint>
#include <vector>

#include "gridweave/drawing.hpp"
#include "gridweave/graph.hpp"

namespace gridweave {

struct DrawingStatsRecord {
    std::int64_t volume = 0;         // m^3 of the declared grid
    double aspect_ratio = 1.0;       // longest / shortest extent of the tight bounding box
    double grid_aspect_ratio = 1.0;  // longest / shortest side of the declared grid; 1 for [m]^3
    std::int64_t extent[3] = {0, 0, 0};
    std::int64_t max_abs_coordinate = 0;
    std::int64_t edge_count = 0;
    bool edge_bound_ok = true;  // k <= 8 * volume
};

struct VerificationVerdict {
    bool valid = false;
    std::vector<ConflictReport> violations;
    DrawingStatsRecord stats;
};

/// Audits a drawing with plain all-pairs loops, independent of the sweep in
/// find_conflicts. Throws MalformedEmbedding for missing vertices, repeated
/// points, or coordinates outside [0, m).
VerificationVerdict verify_drawing(const Graph& g, const Embedding& emb);

/// Tight-box aspect ratio uses extents (max - min) per axis; a box that is
/// flat along some axis but not all reports infinity, a single point reports 1.
DrawingStatsRecord drawing_stats(const Embedding& emb, const Graph& g);

}  // namespace gridweave
