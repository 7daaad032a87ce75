#pragma once

#include <cstdint>
#include <optional>

namespace gridweave {

__extension__ using Int128 = __int128;
__extension__ using UInt128 = unsigned __int128;

/// Largest coordinate magnitude accepted by the predicates. Keeps every
/// cross product in int64 and every 3x3 determinant or parameter numerator
/// comfortably inside Int128.
inline constexpr std::int64_t kCoordinateLimit = std::int64_t{1} << 20;

struct GridPoint {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t z = 0;

    friend auto operator<=>(const GridPoint&, const GridPoint&) = default;

    friend GridPoint operator+(GridPoint a, GridPoint b) noexcept { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend GridPoint operator-(GridPoint a, GridPoint b) noexcept { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend GridPoint operator*(std::int64_t c, GridPoint a) noexcept { return {c * a.x, c * a.y, c * a.z}; }
};

struct Segment {
    GridPoint a;
    GridPoint b;
};

enum class ConflictKind { VertexInEdgeInterior, EdgeInteriorIntersection };

const char* conflict_kind_name(ConflictKind kind) noexcept;

/// Throws GeometryError if any coordinate exceeds kCoordinateLimit in magnitude.
void check_coordinate_range(const GridPoint& p);

GridPoint cross(const GridPoint& u, const GridPoint& v) noexcept;
std::int64_t dot(const GridPoint& u, const GridPoint& v) noexcept;

/// det(u, v, w) = u . (v x w), exact.
Int128 determinant(const GridPoint& u, const GridPoint& v, const GridPoint& w) noexcept;

/// True iff p, q, r lie on a common line. Coincident points count as collinear.
bool collinear(const GridPoint& p, const GridPoint& q, const GridPoint& r);

/// True iff q lies on segment pr and differs from both p and r. Requires p != r.
bool strictly_between(const GridPoint& q, const GridPoint& p, const GridPoint& r);

/// True iff the four points lie on a common plane.
bool coplanar(const GridPoint& p, const GridPoint& q, const GridPoint& r, const GridPoint& s);

/// Returns EdgeInteriorIntersection when the segments share a point that is
/// interior to at least one of them. A single shared endpoint is not a
/// conflict; a shared endpoint plus any further common point is. Endpoint of
/// one segment inside the other (a T-contact) is a conflict.
///
/// Throws GeometryError on a degenerate segment (a == b).
std::optional<ConflictKind> segments_conflict(const Segment& e1, const Segment& e2);

/// True iff v lies strictly inside e. Throws GeometryError if v is an
/// endpoint of e, which callers must exclude.
bool vertex_edge_conflict(const GridPoint& v, const Segment& e);

}  // namespace gridweave
