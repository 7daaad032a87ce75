#include "gridweave/geometry.hpp"

#include <cstdlib>
#include <string>

#include "gridweave/error.hpp"

namespace gridweave {

const char* conflict_kind_name(ConflictKind kind) noexcept {
    switch (kind) {
        case ConflictKind::VertexInEdgeInterior: return "vertex-in-edge-interior";
        case ConflictKind::EdgeInteriorIntersection: return "edge-interior-intersection";
    }
    return "unknown";
}

void check_coordinate_range(const GridPoint& p) {
    auto ok = [](std::int64_t c) { return c >= -kCoordinateLimit && c <= kCoordinateLimit; };
    if (!ok(p.x) || !ok(p.y) || !ok(p.z)) {
        throw GeometryError("coordinate outside the supported range |c| <= 2^20: (" + std::to_string(p.x) + ", " +
                            std::to_string(p.y) + ", " + std::to_string(p.z) + ")");
    }
}

GridPoint cross(const GridPoint& u, const GridPoint& v) noexcept {
    return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

std::int64_t dot(const GridPoint& u, const GridPoint& v) noexcept {
    return u.x * v.x + u.y * v.y + u.z * v.z;
}

Int128 determinant(const GridPoint& u, const GridPoint& v, const GridPoint& w) noexcept {
    const auto c = cross(v, w);
    return static_cast<Int128>(u.x) * c.x + static_cast<Int128>(u.y) * c.y + static_cast<Int128>(u.z) * c.z;
}

namespace {

bool is_zero(const GridPoint& p) noexcept { return p.x == 0 && p.y == 0 && p.z == 0; }

Int128 dot128(const GridPoint& u, const GridPoint& v) noexcept {
    return static_cast<Int128>(u.x) * v.x + static_cast<Int128>(u.y) * v.y + static_cast<Int128>(u.z) * v.z;
}

// Collinear overlap of two segments on one line, in the scaled parameter of
// e1's direction: e1 covers [0, len2].
std::optional<ConflictKind> collinear_overlap(const Segment& e1, const Segment& e2) {
    const auto dir = e1.b - e1.a;
    const auto len2 = dot(dir, dir);
    auto t0 = dot(e2.a - e1.a, dir);
    auto t1 = dot(e2.b - e1.a, dir);
    if (t0 > t1) std::swap(t0, t1);
    const auto lo = std::max<std::int64_t>(0, t0);
    const auto hi = std::min<std::int64_t>(len2, t1);
    if (lo > hi) {
        return std::nullopt;
    }
    if (lo < hi) {
        return ConflictKind::EdgeInteriorIntersection;
    }
    // Touching in a single point; it is an endpoint of both intervals.
    return std::nullopt;
}

}  // namespace

bool collinear(const GridPoint& p, const GridPoint& q, const GridPoint& r) {
    check_coordinate_range(p);
    check_coordinate_range(q);
    check_coordinate_range(r);
    return is_zero(cross(q - p, r - p));
}

bool strictly_between(const GridPoint& q, const GridPoint& p, const GridPoint& r) {
    if (p == r) {
        throw GeometryError("strictly_between requires distinct segment endpoints");
    }
    if (!collinear(p, q, r)) {
        return false;
    }
    return dot(q - p, r - p) > 0 && dot(q - r, p - r) > 0;
}

bool coplanar(const GridPoint& p, const GridPoint& q, const GridPoint& r, const GridPoint& s) {
    check_coordinate_range(p);
    check_coordinate_range(q);
    check_coordinate_range(r);
    check_coordinate_range(s);
    return determinant(q - p, r - p, s - p) == 0;
}

std::optional<ConflictKind> segments_conflict(const Segment& e1, const Segment& e2) {
    if (e1.a == e1.b || e2.a == e2.b) {
        throw GeometryError("degenerate segment (identical endpoints)");
    }
    if (!coplanar(e1.a, e1.b, e2.a, e2.b)) {
        return std::nullopt;
    }
    const auto r = e1.b - e1.a;
    const auto s = e2.b - e2.a;
    const auto rxs = cross(r, s);
    if (is_zero(rxs)) {
        if (!is_zero(cross(r, e2.a - e1.a))) {
            return std::nullopt;  // parallel, distinct lines
        }
        return collinear_overlap(e1, e2);
    }

    // Lines meet in exactly one point X = e1.a + (sn/den) r = e2.a + (un/den) s.
    const auto ca = e2.a - e1.a;
    const Int128 den = dot128(rxs, rxs);
    const Int128 sn = dot128(cross(ca, s), rxs);
    const Int128 un = dot128(cross(ca, r), rxs);
    if (sn < 0 || sn > den || un < 0 || un > den) {
        return std::nullopt;
    }
    const bool interior1 = sn > 0 && sn < den;
    const bool interior2 = un > 0 && un < den;
    if (interior1 || interior2) {
        return ConflictKind::EdgeInteriorIntersection;
    }
    return std::nullopt;  // the segments meet only at a common endpoint
}

bool vertex_edge_conflict(const GridPoint& v, const Segment& e) {
    if (v == e.a || v == e.b) {
        throw GeometryError("vertex coincides with an endpoint of the tested edge");
    }
    return strictly_between(v, e.a, e.b);
}

}  // namespace gridweave
