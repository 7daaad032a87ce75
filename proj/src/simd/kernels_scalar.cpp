#include "gridweave/simd/kernels.hpp"

namespace gridweave::simd::detail {

std::uint64_t count_plane_hits_scalar(Vec3i normal, std::int32_t offset, PointSpan points) noexcept {
    std::uint64_t hits = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto value = normal.x * points.x[i] + normal.y * points.y[i] + normal.z * points.z[i];
        hits += value == offset;
    }
    return hits;
}

std::uint64_t count_line_hits_scalar(Vec3i origin, Vec3i direction, PointSpan points) noexcept {
    std::uint64_t hits = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto dx = points.x[i] - origin.x;
        const auto dy = points.y[i] - origin.y;
        const auto dz = points.z[i] - origin.z;
        const auto cx = dy * direction.z - dz * direction.y;
        const auto cy = dz * direction.x - dx * direction.z;
        const auto cz = dx * direction.y - dy * direction.x;
        hits += (cx | cy | cz) == 0;
    }
    return hits;
}

}  // namespace gridweave::simd::detail
