#pragma once

// Counting kernels for the lattice censuses.
//
// Every kernel has a scalar reference in kernels_scalar.cpp and an AVX2
// variant in kernels_avx2.cpp (the only translation unit compiled with
// -mavx2). The dispatching overloads pick the variant at runtime from CPUID;
// GRIDWEAVE_SIMD=scalar forces the reference path.
//
// Arithmetic is int32 lane-wise. Callers keep |n.x| * max|coord| summed over
// the three axes below 2^31; census code checks this through
// plane_kernel_fits() / line_kernel_fits().

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace gridweave::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;

/// Widest supported ISA, unless GRIDWEAVE_SIMD=scalar is set.
Isa active_isa() noexcept;

/// Structure-of-arrays point cloud.
struct PointCloud {
    std::vector<std::int32_t> x;
    std::vector<std::int32_t> y;
    std::vector<std::int32_t> z;

    std::size_t size() const noexcept { return x.size(); }
    void push_back(std::int32_t px, std::int32_t py, std::int32_t pz) {
        x.push_back(px);
        y.push_back(py);
        z.push_back(pz);
    }
};

/// Read-only window [first, first + count) of a PointCloud.
struct PointSpan {
    std::span<const std::int32_t> x;
    std::span<const std::int32_t> y;
    std::span<const std::int32_t> z;

    std::size_t size() const noexcept { return x.size(); }
};

inline PointSpan tail(const PointCloud& cloud, std::size_t first) {
    const auto count = first < cloud.size() ? cloud.size() - first : 0;
    return {std::span(cloud.x).subspan(first < cloud.size() ? first : cloud.size(), count),
            std::span(cloud.y).subspan(first < cloud.size() ? first : cloud.size(), count),
            std::span(cloud.z).subspan(first < cloud.size() ? first : cloud.size(), count)};
}

inline PointSpan all(const PointCloud& cloud) { return tail(cloud, 0); }

struct Vec3i {
    std::int32_t x = 0;
    std::int32_t y = 0;
    std::int32_t z = 0;
};

/// |n.x| + |n.y| + |n.z| times max|coord| (plus |offset|) stays below 2^31.
bool plane_kernel_fits(Vec3i normal, std::int64_t offset, std::int64_t max_abs_coord) noexcept;

/// Differences (point - origin) and their products with the direction stay below 2^31.
bool line_kernel_fits(Vec3i origin, Vec3i direction, std::int64_t max_abs_coord) noexcept;

/// Number of points r with normal . r == offset.
std::uint64_t count_plane_hits(Isa isa, Vec3i normal, std::int32_t offset, PointSpan points);

/// Number of points r with (r - origin) x direction == 0, i.e. on the line
/// through `origin` with the given direction. A zero direction matches
/// every point.
std::uint64_t count_line_hits(Isa isa, Vec3i origin, Vec3i direction, PointSpan points);

inline std::uint64_t count_plane_hits(Vec3i normal, std::int32_t offset, PointSpan points) {
    return count_plane_hits(active_isa(), normal, offset, points);
}

inline std::uint64_t count_line_hits(Vec3i origin, Vec3i direction, PointSpan points) {
    return count_line_hits(active_isa(), origin, direction, points);
}

namespace detail {
std::uint64_t count_plane_hits_scalar(Vec3i normal, std::int32_t offset, PointSpan points) noexcept;
std::uint64_t count_line_hits_scalar(Vec3i origin, Vec3i direction, PointSpan points) noexcept;
std::uint64_t count_plane_hits_avx2(Vec3i normal, std::int32_t offset, PointSpan points) noexcept;
std::uint64_t count_line_hits_avx2(Vec3i origin, Vec3i direction, PointSpan points) noexcept;
}  // namespace detail

}  // namespace gridweave::simd
