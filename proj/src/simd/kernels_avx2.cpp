#include "gridweave/simd/kernels.hpp"

#if defined(GRIDWEAVE_HAVE_AVX2_TU)

#include <immintrin.h>

#include <bit>

namespace gridweave::simd::detail {

namespace {

inline __m256i load8(const std::int32_t* p) noexcept {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline unsigned lane_hits(__m256i mask) noexcept {
    return static_cast<unsigned>(std::popcount(static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(mask)))));
}

}  // namespace

std::uint64_t count_plane_hits_avx2(Vec3i normal, std::int32_t offset, PointSpan points) noexcept {
    const __m256i nx = _mm256_set1_epi32(normal.x);
    const __m256i ny = _mm256_set1_epi32(normal.y);
    const __m256i nz = _mm256_set1_epi32(normal.z);
    const __m256i target = _mm256_set1_epi32(offset);

    const std::size_t size = points.size();
    const std::size_t simd_end = size & ~std::size_t{7};
    std::uint64_t hits = 0;
    for (std::size_t i = 0; i < simd_end; i += 8) {
        __m256i v = _mm256_mullo_epi32(nx, load8(points.x.data() + i));
        v = _mm256_add_epi32(v, _mm256_mullo_epi32(ny, load8(points.y.data() + i)));
        v = _mm256_add_epi32(v, _mm256_mullo_epi32(nz, load8(points.z.data() + i)));
        hits += lane_hits(_mm256_cmpeq_epi32(v, target));
    }
    const PointSpan rest{points.x.subspan(simd_end), points.y.subspan(simd_end), points.z.subspan(simd_end)};
    return hits + count_plane_hits_scalar(normal, offset, rest);
}

std::uint64_t count_line_hits_avx2(Vec3i origin, Vec3i direction, PointSpan points) noexcept {
    const __m256i ox = _mm256_set1_epi32(origin.x);
    const __m256i oy = _mm256_set1_epi32(origin.y);
    const __m256i oz = _mm256_set1_epi32(origin.z);
    const __m256i vx = _mm256_set1_epi32(direction.x);
    const __m256i vy = _mm256_set1_epi32(direction.y);
    const __m256i vz = _mm256_set1_epi32(direction.z);
    const __m256i zero = _mm256_setzero_si256();

    const std::size_t size = points.size();
    const std::size_t simd_end = size & ~std::size_t{7};
    std::uint64_t hits = 0;
    for (std::size_t i = 0; i < simd_end; i += 8) {
        const __m256i dx = _mm256_sub_epi32(load8(points.x.data() + i), ox);
        const __m256i dy = _mm256_sub_epi32(load8(points.y.data() + i), oy);
        const __m256i dz = _mm256_sub_epi32(load8(points.z.data() + i), oz);
        const __m256i cx = _mm256_sub_epi32(_mm256_mullo_epi32(dy, vz), _mm256_mullo_epi32(dz, vy));
        const __m256i cy = _mm256_sub_epi32(_mm256_mullo_epi32(dz, vx), _mm256_mullo_epi32(dx, vz));
        const __m256i cz = _mm256_sub_epi32(_mm256_mullo_epi32(dx, vy), _mm256_mullo_epi32(dy, vx));
        const __m256i any = _mm256_or_si256(_mm256_or_si256(cx, cy), cz);
        hits += lane_hits(_mm256_cmpeq_epi32(any, zero));
    }
    const PointSpan rest{points.x.subspan(simd_end), points.y.subspan(simd_end), points.z.subspan(simd_end)};
    return hits + count_line_hits_scalar(origin, direction, rest);
}

}  // namespace gridweave::simd::detail

#else

namespace gridweave::simd::detail {

// Non-x86 builds: never selected by dispatch, kept so the symbols exist.
std::uint64_t count_plane_hits_avx2(Vec3i normal, std::int32_t offset, PointSpan points) noexcept {
    return count_plane_hits_scalar(normal, offset, points);
}

std::uint64_t count_line_hits_avx2(Vec3i origin, Vec3i direction, PointSpan points) noexcept {
    return count_line_hits_scalar(origin, direction, points);
}

}  // namespace gridweave::simd::detail

#endif
