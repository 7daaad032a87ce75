#include <algorithm>
#include <cstdlib>
#include <cstring>

#include "gridweave/simd/kernels.hpp"

namespace gridweave::simd {

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(GRIDWEAVE_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() noexcept {
    static const Isa chosen = [] {
        const char* forced = std::getenv("GRIDWEAVE_SIMD");
        if (forced && std::strcmp(forced, "scalar") == 0) {
            return Isa::Scalar;
        }
        return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
    }();
    return chosen;
}

namespace {

std::int64_t abs64(std::int64_t v) noexcept { return v < 0 ? -v : v; }

constexpr std::int64_t kLaneLimit = (std::int64_t{1} << 31) - 1;

}  // namespace

bool plane_kernel_fits(Vec3i normal, std::int64_t offset, std::int64_t max_abs_coord) noexcept {
    const auto spread = (abs64(normal.x) + abs64(normal.y) + abs64(normal.z)) * max_abs_coord;
    return spread <= kLaneLimit && abs64(offset) <= kLaneLimit;
}

bool line_kernel_fits(Vec3i origin, Vec3i direction, std::int64_t max_abs_coord) noexcept {
    const auto max_origin = std::max({abs64(origin.x), abs64(origin.y), abs64(origin.z)});
    const auto max_dir = std::max({abs64(direction.x), abs64(direction.y), abs64(direction.z)});
    const auto diff = max_abs_coord + max_origin;
    return 2 * diff * max_dir <= kLaneLimit;
}

std::uint64_t count_plane_hits(Isa isa, Vec3i normal, std::int32_t offset, PointSpan points) {
    if (isa == Isa::Avx2 && isa_supported(Isa::Avx2)) {
        return detail::count_plane_hits_avx2(normal, offset, points);
    }
    return detail::count_plane_hits_scalar(normal, offset, points);
}

std::uint64_t count_line_hits(Isa isa, Vec3i origin, Vec3i direction, PointSpan points) {
    if (isa == Isa::Avx2 && isa_supported(Isa::Avx2)) {
        return detail::count_line_hits_avx2(origin, direction, points);
    }
    return detail::count_line_hits_scalar(origin, direction, points);
}

}  // namespace gridweave::simd
