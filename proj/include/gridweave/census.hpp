#pragma once

// Lattice censuses over [m]^d, used to check the point-tuple counting bounds
// numerically. All counts are of unordered sets of distinct points; multiply
// by k! (ordered_count) for ordered tuples.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gridweave {

enum class CensusKind { CollinearKSets, CoplanarOriginTriples, Coplanar4Sets, HyperplaneCount };

/// Direct: exhaustive scan over point pairs/triples with the SIMD kernels.
/// Enumeration: one pass per primitive line direction (collinear) or per
/// primitive plane normal (coplanar 4-sets); an independent second counter.
enum class CensusStrategy { Auto, Direct, Enumeration };

std::string_view census_kind_name(CensusKind kind) noexcept;
std::string_view census_strategy_name(CensusStrategy strategy) noexcept;

struct CensusResult {
    CensusKind kind = CensusKind::CollinearKSets;
    std::int32_t d = 3;
    std::int32_t k = 0;  // tuple size; 0 for hyperplane counts
    std::int32_t m = 0;
    std::uint64_t count = 0;
    CensusStrategy strategy = CensusStrategy::Direct;
};

/// Budget of elementary kernel operations a census may spend before it is
/// refused with an InfeasibleError that reports the estimate.
inline constexpr double kCensusWorkLimit = 2.0e10;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// ordered = unordered * k!
std::uint64_t ordered_count(std::uint64_t unordered, std::int32_t k);

/// Estimated kernel operations for a census; used by the guardrails and by
/// the CLI when it refuses a request.
double census_work(CensusKind kind, std::int32_t d, std::int32_t k, std::int32_t m, CensusStrategy strategy);

/// Unordered k-subsets of [m]^d on a common line. Direct supports d in {2, 3};
/// Enumeration works for any d >= 2. Auto picks Enumeration.
CensusResult count_collinear_ksets(std::int32_t d, std::int32_t k, std::int32_t m,
                                   CensusStrategy strategy = CensusStrategy::Auto);

/// Unordered 3-subsets {p, q, r} of [m]^3 with det(p, q, r) = 0. Direct only.
CensusResult count_coplanar_origin_triples(std::int32_t m);

/// Unordered 4-subsets of [m]^3 on a common plane. Auto runs Direct when it
/// is cheap and plane enumeration otherwise.
CensusResult count_coplanar_4sets(std::int32_t m, CensusStrategy strategy = CensusStrategy::Auto);

/// Integer normal with coprime entries; s = max |a_i|.
class PrimitiveNormal {
public:
    explicit PrimitiveNormal(std::vector<std::int64_t> coefficients);

    std::span<const std::int64_t> coefficients() const noexcept { return a_; }
    std::int32_t dimension() const noexcept { return static_cast<std::int32_t>(a_.size()); }
    std::int64_t max_abs() const noexcept { return s_; }
    std::string to_string() const;

private:
    std::vector<std::int64_t> a_;
    std::int64_t s_ = 0;
};

struct HyperplaneResult {
    CensusResult census;
    bool spans = false;        // intersection spans a (d-1)-dimensional subspace
    bool bound_holds = false;  // count * s <= 3^d m^(d-1); only meaningful when spans
    double bound = 0.0;        // 3^d m^(d-1) / s, for reporting
};

/// Exact |{x in [m]^d : a . x = 0}| by direct scan, with the rank check and
/// the bound verdict evaluated in integers. Requires m >= s.
HyperplaneResult hyperplane_count(const PrimitiveNormal& a, std::int32_t m);

struct HyperplaneSweep {
    std::uint64_t normals = 0;     // primitive normals examined, one per +/- pair
    std::uint64_t spanning = 0;    // of those, planes meeting [m]^d in a spanning set
    std::uint64_t violations = 0;  // spanning planes exceeding the bound
    double max_ratio = 0.0;        // max over spanning planes of count / bound
};

/// Every primitive normal in dimension d with max |a_i| <= s_max (one
/// representative per sign pair), checked with hyperplane_count.
HyperplaneSweep sweep_hyperplane_bound(std::int32_t d, std::int32_t m, std::int32_t s_max);

/// Least-squares slope of log(count) against log(m). Points with
/// non-positive m or count are skipped; fewer than three usable points is an
/// error.
double fit_growth_exponent(std::span<const std::pair<double, double>> series);

}  // namespace gridweave
