#include "gridweave/census.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gridweave/error.hpp"
#include "gridweave/geometry.hpp"
#include "gridweave/parallel.hpp"
#include "gridweave/simd/kernels.hpp"

namespace gridweave {

std::string_view census_kind_name(CensusKind kind) noexcept {
    switch (kind) {
        case CensusKind::CollinearKSets: return "collinear-ksets";
        case CensusKind::CoplanarOriginTriples: return "coplanar-origin-triples";
        case CensusKind::Coplanar4Sets: return "coplanar-4sets";
        case CensusKind::HyperplaneCount: return "hyperplane-count";
    }
    return "unknown";
}

std::string_view census_strategy_name(CensusStrategy strategy) noexcept {
    switch (strategy) {
        case CensusStrategy::Auto: return "auto";
        case CensusStrategy::Direct: return "direct";
        case CensusStrategy::Enumeration: return "enumeration";
    }
    return "unknown";
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    UInt128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > UINT64_MAX) {
            throw InfeasibleError("binomial coefficient overflows 64 bits");
        }
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t ordered_count(std::uint64_t unordered, std::int32_t k) {
    UInt128 acc = unordered;
    for (std::int32_t i = 2; i <= k; ++i) {
        acc *= static_cast<unsigned>(i);
        if (acc > UINT64_MAX) {
            throw InfeasibleError("ordered count overflows 64 bits");
        }
    }
    return static_cast<std::uint64_t>(acc);
}

namespace {

double ipow(double base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

// Primitive directions with max-norm <= bound, one per +/- pair.
double direction_count_estimate(std::int32_t d, double bound) { return ipow(2.0 * bound + 1.0, d) / 2.0; }

void require_work(double work, std::string_view what) {
    if (work > kCensusWorkLimit) {
        std::ostringstream msg;
        msg << what << " needs about " << work << " kernel operations, above the limit of " << kCensusWorkLimit;
        throw InfeasibleError(msg.str());
    }
}

void require_size(std::int32_t d, std::int32_t m) {
    if (m < 1) {
        throw InfeasibleError("grid side m must be at least 1");
    }
    if (d < 1 || ipow(m, d) > 2.0e9) {
        throw InfeasibleError("grid [m]^d is too large to enumerate");
    }
}

simd::PointCloud grid_cloud(std::int32_t d, std::int32_t m) {
    simd::PointCloud cloud;
    const auto zmax = d == 3 ? m : 1;
    for (std::int32_t x = 0; x < m; ++x) {
        for (std::int32_t y = 0; y < m; ++y) {
            for (std::int32_t z = 0; z < zmax; ++z) {
                cloud.push_back(x, y, z);
            }
        }
    }
    return cloud;
}

// All points of [m]^d, flattened, in odometer order.
std::vector<std::int32_t> grid_points(std::int32_t d, std::int32_t m) {
    const auto n = static_cast<std::size_t>(ipow(m, d));
    std::vector<std::int32_t> out;
    out.reserve(n * d);
    std::vector<std::int32_t> p(d, 0);
    for (std::size_t i = 0; i < n; ++i) {
        out.insert(out.end(), p.begin(), p.end());
        for (std::int32_t c = d - 1; c >= 0; --c) {
            if (++p[c] < m) break;
            p[c] = 0;
        }
    }
    return out;
}

bool canonical_primitive(std::span<const std::int64_t> v) {
    std::int64_t g = 0;
    std::int64_t first = 0;
    for (auto c : v) {
        if (first == 0) first = c;
        g = std::gcd(g, c < 0 ? -c : c);
    }
    return first > 0 && g == 1;
}

// Primitive vectors with entries in [-bound, bound], first nonzero entry positive.
std::vector<std::int64_t> primitive_vectors(std::int32_t d, std::int64_t bound) {
    std::vector<std::int64_t> out;
    std::vector<std::int64_t> v(d, -bound);
    for (;;) {
        if (canonical_primitive(v)) {
            out.insert(out.end(), v.begin(), v.end());
        }
        std::int32_t c = d - 1;
        for (; c >= 0; --c) {
            if (++v[c] <= bound) break;
            v[c] = -bound;
        }
        if (c < 0) break;
    }
    return out;
}

std::uint64_t collinear_direct(std::int32_t d, std::int32_t k, std::int32_t m) {
    const auto cloud = grid_cloud(d, m);
    const simd::Vec3i far{m - 1, m - 1, m - 1};
    if (!simd::line_kernel_fits(far, far, m - 1)) {
        throw InfeasibleError("grid side too large for the 32-bit line kernel");
    }
    const auto n = cloud.size();
    return parallel_sum(n, [&](std::size_t i) {
        std::uint64_t sum = 0;
        const simd::Vec3i p{cloud.x[i], cloud.y[i], cloud.z[i]};
        for (std::size_t j = i + 1; j < n; ++j) {
            const simd::Vec3i dir{cloud.x[j] - p.x, cloud.y[j] - p.y, cloud.z[j] - p.z};
            const auto on_line = simd::count_line_hits(p, dir, simd::tail(cloud, j + 1));
            sum += binomial(on_line, static_cast<std::uint64_t>(k - 2));
        }
        return sum;
    });
}

std::uint64_t collinear_by_lines(std::int32_t d, std::int32_t k, std::int32_t m) {
    const auto dirs = primitive_vectors(d, m - 1);
    const auto points = grid_points(d, m);
    const auto n = points.size() / d;
    const auto dir_count = dirs.size() / d;
    return parallel_sum(dir_count, [&](std::size_t di) {
        const std::int64_t* v = dirs.data() + di * d;
        std::int64_t norm = 0;
        for (std::int32_t c = 0; c < d; ++c) {
            norm = std::max(norm, v[c] < 0 ? -v[c] : v[c]);
        }
        // A line in direction v meets [m]^d in at most ceil(m / |v|_inf) points.
        if ((m + norm - 1) / norm < k) {
            return std::uint64_t{0};
        }
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::int32_t* p = points.data() + i * d;
            bool start = false;
            std::int64_t steps = INT64_MAX;
            for (std::int32_t c = 0; c < d; ++c) {
                const auto prev = p[c] - v[c];
                if (prev < 0 || prev >= m) start = true;
                if (v[c] > 0) {
                    steps = std::min<std::int64_t>(steps, (m - 1 - p[c]) / v[c]);
                } else if (v[c] < 0) {
                    steps = std::min<std::int64_t>(steps, p[c] / -v[c]);
                }
            }
            if (start && steps + 1 >= k) {
                sum += binomial(static_cast<std::uint64_t>(steps + 1), static_cast<std::uint64_t>(k));
            }
        }
        return sum;
    });
}

}  // namespace

double census_work(CensusKind kind, std::int32_t d, std::int32_t k, std::int32_t m, CensusStrategy strategy) {
    const double n = ipow(m, d);
    switch (kind) {
        case CensusKind::CollinearKSets:
            if (strategy == CensusStrategy::Direct) return n * n * n / 6.0;
            return direction_count_estimate(d, m - 1) * n * d;
        case CensusKind::CoplanarOriginTriples: return n * n * n / 6.0;
        case CensusKind::Coplanar4Sets:
            if (strategy == CensusStrategy::Direct) return n * n * n * n / 24.0;
            return direction_count_estimate(3, 2.0 * (m - 1) * (m - 1)) * n * 8.0;
        case CensusKind::HyperplaneCount: return n * d;
    }
    (void)k;
    return 0.0;
}

CensusResult count_collinear_ksets(std::int32_t d, std::int32_t k, std::int32_t m, CensusStrategy strategy) {
    if (d < 2 || k < 2) {
        throw InfeasibleError("collinear census requires d >= 2 and k >= 2");
    }
    require_size(d, m);
    if (strategy == CensusStrategy::Auto) {
        strategy = CensusStrategy::Enumeration;
    }
    if (strategy == CensusStrategy::Direct && d > 3) {
        throw InfeasibleError("direct collinear census supports d = 2 or 3 only");
    }
    CensusResult out{CensusKind::CollinearKSets, d, k, m, 0, strategy};
    if (k > m) {
        return out;  // a line meets [m]^d in at most m points
    }
    require_work(census_work(out.kind, d, k, m, strategy), "collinear census");
    out.count = strategy == CensusStrategy::Direct ? collinear_direct(d, k, m) : collinear_by_lines(d, k, m);
    return out;
}

CensusResult count_coplanar_origin_triples(std::int32_t m) {
    require_size(3, m);
    CensusResult out{CensusKind::CoplanarOriginTriples, 3, 3, m, 0, CensusStrategy::Direct};
    require_work(census_work(out.kind, 3, 3, m, CensusStrategy::Direct), "coplanar-origin census");
    const auto cloud = grid_cloud(3, m);
    const std::int32_t cmax = 2 * (m - 1) * (m - 1);
    if (!simd::plane_kernel_fits({cmax, cmax, cmax}, 0, m - 1)) {
        throw InfeasibleError("grid side too large for the 32-bit plane kernel");
    }
    const auto n = cloud.size();
    out.count = parallel_sum(n, [&](std::size_t i) {
        std::uint64_t sum = 0;
        const simd::Vec3i p{cloud.x[i], cloud.y[i], cloud.z[i]};
        for (std::size_t j = i + 1; j < n; ++j) {
            const simd::Vec3i q{cloud.x[j], cloud.y[j], cloud.z[j]};
            const simd::Vec3i normal{p.y * q.z - p.z * q.y, p.z * q.x - p.x * q.z, p.x * q.y - p.y * q.x};
            sum += simd::count_plane_hits(normal, 0, simd::tail(cloud, j + 1));
        }
        return sum;
    });
    return out;
}

namespace {

std::uint64_t coplanar4_direct(std::int32_t m) {
    const auto cloud = grid_cloud(3, m);
    const std::int32_t cmax = 2 * (m - 1) * (m - 1);
    if (!simd::plane_kernel_fits({cmax, cmax, cmax}, 3LL * cmax * (m - 1), m - 1)) {
        throw InfeasibleError("grid side too large for the 32-bit plane kernel");
    }
    const auto n = cloud.size();
    return parallel_sum(n, [&](std::size_t i) {
        std::uint64_t sum = 0;
        const simd::Vec3i p{cloud.x[i], cloud.y[i], cloud.z[i]};
        for (std::size_t j = i + 1; j < n; ++j) {
            const simd::Vec3i u{cloud.x[j] - p.x, cloud.y[j] - p.y, cloud.z[j] - p.z};
            for (std::size_t l = j + 1; l < n; ++l) {
                const simd::Vec3i v{cloud.x[l] - p.x, cloud.y[l] - p.y, cloud.z[l] - p.z};
                const simd::Vec3i normal{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
                const auto offset = normal.x * p.x + normal.y * p.y + normal.z * p.z;
                sum += simd::count_plane_hits(normal, offset, simd::tail(cloud, l + 1));
            }
        }
        return sum;
    });
}

using P3 = std::array<std::int64_t, 3>;

// Collinear 4-subsets inside a small point set, via one line key per pair.
std::uint64_t collinear4_within(std::span<const P3> pts) {
    std::vector<std::array<std::int64_t, 6>> keys;
    keys.reserve(pts.size() * (pts.size() - 1) / 2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            P3 dir{pts[j][0] - pts[i][0], pts[j][1] - pts[i][1], pts[j][2] - pts[i][2]};
            const auto g = std::gcd(std::gcd(dir[0], dir[1]), dir[2]);
            for (auto& c : dir) c /= g;
            const auto first = dir[0] != 0 ? dir[0] : (dir[1] != 0 ? dir[1] : dir[2]);
            if (first < 0) {
                for (auto& c : dir) c = -c;
            }
            const auto& p = pts[i];
            // p x dir is constant along the line.
            keys.push_back({dir[0], dir[1], dir[2], p[1] * dir[2] - p[2] * dir[1], p[2] * dir[0] - p[0] * dir[2],
                            p[0] * dir[1] - p[1] * dir[0]});
        }
    }
    std::sort(keys.begin(), keys.end());
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        const auto pairs = static_cast<std::uint64_t>(j - i);
        // pairs = L (L - 1) / 2
        const auto points_on_line =
            static_cast<std::uint64_t>(std::llround((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(pairs))) / 2.0));
        total += binomial(points_on_line, 4);
        i = j;
    }
    return total;
}

std::uint64_t coplanar4_by_planes(std::int32_t m) {
    const std::int64_t bound = 2LL * (m - 1) * (m - 1);
    const auto points = grid_points(3, m);
    const auto n = points.size() / 3;
    const auto within_planes = parallel_sum(static_cast<std::size_t>(bound + 1), [&](std::size_t ax) {
        std::vector<std::pair<std::int64_t, std::uint32_t>> values(n);
        std::vector<P3> bucket;
        std::uint64_t sum = 0;
        for (std::int64_t ay = -bound; ay <= bound; ++ay) {
            for (std::int64_t az = -bound; az <= bound; ++az) {
                const std::array<std::int64_t, 3> a{static_cast<std::int64_t>(ax), ay, az};
                if (!canonical_primitive(a)) continue;
                for (std::size_t i = 0; i < n; ++i) {
                    const auto* p = points.data() + 3 * i;
                    values[i] = {a[0] * p[0] + a[1] * p[1] + a[2] * p[2], static_cast<std::uint32_t>(i)};
                }
                std::sort(values.begin(), values.end());
                for (std::size_t i = 0; i < n;) {
                    std::size_t j = i;
                    while (j < n && values[j].first == values[i].first) ++j;
                    if (j - i >= 4) {
                        bucket.clear();
                        for (std::size_t t = i; t < j; ++t) {
                            const auto* p = points.data() + 3 * values[t].second;
                            bucket.push_back({p[0], p[1], p[2]});
                        }
                        sum += binomial(j - i, 4) - collinear4_within(bucket);
                    }
                    i = j;
                }
            }
        }
        return sum;
    });
    // Collinear 4-sets lie in many planes and were removed above; add each once.
    return within_planes + count_collinear_ksets(3, 4, m, CensusStrategy::Enumeration).count;
}

}  // namespace

CensusResult count_coplanar_4sets(std::int32_t m, CensusStrategy strategy) {
    require_size(3, m);
    if (strategy == CensusStrategy::Auto) {
        strategy = census_work(CensusKind::Coplanar4Sets, 3, 4, m, CensusStrategy::Direct) <= 1.0e9
                       ? CensusStrategy::Direct
                       : CensusStrategy::Enumeration;
    }
    CensusResult out{CensusKind::Coplanar4Sets, 3, 4, m, 0, strategy};
    require_work(census_work(out.kind, 3, 4, m, strategy), "coplanar 4-set census");
    if (m < 2) {
        return out;
    }
    out.count = strategy == CensusStrategy::Direct ? coplanar4_direct(m) : coplanar4_by_planes(m);
    return out;
}

PrimitiveNormal::PrimitiveNormal(std::vector<std::int64_t> coefficients) : a_(std::move(coefficients)) {
    if (a_.size() < 2) {
        throw InfeasibleError("normal must have dimension d >= 2");
    }
    std::int64_t g = 0;
    for (auto c : a_) {
        const auto mag = c < 0 ? -c : c;
        g = std::gcd(g, mag);
        s_ = std::max(s_, mag);
    }
    if (g != 1) {
        throw InfeasibleError("normal " + to_string() + " is not primitive (entries must be coprime, not all zero)");
    }
}

std::string PrimitiveNormal::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(a_[i]);
    }
    return out + ")";
}

namespace {

// Incremental rank over the rationals via fraction-free elimination.
class RankTracker {
public:
    explicit RankTracker(std::size_t dim) : dim_(dim) {}

    std::size_t rank() const noexcept { return rows_.size(); }

    void add(std::span<const std::int64_t> point) {
        std::vector<Int128> v(point.begin(), point.end());
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const auto c = pivots_[r];
            if (v[c] == 0) continue;
            const auto f = v[c];
            const auto g = rows_[r][c];
            for (std::size_t i = 0; i < dim_; ++i) {
                v[i] = v[i] * g - rows_[r][i] * f;
            }
            normalize(v);
        }
        for (std::size_t i = 0; i < dim_; ++i) {
            if (v[i] != 0) {
                pivots_.push_back(i);
                rows_.push_back(std::move(v));
                return;
            }
        }
    }

private:
    static Int128 abs128(Int128 x) { return x < 0 ? -x : x; }

    static void normalize(std::vector<Int128>& v) {
        Int128 g = 0;
        for (auto x : v) {
            auto a = abs128(x);
            while (a != 0) {
                const auto t = g % a;
                g = a;
                a = t;
            }
        }
        if (g > 1) {
            for (auto& x : v) x /= g;
        }
    }

    std::size_t dim_;
    std::vector<std::vector<Int128>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace

HyperplaneResult hyperplane_count(const PrimitiveNormal& a, std::int32_t m) {
    const auto d = a.dimension();
    const auto s = a.max_abs();
    if (m < s) {
        throw InfeasibleError("hyperplane bound requires m >= s (m=" + std::to_string(m) + ", s=" + std::to_string(s) + ")");
    }
    require_size(d, m);
    const auto coeff = a.coefficients();

    HyperplaneResult out;
    out.census = {CensusKind::HyperplaneCount, d, 0, m, 0, CensusStrategy::Direct};

    RankTracker rank(d);
    const auto target_rank = static_cast<std::size_t>(d - 1);
    std::vector<std::int64_t> p(d, 0);
    const bool use_kernel = d == 3 && simd::plane_kernel_fits({static_cast<std::int32_t>(s), static_cast<std::int32_t>(s),
                                                               static_cast<std::int32_t>(s)},
                                                              0, m - 1);
    if (use_kernel) {
        const auto cloud = grid_cloud(3, m);
        const simd::Vec3i normal{static_cast<std::int32_t>(coeff[0]), static_cast<std::int32_t>(coeff[1]),
                                 static_cast<std::int32_t>(coeff[2])};
        out.census.count = simd::count_plane_hits(normal, 0, simd::all(cloud));
        for (std::size_t i = 0; i < cloud.size() && rank.rank() < target_rank; ++i) {
            if (normal.x * cloud.x[i] + normal.y * cloud.y[i] + normal.z * cloud.z[i] == 0) {
                const std::int64_t q[3] = {cloud.x[i], cloud.y[i], cloud.z[i]};
                rank.add(q);
            }
        }
    } else {
        const auto total = static_cast<std::uint64_t>(ipow(m, d));
        for (std::uint64_t i = 0; i < total; ++i) {
            std::int64_t value = 0;
            for (std::int32_t c = 0; c < d; ++c) value += coeff[c] * p[c];
            if (value == 0) {
                ++out.census.count;
                if (rank.rank() < target_rank) rank.add(p);
            }
            for (std::int32_t c = d - 1; c >= 0; --c) {
                if (++p[c] < m) break;
                p[c] = 0;
            }
        }
    }

    out.spans = rank.rank() == target_rank;
    const double limit = ipow(3.0, d) * ipow(m, d - 1);
    out.bound = limit / static_cast<double>(s);
    UInt128 exact_limit = 1;
    for (std::int32_t i = 0; i < d; ++i) exact_limit *= 3;
    for (std::int32_t i = 0; i < d - 1; ++i) exact_limit *= static_cast<unsigned>(m);
    out.bound_holds = static_cast<UInt128>(out.census.count) * static_cast<UInt128>(s) <= exact_limit;
    return out;
}

HyperplaneSweep sweep_hyperplane_bound(std::int32_t d, std::int32_t m, std::int32_t s_max) {
    if (s_max < 1 || s_max > m) {
        throw InfeasibleError("sweep requires 1 <= s_max <= m");
    }
    const auto normals = primitive_vectors(d, s_max);
    const auto count = normals.size() / d;
    std::vector<HyperplaneResult> results(count);
    parallel_for(count, [&](std::size_t i) {
        const PrimitiveNormal a(std::vector<std::int64_t>(normals.begin() + i * d, normals.begin() + (i + 1) * d));
        results[i] = hyperplane_count(a, m);
    });
    HyperplaneSweep out;
    out.normals = count;
    for (const auto& r : results) {
        if (!r.spans) continue;
        ++out.spanning;
        if (!r.bound_holds) ++out.violations;
        out.max_ratio = std::max(out.max_ratio, static_cast<double>(r.census.count) / r.bound);
    }
    return out;
}

double fit_growth_exponent(std::span<const std::pair<double, double>> series) {
    std::vector<std::pair<double, double>> logs;
    for (const auto& [m, count] : series) {
        if (m > 0 && count > 0) {
            logs.emplace_back(std::log(m), std::log(count));
        }
    }
    if (logs.size() < 3) {
        throw InfeasibleError("growth fit needs at least three points with positive m and count");
    }
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : logs) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(logs.size());
    my /= static_cast<double>(logs.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& [x, y] : logs) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if (sxx == 0.0) {
        throw InfeasibleError("growth fit needs at least two distinct m values");
    }
    return sxy / sxx;
}

}  // namespace gridweave
