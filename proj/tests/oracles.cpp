#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>

namespace oracle {

namespace {

Int128 gcd128(Int128 a, Int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const auto t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rational::Rational(Int128 num, Int128 den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const auto g = gcd128(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational operator+(const Rational& a, const Rational& b) { return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_}; }
Rational operator-(const Rational& a, const Rational& b) { return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_}; }
Rational operator*(const Rational& a, const Rational& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
Rational operator/(const Rational& a, const Rational& b) { return {a.num_ * b.den_, a.den_ * b.num_}; }

namespace {

using Row = std::array<Rational, 3>;

const Rational kZero{0};
const Rational kOne{1};

bool in_closed_unit(const Rational& s) { return kZero <= s && s <= kOne; }
bool in_open_unit(const Rational& s) { return kZero < s && s < kOne; }

// Solves s * r - u * w = rhs (three equations, two unknowns) by elimination.
// Returns rank of [r | -w] and, when consistent with rank 2, the solution.
struct Solve {
    int rank = 0;
    bool consistent = false;
    Rational s, u;
};

Solve solve_3x2(const gridweave::GridPoint& r, const gridweave::GridPoint& w, const gridweave::GridPoint& rhs) {
    std::array<Row, 3> m = {Row{Rational(r.x), Rational(-w.x), Rational(rhs.x)},
                            Row{Rational(r.y), Rational(-w.y), Rational(rhs.y)},
                            Row{Rational(r.z), Rational(-w.z), Rational(rhs.z)}};
    int row = 0;
    std::array<int, 2> pivot_row = {-1, -1};
    for (int col = 0; col < 2 && row < 3; ++col) {
        int p = -1;
        for (int i = row; i < 3; ++i) {
            if (!m[i][col].is_zero()) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        std::swap(m[row], m[p]);
        for (int i = 0; i < 3; ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            const auto f = m[i][col] / m[row][col];
            for (int j = 0; j < 3; ++j) m[i][j] = m[i][j] - f * m[row][j];
        }
        pivot_row[col] = row;
        ++row;
    }
    Solve out;
    out.rank = row;
    out.consistent = true;
    for (int i = row; i < 3; ++i) {
        if (!m[i][2].is_zero()) out.consistent = false;
    }
    if (out.rank == 2 && out.consistent) {
        out.s = m[pivot_row[0]][2] / m[pivot_row[0]][0];
        out.u = m[pivot_row[1]][2] / m[pivot_row[1]][1];
    }
    return out;
}

// Parameter of p along a + s (b - a), assuming p is on that line.
Rational parameter_on_line(const gridweave::GridPoint& p, const gridweave::Segment& e) {
    const auto d = e.b - e.a;
    const auto q = p - e.a;
    if (d.x != 0) return Rational(q.x, d.x);
    if (d.y != 0) return Rational(q.y, d.y);
    return Rational(q.z, d.z);
}

bool on_line(const gridweave::GridPoint& p, const gridweave::Segment& e) {
    const auto t = parameter_on_line(p, e);
    const auto d = e.b - e.a;
    const auto q = p - e.a;
    return t * Rational(d.x) == Rational(q.x) && t * Rational(d.y) == Rational(q.y) && t * Rational(d.z) == Rational(q.z);
}

}  // namespace

bool point_inside_segment(const gridweave::GridPoint& v, const gridweave::Segment& e) {
    return on_line(v, e) && in_open_unit(parameter_on_line(v, e));
}

bool segments_conflict(const gridweave::Segment& e1, const gridweave::Segment& e2) {
    const auto r = e1.b - e1.a;
    const auto w = e2.b - e2.a;
    const auto sol = solve_3x2(r, w, e2.a - e1.a);
    if (sol.rank == 2) {
        if (!sol.consistent) return false;
        if (!in_closed_unit(sol.s) || !in_closed_unit(sol.u)) return false;
        return in_open_unit(sol.s) || in_open_unit(sol.u);
    }
    // Parallel directions.
    if (!on_line(e2.a, e1)) return false;
    auto lo = parameter_on_line(e2.a, e1);
    auto hi = parameter_on_line(e2.b, e1);
    if (hi < lo) std::swap(lo, hi);
    const auto from = kZero < lo ? lo : kZero;
    const auto to = hi < kOne ? hi : kOne;
    if (to < from) return false;
    if (!(from == to)) return true;
    // Single common point: interior to either segment?
    const auto s = from;
    const auto u = (s - parameter_on_line(e2.a, e1)) / (parameter_on_line(e2.b, e1) - parameter_on_line(e2.a, e1));
    return in_open_unit(s) || in_open_unit(u);
}

std::vector<gridweave::ConflictReport> naive_conflicts(const gridweave::Graph& g, const gridweave::Embedding& emb) {
    using gridweave::ConflictKind;
    std::vector<gridweave::ConflictReport> out;
    const auto edges = g.edges();
    const auto& pos = emb.points;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (segments_conflict({pos[edges[i].u], pos[edges[i].v]}, {pos[edges[j].u], pos[edges[j].v]})) {
                auto a = edges[i];
                auto b = edges[j];
                if (b < a) std::swap(a, b);
                out.push_back({ConflictKind::EdgeInteriorIntersection, -1, a, b});
            }
        }
    }
    for (const auto& e : edges) {
        for (gridweave::VertexId v = 0; v < g.vertex_count(); ++v) {
            if (v == e.u || v == e.v) continue;
            if (point_inside_segment(pos[v], {pos[e.u], pos[e.v]})) {
                out.push_back({ConflictKind::VertexInEdgeInterior, v, e, {}});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

using P = std::array<std::int64_t, 3>;

std::vector<P> grid(int d, int m) {
    std::vector<P> pts;
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (int z = 0; z < (d == 3 ? m : 1); ++z) pts.push_back({x, y, z});
    return pts;
}

bool cross_zero(const P& u, const P& v) {
    return u[1] * v[2] - u[2] * v[1] == 0 && u[2] * v[0] - u[0] * v[2] == 0 && u[0] * v[1] - u[1] * v[0] == 0;
}

P sub(const P& a, const P& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

std::int64_t det(const P& a, const P& b, const P& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

void for_each_subset(std::size_t n, int k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int depth) {
        if (depth == k) {
            fn(idx);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

}  // namespace

std::uint64_t brute_collinear_ksets(int d, int k, int m) {
    // Points of [m]^d in any dimension; collinear iff every 2x2 minor of
    // (q - p, r - p) vanishes.
    std::vector<std::vector<std::int64_t>> pts;
    std::vector<std::int64_t> x(d, 0);
    for (;;) {
        pts.push_back(x);
        int i = 0;
        while (i < d && ++x[i] == m) x[i++] = 0;
        if (i == d) break;
    }
    const auto parallel = [d](const std::vector<std::int64_t>& u, const std::vector<std::int64_t>& v) {
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (u[i] * v[j] != u[j] * v[i]) return false;
        return true;
    };
    const auto diff = [d](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
        std::vector<std::int64_t> r(d);
        for (int i = 0; i < d; ++i) r[i] = a[i] - b[i];
        return r;
    };
    std::uint64_t count = 0;
    for_each_subset(pts.size(), k, [&](const std::vector<std::size_t>& s) {
        const auto dir = diff(pts[s[1]], pts[s[0]]);
        for (std::size_t i = 2; i < s.size(); ++i) {
            if (!parallel(dir, diff(pts[s[i]], pts[s[0]]))) return;
        }
        ++count;
    });
    return count;
}

std::uint64_t brute_coplanar_origin_triples(int m) {
    const auto pts = grid(3, m);
    std::uint64_t count = 0;
    for_each_subset(pts.size(), 3, [&](const std::vector<std::size_t>& s) {
        if (det(pts[s[0]], pts[s[1]], pts[s[2]]) == 0) ++count;
    });
    return count;
}

std::uint64_t brute_coplanar_4sets(int m) {
    const auto pts = grid(3, m);
    std::uint64_t count = 0;
    for_each_subset(pts.size(), 4, [&](const std::vector<std::size_t>& s) {
        const auto& p = pts[s[0]];
        if (det(sub(pts[s[1]], p), sub(pts[s[2]], p), sub(pts[s[3]], p)) == 0) ++count;
    });
    return count;
}

std::uint64_t brute_hyperplane_count(const std::vector<std::int64_t>& a, int m) {
    const auto d = static_cast<int>(a.size());
    std::vector<std::int64_t> x(d, 0);
    std::uint64_t count = 0;
    for (;;) {
        std::int64_t v = 0;
        for (int i = 0; i < d; ++i) v += a[i] * x[i];
        if (v == 0) ++count;
        int c = d - 1;
        for (; c >= 0; --c) {
            if (++x[c] < m) break;
            x[c] = 0;
        }
        if (c < 0) break;
    }
    return count;
}

}  // namespace oracle
