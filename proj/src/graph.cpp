#include "gridweave/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "gridweave/error.hpp"
#include "gridweave/rng.hpp"

namespace gridweave {

namespace {

std::uint64_t edge_key(VertexId u, VertexId v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

}  // namespace

Graph::Graph(std::int32_t vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)), adjacency_(vertex_count < 0 ? 0 : vertex_count) {
    if (n_ < 0) {
        throw GraphError("negative vertex count");
    }
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges_.size() * 2);
    for (auto& e : edges_) {
        if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) {
            throw GraphError("edge {" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                             "} has an endpoint outside 0.." + std::to_string(n_ - 1));
        }
        if (e.u == e.v) {
            throw GraphError("self-loop at vertex " + std::to_string(e.u));
        }
        if (e.u > e.v) {
            std::swap(e.u, e.v);
        }
        if (!seen.insert(edge_key(e.u, e.v)).second) {
            throw GraphError("duplicate edge {" + std::to_string(e.u) + ", " + std::to_string(e.v) + "}");
        }
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& list : adjacency_) {
        std::sort(list.begin(), list.end());
    }
}

bool Graph::has_edge(VertexId a, VertexId b) const {
    if (a < 0 || a >= n_ || b < 0 || b >= n_) {
        return false;
    }
    const auto& list = adjacency_[a];
    return std::binary_search(list.begin(), list.end(), b);
}

std::vector<Edge> Graph::sorted_edges() const {
    std::vector<Edge> out(edges_.begin(), edges_.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.sorted_edges() == b.sorted_edges();
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Splits a line into exactly two non-negative integers.
bool parse_pair(std::string_view line, std::int64_t& a, std::int64_t& b) {
    line = trim(line);
    const char* p = line.data();
    const char* end = p + line.size();
    auto skip_ws = [&] {
        while (p != end && (*p == ' ' || *p == '\t')) {
            ++p;
        }
    };
    auto r1 = std::from_chars(p, end, a);
    if (r1.ec != std::errc{} || r1.ptr == p) {
        return false;
    }
    p = r1.ptr;
    if (p == end || (*p != ' ' && *p != '\t')) {
        return false;
    }
    skip_ws();
    auto r2 = std::from_chars(p, end, b);
    if (r2.ec != std::errc{} || r2.ptr == p) {
        return false;
    }
    p = r2.ptr;
    skip_ws();
    return p == end;
}

}  // namespace

Graph parse_graph(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    while (!lines.empty() && trim(lines.back()).empty()) {
        lines.pop_back();
    }
    if (lines.empty()) {
        throw ParseError("empty edge list; expected header \"n k\"", 1);
    }

    std::int64_t n = 0;
    std::int64_t k = 0;
    if (!parse_pair(lines[0], n, k) || n < 0 || k < 0) {
        throw ParseError("malformed header; expected \"n k\"", 1);
    }
    if (n > INT32_MAX) {
        throw ParseError("vertex count too large", 1);
    }
    const auto edge_lines = static_cast<std::int64_t>(lines.size()) - 1;
    if (edge_lines < k) {
        throw ParseError("header declares " + std::to_string(k) + " edges but only " +
                             std::to_string(edge_lines) + " edge lines follow",
                         lines.size() + 1);
    }
    if (edge_lines > k) {
        throw ParseError("unexpected line after the " + std::to_string(k) + " declared edges",
                         static_cast<std::size_t>(k) + 2);
    }

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(k));
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::int64_t u = 0;
        std::int64_t v = 0;
        if (!parse_pair(lines[i], u, v)) {
            throw ParseError("malformed edge line; expected \"u v\"", i + 1);
        }
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw ParseError("vertex id out of range 0.." + std::to_string(n - 1), i + 1);
        }
        if (u == v) {
            throw ParseError("self-loop at vertex " + std::to_string(u), i + 1);
        }
        const auto lo = static_cast<VertexId>(std::min(u, v));
        const auto hi = static_cast<VertexId>(std::max(u, v));
        if (!seen.insert(edge_key(lo, hi)).second) {
            throw ParseError("duplicate edge {" + std::to_string(lo) + ", " + std::to_string(hi) + "}", i + 1);
        }
        edges.push_back({lo, hi});
    }
    return Graph(static_cast<std::int32_t>(n), std::move(edges));
}

std::string serialize_graph(const Graph& g) {
    std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
    for (const auto& e : g.sorted_edges()) {
        out += std::to_string(e.u);
        out += ' ';
        out += std::to_string(e.v);
        out += '\n';
    }
    return out;
}

std::string graph_hash(const Graph& g) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize_graph(g)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

DegeneracyOrdering degeneracy_ordering(const Graph& g) {
    const auto n = g.vertex_count();
    DegeneracyOrdering out;
    out.order.reserve(n);
    out.rank.assign(n, -1);

    std::vector<std::int32_t> deg(n);
    std::set<std::pair<std::int32_t, VertexId>> queue;
    for (VertexId v = 0; v < n; ++v) {
        deg[v] = static_cast<std::int32_t>(g.degree(v));
        queue.emplace(deg[v], v);
    }
    while (!queue.empty()) {
        const auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        out.degeneracy = std::max(out.degeneracy, d);
        out.rank[v] = static_cast<std::int32_t>(out.order.size());
        out.order.push_back(v);
        for (VertexId w : g.neighbors(v)) {
            if (out.rank[w] >= 0) {
                continue;
            }
            queue.erase({deg[w], w});
            --deg[w];
            queue.emplace(deg[w], w);
        }
    }
    return out;
}

std::vector<std::int32_t> later_neighbor_counts(const Graph& g, std::span<const VertexId> order) {
    std::vector<std::int32_t> rank(g.vertex_count(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        rank[order[i]] = static_cast<std::int32_t>(i);
    }
    std::vector<std::int32_t> later(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (VertexId w : g.neighbors(order[i])) {
            if (rank[w] > static_cast<std::int32_t>(i)) {
                ++later[i];
            }
        }
    }
    return later;
}

BlowupGraph blowup(const Graph& g, std::int32_t t) {
    if (t < 1) {
        throw InfeasibleError("blowup part size t must be at least 1");
    }
    BlowupGraph out;
    out.base = g;
    out.t = t;
    out.ordering = degeneracy_ordering(g);

    const std::int64_t total = static_cast<std::int64_t>(g.vertex_count()) * t;
    if (total > INT32_MAX) {
        throw InfeasibleError("blowup has too many vertices");
    }
    std::vector<Edge> edges;
    edges.reserve(g.edge_count() * static_cast<std::size_t>(t) * t);
    for (const auto& e : g.edges()) {
        const auto pu = out.ordering.rank[e.u];
        const auto pv = out.ordering.rank[e.v];
        for (std::int32_t a = 0; a < t; ++a) {
            for (std::int32_t b = 0; b < t; ++b) {
                edges.push_back({pu * t + a, pv * t + b});
            }
        }
    }
    out.graph = Graph(static_cast<std::int32_t>(total), std::move(edges));
    return out;
}

std::string_view family_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::RandomRegular: return "random-regular";
        case FamilyKind::RandomDegenerate: return "random-degenerate";
        case FamilyKind::Grid2d: return "grid-2d";
        case FamilyKind::CompleteBipartite: return "complete-bipartite";
    }
    return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
    if (name == "random-regular") return FamilyKind::RandomRegular;
    if (name == "random-degenerate" || name == "random-D-degenerate") return FamilyKind::RandomDegenerate;
    if (name == "grid-2d") return FamilyKind::Grid2d;
    if (name == "complete-bipartite") return FamilyKind::CompleteBipartite;
    throw ParseError("unknown graph family \"" + std::string(name) + "\"");
}

namespace {

std::int32_t grid_width(const FamilySpec& spec, std::int32_t n) {
    if (spec.width > 0) {
        return spec.width;
    }
    const auto side = static_cast<std::int32_t>(std::lround(std::sqrt(static_cast<double>(n))));
    return side;
}

}  // namespace

void check_family_feasible(const FamilySpec& spec, std::int32_t n) {
    auto fail = [&](const std::string& why) {
        throw InfeasibleError(std::string(family_name(spec.kind)) + " with n=" + std::to_string(n) + ": " + why);
    };
    switch (spec.kind) {
        case FamilyKind::RandomRegular:
            if (n < 1) fail("n must be positive");
            if (spec.degree < 0) fail("degree must be non-negative");
            if (spec.degree >= n) fail("degree must be below n");
            if ((static_cast<std::int64_t>(spec.degree) * n) % 2 != 0) fail("degree * n must be even");
            break;
        case FamilyKind::RandomDegenerate:
            if (n < 1) fail("n must be positive");
            if (spec.degeneracy < 0) fail("degeneracy must be non-negative");
            break;
        case FamilyKind::Grid2d: {
            if (n < 1) fail("n must be positive");
            const auto w = grid_width(spec, n);
            if (w < 1 || n % w != 0 || (spec.width == 0 && w * w != n)) {
                fail("n must be a multiple of the grid width (a perfect square when width is unset)");
            }
            break;
        }
        case FamilyKind::CompleteBipartite:
            if (spec.part_a < 0 || spec.part_b < 0 || spec.part_a + spec.part_b < 1) fail("part sizes must be positive");
            if (n != 0 && n != spec.part_a + spec.part_b) fail("n must equal a + b");
            break;
    }
}

namespace {

// Configuration model with full restarts; uniform over simple d-regular graphs.
Graph random_regular(std::int32_t n, std::int32_t d, Rng& rng) {
    std::vector<VertexId> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (std::int32_t attempt = 0; attempt < 100000; ++attempt) {
        stubs.clear();
        for (VertexId v = 0; v < n; ++v) {
            for (std::int32_t j = 0; j < d; ++j) {
                stubs.push_back(v);
            }
        }
        shuffle(std::span<VertexId>(stubs), rng);
        std::unordered_set<std::uint64_t> seen;
        std::vector<Edge> edges;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            auto u = stubs[i];
            auto v = stubs[i + 1];
            if (u == v) {
                ok = false;
                break;
            }
            if (u > v) std::swap(u, v);
            if (!seen.insert(edge_key(u, v)).second) {
                ok = false;
                break;
            }
            edges.push_back({u, v});
        }
        if (ok) {
            return Graph(n, std::move(edges));
        }
    }
    throw InfeasibleError("random-regular generator did not produce a simple graph");
}

Graph random_degenerate(std::int32_t n, std::int32_t D, Rng& rng) {
    std::vector<Edge> edges;
    std::vector<VertexId> pool;
    for (VertexId v = 0; v < n; ++v) {
        const auto want = std::min<std::int32_t>(D, v);
        pool.resize(v);
        std::iota(pool.begin(), pool.end(), 0);
        // Partial Fisher-Yates: the first `want` entries are a uniform sample.
        for (std::int32_t j = 0; j < want; ++j) {
            const auto pick = j + static_cast<std::int32_t>(uniform_below(rng, v - j));
            std::swap(pool[j], pool[pick]);
            edges.push_back({pool[j], v});
        }
    }
    return Graph(n, std::move(edges));
}

Graph grid_2d(std::int32_t n, std::int32_t width) {
    const auto rows = n / width;
    std::vector<Edge> edges;
    for (std::int32_t r = 0; r < rows; ++r) {
        for (std::int32_t c = 0; c < width; ++c) {
            const VertexId v = r * width + c;
            if (c + 1 < width) edges.push_back({v, v + 1});
            if (r + 1 < rows) edges.push_back({v, v + width});
        }
    }
    return Graph(n, std::move(edges));
}

Graph complete_bipartite(std::int32_t a, std::int32_t b) {
    std::vector<Edge> edges;
    for (VertexId u = 0; u < a; ++u) {
        for (VertexId v = 0; v < b; ++v) {
            edges.push_back({u, a + v});
        }
    }
    return Graph(a + b, std::move(edges));
}

}  // namespace

Graph generate_family(const FamilySpec& spec, std::int32_t n, std::uint64_t seed) {
    check_family_feasible(spec, n);
    Rng rng(seed);
    switch (spec.kind) {
        case FamilyKind::RandomRegular: return random_regular(n, spec.degree, rng);
        case FamilyKind::RandomDegenerate: return random_degenerate(n, spec.degeneracy, rng);
        case FamilyKind::Grid2d: return grid_2d(n, grid_width(spec, n));
        case FamilyKind::CompleteBipartite: return complete_bipartite(spec.part_a, spec.part_b);
    }
    throw InfeasibleError("unknown family");
}

}  // namespace gridweave
