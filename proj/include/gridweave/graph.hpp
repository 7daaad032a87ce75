#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gridweave {

using VertexId = std::int32_t;

/// Undirected edge stored with `u < v`.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on dense vertex ids 0..n-1.
///
/// Immutable after construction. The constructor rejects self-loops,
/// duplicate edges (in either orientation) and out-of-range endpoints.
/// Edges are kept in input order, normalized so that `u < v`; adjacency
/// lists are sorted.
class Graph {
public:
    Graph() = default;
    Graph(std::int32_t vertex_count, std::vector<Edge> edges);

    std::int32_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const VertexId> neighbors(VertexId v) const noexcept { return adjacency_[v]; }
    std::size_t degree(VertexId v) const noexcept { return adjacency_[v].size(); }
    bool has_edge(VertexId a, VertexId b) const;

    /// Edges sorted lexicographically; the canonical form used for
    /// serialization and hashing.
    std::vector<Edge> sorted_edges() const;

    friend bool operator==(const Graph& a, const Graph& b);

private:
    std::int32_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<VertexId>> adjacency_;
};

/// Parses the edge-list format: a header line "n k" followed by k lines
/// "u v". Blank trailing lines are ignored. Errors carry the 1-based line.
Graph parse_graph(std::string_view text);

/// Emits the edge-list format with edges sorted lexicographically.
std::string serialize_graph(const Graph& g);

/// 64-bit FNV-1a of the canonical serialization, as 16 lowercase hex digits.
std::string graph_hash(const Graph& g);

struct DegeneracyOrdering {
    std::vector<VertexId> order;     // peeling sequence v_1..v_n
    std::vector<std::int32_t> rank;  // rank[v] = position of v in order
    std::int32_t degeneracy = 0;
};

/// Repeated minimum-degree removal, ties broken by smallest vertex id.
DegeneracyOrdering degeneracy_ordering(const Graph& g);

/// Number of neighbors of each vertex that come later in `order`.
std::vector<std::int32_t> later_neighbor_counts(const Graph& g, std::span<const VertexId> order);

/// t-blowup of a graph. Part i holds the copies of base vertex
/// `ordering.order[i]`, with blowup ids i*t .. i*t + t - 1.
struct BlowupGraph {
    Graph base;
    std::int32_t t = 0;
    DegeneracyOrdering ordering;
    Graph graph;

    std::int32_t part_count() const noexcept { return base.vertex_count(); }
    VertexId part_member(std::int32_t part, std::int32_t j) const noexcept { return part * t + j; }
    std::int32_t part_of(VertexId blowup_vertex) const noexcept { return blowup_vertex / t; }
    VertexId base_vertex_of_part(std::int32_t part) const noexcept { return ordering.order[part]; }
};

BlowupGraph blowup(const Graph& g, std::int32_t t);

enum class FamilyKind { RandomRegular, RandomDegenerate, Grid2d, CompleteBipartite };

struct FamilySpec {
    FamilyKind kind = FamilyKind::RandomRegular;
    std::int32_t degree = 3;      // random-regular
    std::int32_t degeneracy = 2;  // random-D-degenerate
    std::int32_t width = 0;       // grid-2d; 0 means square (n must be a perfect square)
    std::int32_t part_a = 0;      // complete-bipartite
    std::int32_t part_b = 0;
};

std::string_view family_name(FamilyKind kind);
FamilyKind parse_family_kind(std::string_view name);

/// Throws InfeasibleError when `generate_family(spec, n, ...)` cannot succeed.
void check_family_feasible(const FamilySpec& spec, std::int32_t n);

/// Seeded generator for the benchmark graph families. For complete-bipartite
/// `n` must be 0 or part_a + part_b.
Graph generate_family(const FamilySpec& spec, std::int32_t n, std::uint64_t seed);

}  // namespace gridweave
