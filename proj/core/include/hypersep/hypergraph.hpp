#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypersep {

/// A hyperedge: strictly increasing vertex ids, never empty.
using Edge = std::vector<int>;

/// Hypergraph on vertices 1..n with an ordered edge sequence (indices 1..m).
/// Edges may repeat as sets (multiset semantics); each edge is duplicate-free.
/// Immutable by convention: operations return new values.
struct Hypergraph {
    int n = 0;
    std::vector<Edge> edges;

    int m() const { return static_cast<int>(edges.size()); }

    /// 1-based edge access.
    const Edge& edge(int index) const { return edges[static_cast<size_t>(index - 1)]; }

    bool operator==(const Hypergraph&) const = default;
};

/// Builds a hypergraph after normalizing (sorting) and validating every edge.
/// Throws std::invalid_argument on out-of-range vertices, duplicate vertices
/// within an edge, or empty edges.
Hypergraph make_hypergraph(int n, std::vector<Edge> edges);

struct Component {
    std::vector<int> vertices;  // sorted
    std::vector<int> edges;     // sorted 1-based edge indices
};

/// Connected components per the edge-chain definition plus the vertices that
/// lie on no edge. Components are ordered by minimum vertex id.
struct ComponentDecomposition {
    std::vector<Component> components;
    std::vector<int> isolated_vertices;
};

ComponentDecomposition connected_components(const Hypergraph& h);

/// Largest number of edges any vertex appears in; 0 for an edgeless graph.
int max_degree(const Hypergraph& h);

/// Degree of every vertex, index 1..n (slot 0 unused).
std::vector<int> vertex_degrees(const Hypergraph& h);

struct EdgePartition {
    std::vector<int> inside;    // edges entirely within S
    std::vector<int> outside;   // edges entirely outside S
    std::vector<int> crossing;  // edges meeting S and its complement
};

/// Splits edge indices by their relation to the vertex set S.
EdgePartition edge_partition(const Hypergraph& h, const std::vector<int>& s);
EdgePartition edge_partition(const Hypergraph& h, const std::vector<char>& in_s);

struct RemovedEdges {
    Hypergraph graph;
    std::vector<int> old_index;  // new 1-based edge index -> original index
};

/// Removes the given edge indices, preserving the relative order of the rest.
RemovedEdges remove_edges(const Hypergraph& h, const std::vector<int>& remove);

/// Result of padding a hypergraph to r-uniformity.
///
/// Short edges are grouped into blocks of `k` (in edge-index order); each
/// block shares a pool of r fresh vertices and every short edge takes the
/// pool's first r-|e| entries, so no degree exceeds k. Isolated vertices are
/// then dropped and ids compacted. Edge indices are preserved throughout, so
/// separators on the output translate verbatim to the input.
struct UniformizeResult {
    Hypergraph graph;
    std::vector<std::vector<int>> added;  // per edge (0-based slot), fresh vertices in output ids
    std::vector<int> original_vertex;     // output vertex id -> input id, 0 for fresh (1-based)
    int fresh_allocated = 0;              // pool vertices materialized before compaction
};

/// Pads every edge to size exactly r. Requires |e| <= r for all edges,
/// max_degree(h) <= k, and k >= 1; throws std::invalid_argument otherwise.
UniformizeResult uniformize(const Hypergraph& h, int r, int k);

/// Text format (.hg): optional `c` comments, header `p hg <n> <m>`, then one
/// line per edge with strictly increasing vertex ids.
Hypergraph parse_hg(std::istream& in);
Hypergraph parse_hg_file(const std::string& path);
void write_hg(std::ostream& out, const Hypergraph& h);

}  // namespace hypersep
