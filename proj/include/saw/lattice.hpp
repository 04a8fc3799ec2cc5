#ifndef SAW_LATTICE_HPP
#define SAW_LATTICE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "saw/errors.hpp"

namespace saw {

enum class Colour : std::uint8_t { none, white, black };

const char* colour_name(Colour c);
Colour colour_from_name(const std::string& s);

enum class EdgeOrigin : std::uint8_t { original, triangle };

struct CellVertex {
    int local = 0;
    Colour colour = Colour::none;
    bool operator==(const CellVertex&) const = default;
};

/// A cell edge joins local vertex `u` of the origin cell to local vertex `v`
/// of the cell displaced by `offset`. `u` is the anchor endpoint.
struct CellEdge {
    int u = 0;
    int v = 0;
    std::vector<int> offset;
    EdgeOrigin origin = EdgeOrigin::original;
    bool operator==(const CellEdge&) const = default;
};

/// Optional 2-d drawing data: one basis vector per translation direction and
/// one position per cell vertex.
struct Embedding {
    std::vector<std::array<double, 2>> basis;
    std::vector<std::array<double, 2>> site;
    bool operator==(const Embedding&) const = default;
};

/// Periodic description of an infinite graph: a finite cell of vertices,
/// offset-labelled edges, and a fundamental domain. The 3-regular tree does
/// not fit this scheme and is flagged `aperiodic`; its adjacency comes from
/// a recursive oracle instead of the edge list.
struct LatticeSpec {
    std::string name;
    int dimension = 0;
    bool multigraph = false;
    bool aperiodic = false;
    /// Set on Fisher images, where every edge carries a meaningful origin tag.
    bool origin_tagged = false;
    std::vector<CellVertex> vertices;
    std::vector<CellEdge> edges;
    std::vector<int> domain;
    std::optional<Embedding> embedding;

    /// Throws InvalidSpec naming the violated rule.
    void validate() const;

    int degree_of_local(int local) const;
    Colour colour_of_local(int local) const;
    bool is_coloured() const;

    /// Structural equality ignoring the embedding.
    bool same_structure(const LatticeSpec& other) const;
};

struct StructureReport {
    bool is_cubic = false;
    bool is_bipartite_coloured = false;
    bool black_cubic = false;
    bool is_simple = false;
};

enum class Builtin { hexagonal, ladder, loop3, square_octagon, tree3, line };

LatticeSpec builtin(Builtin which);
LatticeSpec builtin(const std::string& name);
std::vector<std::string> builtin_names();

StructureReport validate_structure(const LatticeSpec& spec);

/// Vertex of the instantiated infinite graph: a translation coordinate plus
/// a local index. For the aperiodic tree the cell holds the path word from
/// the root. Ordered lexicographically for deterministic iteration.
struct VertexId {
    std::vector<int> cell;
    int local = 0;
    auto operator<=>(const VertexId&) const = default;
};

std::string vertex_label(const VertexId& v);

/// Finite instantiation of a lattice out to a given graph radius from the
/// fundamental domain at the origin cell. Immutable after construction.
class BallGraph {
public:
    struct EdgeInfo {
        int a = 0;                   // dense endpoint indices, a < b not guaranteed
        int b = 0;
        EdgeOrigin origin = EdgeOrigin::original;
        int cell_edge = -1;          // index into spec edges; -1 for tree edges
        std::vector<int> anchor_cell;
    };

    static BallGraph build(std::shared_ptr<const LatticeSpec> spec, int radius,
                           std::size_t max_vertices = default_vertex_cap());

    const LatticeSpec& spec() const { return *spec_; }
    std::shared_ptr<const LatticeSpec> spec_ptr() const { return spec_; }
    int radius() const { return radius_; }

    int vertex_count() const { return static_cast<int>(verts_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const VertexId& vertex(int idx) const { return verts_[idx]; }
    const std::vector<VertexId>& vertices() const { return verts_; }
    int index_of(const VertexId& v) const;      // -1 when absent
    int require_index(const VertexId& v) const; // throws NotInGraph

    const EdgeInfo& edge(int eid) const { return edges_[eid]; }
    const std::vector<EdgeInfo>& edges() const { return edges_; }
    /// Dense edge id of the instance of spec edge `cell_edge` anchored at
    /// `anchor_cell`; -1 when the instance is not in the ball.
    int edge_index(const std::vector<int>& anchor_cell, int cell_edge) const;

    // CSR adjacency over dense vertex indices.
    int adj_begin(int v) const { return adj_off_[v]; }
    int adj_end(int v) const { return adj_off_[v + 1]; }
    int adj_vertex(int slot) const { return adj_vert_[slot]; }
    int adj_edge(int slot) const { return adj_edge_[slot]; }
    int degree(int v) const { return adj_off_[v + 1] - adj_off_[v]; }
    const int* adj_off_data() const { return adj_off_.data(); }
    const int* adj_vert_data() const { return adj_vert_.data(); }
    const int* adj_edge_data() const { return adj_edge_.data(); }

    int seed_distance(int v) const { return dist_[v]; }
    bool is_boundary(int v) const { return dist_[v] == radius_; }
    const std::vector<int>& seeds() const { return seeds_; }

    Colour colour(int v) const { return colours_[v]; }
    bool coloured() const { return spec_->is_coloured(); }
    bool origin_tagged() const { return spec_->origin_tagged; }

    /// Prescribed degree of a vertex in the infinite graph.
    int full_degree(int v) const;

    /// Checks the BallGraph invariants (interior degrees, symmetry, distance
    /// bounds); returns a failure description or empty string.
    std::string check_invariants() const;

    static std::size_t default_vertex_cap();

private:
    std::shared_ptr<const LatticeSpec> spec_;
    int radius_ = 0;
    std::vector<VertexId> verts_;
    std::map<VertexId, int> index_;
    std::vector<int> adj_off_, adj_vert_, adj_edge_;
    std::vector<int> dist_;
    std::vector<int> seeds_;
    std::vector<Colour> colours_;
    std::vector<EdgeInfo> edges_;
    std::map<std::pair<std::vector<int>, int>, int> edge_index_;
};

/// Exact graph distances from a source vertex to every ball vertex, in edges.
std::vector<int> bfs_distance(const BallGraph& ball, int source);

/// Multi-source variant: distance to the nearest of `sources`.
std::vector<int> bfs_distance_multi(const BallGraph& ball, std::span<const int> sources);

/// Distances from a mid-edge to every vertex in the subdivision graph,
/// reported in half-edge units.
std::vector<int> bfs_distance_from_midedge(const BallGraph& ball, int edge_id);

/// Subdivision-graph distance between two mid-edges in half-edge units.
int midedge_distance(const BallGraph& ball, int edge_a, int edge_b);

} // namespace saw

#endif // SAW_LATTICE_HPP
