#ifndef SAW_FISHER_HPP
#define SAW_FISHER_HPP

#include <array>
#include <vector>

#include "saw/lattice.hpp"

namespace saw {

/// Result of a Fisher transformation at the spec level. Image edges keep the
/// index of their preimage, so edge_map[i].second == i always holds; it is
/// stored anyway because serialized results are consumed independently.
struct FisherResult {
    LatticeSpec transformed;
    /// original cell edge index -> image cell edge index (origin = original)
    std::vector<std::pair<int, int>> edge_map;
    /// new cell edges with origin = triangle
    std::vector<int> triangle_edges;
    /// original local vertex -> its triangle vertices (untransformed white
    /// vertices of the bipartite variant map to a single repeated index)
    std::vector<std::pair<int, std::array<int, 3>>> vertex_map;
};

/// Fisher transformation at every vertex of a cubic simple periodic spec.
FisherResult fisher_full(const LatticeSpec& spec);

/// Fisher transformation at the black vertices of a bipartite-coloured spec
/// whose black class is cubic. White vertices stay white; triangle vertices
/// are coloured black.
FisherResult fisher_black(const LatticeSpec& spec);

/// Chain G_1..G_k with G_{i+1} = fisher_full(G_i).
std::vector<FisherResult> iterate_fisher(const LatticeSpec& spec, int k,
                                         std::size_t cell_cap = 200000);

/// Contract every Fisher triangle of a transform result back to a vertex.
/// Used to check that the transformation is reversible.
LatticeSpec contract_fisher(const FisherResult& fr);

/// Finite seed-and-iterate graph for the Sierpinski-gasket figure: a single
/// edge whose endpoints are completed to degree 3 with stub half-edges, then
/// k rounds of triangle substitution at every full vertex. Stubs stay
/// degree-1 and are never expanded.
struct GasketGraph {
    struct Stub {
        int vertex;
        std::array<double, 2> tip;
    };
    int iterations = 0;
    std::vector<std::array<double, 2>> pos;    // one per vertex
    std::vector<std::pair<int, int>> edges;
    std::vector<Stub> stubs;
    int vertex_count() const { return static_cast<int>(pos.size()); }
};

GasketGraph gasket_iterate(int k, std::size_t vertex_cap = 2'000'000);

} // namespace saw

#endif // SAW_FISHER_HPP
