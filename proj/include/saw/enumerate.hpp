#ifndef SAW_ENUMERATE_HPP
#define SAW_ENUMERATE_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "saw/lattice.hpp"
#include "saw/numeric.hpp"

namespace saw {

enum class StartMode { vertex, midedge };
enum class EndFilter { any, midedge_of_original };

/// Exact SAW counts indexed by walk length. Walks are directed; mid-edge walk
/// length is the number of vertices visited, and the length-0 walk is the
/// start point alone.
struct CountSeries {
    std::vector<BigInt> counts;
    StartMode start_mode = StartMode::vertex;
    EndFilter end_filter = EndFilter::any;
    std::string start_desc;
    std::string graph_id;
    /// Degrees above exact_to are incomplete (only substitute_series output
    /// ever marks a smaller value than n_max).
    int exact_to = -1;
    /// Single-vertex series on a vertex-transitive graph; root estimates are
    /// then rigorous upper bounds on the connective constant.
    bool vertex_transitive_single = false;

    int n_max() const { return static_cast<int>(counts.size()) - 1; }
};

/// Multi-index counts for the bivariate and trivariate partition functions.
/// black_white keys are (steps at black, steps at white, 0); pqr keys are
/// (both-half-edges-new, mixed, both-original).
struct WeightedCounts {
    enum class Mode { black_white, pqr } mode = Mode::black_white;
    std::map<std::array<int, 3>, BigInt> counts;
    int n_max = 0;
    std::string graph_id;
};

struct DisplacementSeries {
    std::vector<BigInt> counts;
    std::vector<BigInt> sum_sq;  // sum of ||pi||^2 in half-edge units
    std::string graph_id;
    int n_max() const { return static_cast<int>(counts.size()) - 1; }
    Real mean_sq(int n) const;
};

struct EnumOptions {
    int workers = 1;
    int split_depth = 8;
};

/// Seed vertex indices of a ball (the fundamental domain at the origin cell).
std::vector<int> domain_vertices(const BallGraph& ball);

/// Dense ids of edges incident to the given vertices, optionally filtered by
/// origin tag; sorted and deduplicated. With origin filtering this picks out
/// the images of pre-transform edge sets on Fisher-image graphs.
std::vector<int> incident_edges(const BallGraph& ball, std::span<const int> verts,
                                std::optional<EdgeOrigin> origin = std::nullopt);

CountSeries count_from_vertices(const BallGraph& ball, std::span<const int> starts, int n_max,
                                const EnumOptions& opt = {});

CountSeries count_from_midedges(const BallGraph& ball, std::span<const int> start_edges,
                                int n_max, EndFilter end_filter = EndFilter::any,
                                const EnumOptions& opt = {});

/// Directed counts plus the sub-counts of walks whose reversal also qualifies
/// (start set membership of the end mid-edge). Used to form reversal-paired
/// counts for the sandwich inequalities.
struct DirectedSplitSeries {
    CountSeries directed;
    std::vector<BigInt> reverse_qualifying;
    /// Reversal-paired coefficients: length-0 walks are their own reversals.
    std::vector<BigInt> undirected() const;
};

DirectedSplitSeries count_from_midedges_with_reversal_split(const BallGraph& ball,
                                                            std::span<const int> start_edges,
                                                            int n_max, EndFilter end_filter,
                                                            const EnumOptions& opt = {});

/// Endpoint-resolved counts sigma_n(v, w) for all w, n <= n_max.
std::vector<std::vector<BigInt>> endpoint_resolved_counts(const BallGraph& ball, int v,
                                                          int n_max);

CountSeries two_point_series(const BallGraph& ball, int v, int w, int n_max);

DisplacementSeries displacement_series(const BallGraph& ball, std::span<const int> start_edges,
                                       int n_max);

WeightedCounts weighted_black_white(const BallGraph& ball, std::span<const int> start_edges,
                                    int n_max);

WeightedCounts weighted_pqr(const BallGraph& ball, std::span<const int> start_edges, int n_max);

/// Lengths of pqr-weighted walks: total steps i+j+k per key.
CountSeries series_from_pqr(const WeightedCounts& w, EndFilter end_filter,
                            const std::string& start_desc);

/// Per-core-length totals of a pqr count on a fully Fisher-transformed graph:
/// a walk passing t triangles has exactly 2t mixed steps. Exact for
/// t <= n_max/3. Index t of the result holds the number of walks whose
/// triangle-contraction image has length t.
std::vector<BigInt> core_length_counts(const WeightedCounts& w);

enum class SubstitutionRule { x_to_x2_1px };

/// Coefficientwise substitution x -> x^2(1+x): out[m] = sum_n c[n] C(n, m-2n).
/// The result is emitted to degree 3*n_max and marked exact to 2*n_max + 1.
CountSeries substitute_series(const CountSeries& series0, SubstitutionRule rule);

} // namespace saw

#endif // SAW_ENUMERATE_HPP
