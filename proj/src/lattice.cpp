#include "saw/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <sstream>

namespace saw {

const char* colour_name(Colour c) {
    switch (c) {
        case Colour::white: return "white";
        case Colour::black: return "black";
        case Colour::none: return "none";
    }
    return "none";
}

Colour colour_from_name(const std::string& s) {
    if (s == "white") return Colour::white;
    if (s == "black") return Colour::black;
    if (s == "none") return Colour::none;
    fail(ErrorKind::ParseError, "unknown colour '" + s + "'");
}

namespace {

std::vector<int> zero_offset(int dim) { return std::vector<int>(dim, 0); }

std::vector<int> negate(const std::vector<int>& v) {
    std::vector<int> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

std::vector<int> add(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

std::vector<int> sub(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

bool is_zero(const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

/// Canonical unordered form of a cell edge: anchor at the smaller endpoint.
std::tuple<int, int, std::vector<int>> canonical_edge(const CellEdge& e) {
    std::tuple<int, int, std::vector<int>> fwd{e.u, e.v, e.offset};
    std::tuple<int, int, std::vector<int>> rev{e.v, e.u, negate(e.offset)};
    return std::min(fwd, rev);
}

// --- 3-regular tree oracle ------------------------------------------------
//
// Vertices are digit words: the root is the empty word with children 0,1,2;
// every other word w has parent (w minus last digit) and children w+0, w+1.

std::vector<VertexId> tree_neighbours(const VertexId& v) {
    std::vector<VertexId> out;
    const auto& w = v.cell;
    if (!w.empty()) {
        std::vector<int> parent(w.begin(), w.end() - 1);
        out.push_back(VertexId{parent, 0});
    }
    int child_max = w.empty() ? 2 : 1;
    for (int d = 0; d <= child_max; ++d) {
        std::vector<int> c = w;
        c.push_back(d);
        out.push_back(VertexId{c, 0});
    }
    return out;
}

} // namespace

int LatticeSpec::degree_of_local(int local) const {
    if (aperiodic) return 3;
    int d = 0;
    for (const auto& e : edges) {
        if (e.u == local) ++d;
        if (e.v == local) ++d;
    }
    return d;
}

Colour LatticeSpec::colour_of_local(int local) const {
    return vertices[local].colour;
}

bool LatticeSpec::is_coloured() const {
    return std::all_of(vertices.begin(), vertices.end(),
                       [](const CellVertex& v) { return v.colour != Colour::none; });
}

bool LatticeSpec::same_structure(const LatticeSpec& other) const {
    return name == other.name && dimension == other.dimension &&
           multigraph == other.multigraph && aperiodic == other.aperiodic &&
           origin_tagged == other.origin_tagged && vertices == other.vertices &&
           edges == other.edges && domain == other.domain;
}

void LatticeSpec::validate() const {
    if (aperiodic) {
        if (name != "tree3")
            fail(ErrorKind::InvalidSpec, "rule aperiodic-oracle: only tree3 has one");
        if (vertices.size() != 1 || domain != std::vector<int>{0})
            fail(ErrorKind::InvalidSpec, "rule aperiodic-shape: tree3 uses one cell vertex and domain {0}");
        return;
    }
    if (dimension < 0)
        fail(ErrorKind::InvalidSpec, "rule dimension: must be >= 0");
    const int n = static_cast<int>(vertices.size());
    if (n == 0)
        fail(ErrorKind::InvalidSpec, "rule cell-vertices: cell is empty");
    for (int i = 0; i < n; ++i) {
        if (vertices[i].local != i)
            fail(ErrorKind::InvalidSpec, "rule local-indexing: vertices must be listed as 0..n-1");
    }
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            fail(ErrorKind::InvalidSpec, "rule edge-endpoints: local index " +
                                             std::to_string(e.u < 0 || e.u >= n ? e.u : e.v) +
                                             " does not exist");
        if (static_cast<int>(e.offset.size()) != dimension)
            fail(ErrorKind::InvalidSpec, "rule offset-arity: offset length must equal dimension");
        if (e.u == e.v && is_zero(e.offset))
            fail(ErrorKind::InvalidSpec, "rule no-loops: edge with u = v and zero offset");
    }
    if (!multigraph) {
        std::set<std::tuple<int, int, std::vector<int>>> seen;
        for (const auto& e : edges) {
            if (!seen.insert(canonical_edge(e)).second)
                fail(ErrorKind::InvalidSpec, "rule simple-graph: duplicate edge without multigraph flag");
        }
    }
    if (domain.empty())
        fail(ErrorKind::InvalidSpec, "rule fundamental-domain: domain is empty");
    std::set<int> dom(domain.begin(), domain.end());
    if (static_cast<int>(dom.size()) != static_cast<int>(domain.size()))
        fail(ErrorKind::InvalidSpec, "rule fundamental-domain: duplicate entries");
    for (int d : domain) {
        if (d < 0 || d >= n)
            fail(ErrorKind::InvalidSpec, "rule fundamental-domain: index outside cell");
    }

    // Connectivity, checked on a radius-3 ball as a single-source sweep.
    auto self = std::make_shared<LatticeSpec>(*this);
    BallGraph ball = BallGraph::build(self, 3);
    std::vector<int> d = bfs_distance(ball, 0);
    for (int v = 0; v < ball.vertex_count(); ++v) {
        if (d[v] < 0)
            fail(ErrorKind::InvalidSpec, "rule connectivity: radius-3 ball is disconnected");
    }
    // Every local index must appear within the ball, else some sublattice is
    // unreachable from the domain.
    std::set<int> locals_seen;
    for (const auto& v : ball.vertices()) locals_seen.insert(v.local);
    if (static_cast<int>(locals_seen.size()) != n)
        fail(ErrorKind::InvalidSpec, "rule connectivity: some cell vertex is unreachable from the domain");
}

StructureReport validate_structure(const LatticeSpec& spec) {
    StructureReport r;
    if (spec.aperiodic) {
        r.is_cubic = true;
        r.is_simple = true;
        r.is_bipartite_coloured = false;
        r.black_cubic = false;
        return r;
    }
    r.is_cubic = true;
    for (const auto& v : spec.vertices) {
        if (spec.degree_of_local(v.local) != 3) r.is_cubic = false;
    }
    std::set<std::tuple<int, int, std::vector<int>>> seen;
    r.is_simple = true;
    for (const auto& e : spec.edges) {
        if (!seen.insert(canonical_edge(e)).second) r.is_simple = false;
    }
    r.is_bipartite_coloured = spec.is_coloured();
    for (const auto& e : spec.edges) {
        if (!r.is_bipartite_coloured) break;
        if (spec.colour_of_local(e.u) == spec.colour_of_local(e.v))
            r.is_bipartite_coloured = false;
    }
    r.black_cubic = r.is_bipartite_coloured;
    if (r.black_cubic) {
        for (const auto& v : spec.vertices) {
            if (v.colour == Colour::black && spec.degree_of_local(v.local) != 3)
                r.black_cubic = false;
        }
    }
    return r;
}

// --- built-ins --------------------------------------------------------------

namespace {

LatticeSpec make_hexagonal() {
    LatticeSpec s;
    s.name = "hexagonal";
    s.dimension = 2;
    s.vertices = {{0, Colour::black}, {1, Colour::white}};
    s.edges = {{0, 1, {0, 0}}, {0, 1, {1, 0}}, {0, 1, {0, 1}}};
    s.domain = {0, 1};
    const double rt3h = 0.8660254037844386;
    s.embedding = Embedding{{{-1.5, rt3h}, {-1.5, -rt3h}}, {{0.0, 0.0}, {1.0, 0.0}}};
    return s;
}

LatticeSpec make_ladder() {
    LatticeSpec s;
    s.name = "ladder";
    s.dimension = 1;
    s.vertices = {{0, Colour::none}, {1, Colour::none}};
    s.edges = {{0, 1, {0}}, {0, 0, {1}}, {1, 1, {1}}};
    s.domain = {0, 1};
    s.embedding = Embedding{{{1.0, 0.0}}, {{0.0, 0.0}, {0.0, 1.0}}};
    return s;
}

LatticeSpec make_loop3() {
    LatticeSpec s;
    s.name = "loop3";
    s.dimension = 1;
    s.multigraph = true;
    s.vertices = {{0, Colour::none}, {1, Colour::none}};
    s.edges = {{0, 1, {0}}, {0, 1, {0}}, {1, 0, {1}}};
    s.domain = {0, 1};
    s.embedding = Embedding{{{2.0, 0.0}}, {{0.0, 0.0}, {1.0, 0.0}}};
    return s;
}

LatticeSpec make_square_octagon() {
    LatticeSpec s;
    s.name = "square_octagon";
    s.dimension = 2;
    s.vertices = {{0, Colour::none}, {1, Colour::none}, {2, Colour::none}, {3, Colour::none}};
    // Diamond cell 0=N 1=E 2=S 3=W; square sides plus one link east, one north.
    s.edges = {{0, 1, {0, 0}}, {1, 2, {0, 0}}, {2, 3, {0, 0}}, {3, 0, {0, 0}},
               {1, 3, {1, 0}}, {0, 2, {0, 1}}};
    s.domain = {0};
    s.embedding = Embedding{{{2.0, 0.0}, {0.0, 2.0}},
                            {{0.0, 0.6}, {0.6, 0.0}, {0.0, -0.6}, {-0.6, 0.0}}};
    return s;
}

LatticeSpec make_tree3() {
    LatticeSpec s;
    s.name = "tree3";
    s.dimension = 0;
    s.aperiodic = true;
    s.vertices = {{0, Colour::none}};
    s.domain = {0};
    return s;
}

LatticeSpec make_line() {
    LatticeSpec s;
    s.name = "line";
    s.dimension = 1;
    s.vertices = {{0, Colour::none}};
    s.edges = {{0, 0, {1}}};
    s.domain = {0};
    s.embedding = Embedding{{{1.0, 0.0}}, {{0.0, 0.0}}};
    return s;
}

} // namespace

LatticeSpec builtin(Builtin which) {
    switch (which) {
        case Builtin::hexagonal: return make_hexagonal();
        case Builtin::ladder: return make_ladder();
        case Builtin::loop3: return make_loop3();
        case Builtin::square_octagon: return make_square_octagon();
        case Builtin::tree3: return make_tree3();
        case Builtin::line: return make_line();
    }
    fail(ErrorKind::UnknownLattice, "unhandled builtin id");
}

LatticeSpec builtin(const std::string& name) {
    if (name == "hexagonal") return builtin(Builtin::hexagonal);
    if (name == "ladder") return builtin(Builtin::ladder);
    if (name == "loop3") return builtin(Builtin::loop3);
    if (name == "square_octagon") return builtin(Builtin::square_octagon);
    if (name == "tree3") return builtin(Builtin::tree3);
    if (name == "line") return builtin(Builtin::line);
    fail(ErrorKind::UnknownLattice, "no builtin lattice named '" + name + "'");
}

std::vector<std::string> builtin_names() {
    return {"hexagonal", "ladder", "loop3", "square_octagon", "tree3", "line"};
}

// --- ball construction -------------------------------------------------------

std::string vertex_label(const VertexId& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.cell.size(); ++i) {
        if (i) os << ',';
        os << v.cell[i];
    }
    os << '/' << v.local;
    return os.str();
}

std::size_t BallGraph::default_vertex_cap() {
    if (const char* env = std::getenv("SAW_MAX_VERTICES")) {
        char* end = nullptr;
        unsigned long long cap = std::strtoull(env, &end, 10);
        if (end != env && cap > 0) return static_cast<std::size_t>(cap);
    }
    return 4'000'000;
}

namespace {

std::vector<VertexId> periodic_neighbours(const LatticeSpec& spec, const VertexId& v) {
    std::vector<VertexId> out;
    for (const auto& e : spec.edges) {
        if (e.u == v.local) out.push_back(VertexId{add(v.cell, e.offset), e.v});
        if (e.v == v.local) out.push_back(VertexId{sub(v.cell, e.offset), e.u});
    }
    return out;
}

std::vector<VertexId> neighbours_of(const LatticeSpec& spec, const VertexId& v) {
    return spec.aperiodic ? tree_neighbours(v) : periodic_neighbours(spec, v);
}

} // namespace

BallGraph BallGraph::build(std::shared_ptr<const LatticeSpec> spec, int radius,
                           std::size_t max_vertices) {
    if (radius < 0) fail(ErrorKind::OutOfDomain, "radius must be >= 0");
    BallGraph g;
    g.spec_ = std::move(spec);
    g.radius_ = radius;
    const LatticeSpec& s = *g.spec_;

    // Breadth-first closure of the seed set, level by level; each level is
    // appended in sorted order so the vertex numbering is deterministic.
    std::vector<VertexId> seeds;
    if (s.aperiodic) {
        seeds.push_back(VertexId{{}, 0});
    } else {
        for (int d : s.domain) seeds.push_back(VertexId{zero_offset(s.dimension), d});
        std::sort(seeds.begin(), seeds.end());
    }
    for (const auto& v : seeds) {
        g.index_.emplace(v, static_cast<int>(g.verts_.size()));
        g.verts_.push_back(v);
        g.dist_.push_back(0);
        g.seeds_.push_back(static_cast<int>(g.verts_.size()) - 1);
    }
    std::size_t level_begin = 0;
    for (int d = 0; d < radius; ++d) {
        std::size_t level_end = g.verts_.size();
        std::set<VertexId> next;
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (const auto& nb : neighbours_of(s, g.verts_[i])) {
                if (!g.index_.count(nb)) next.insert(nb);
            }
        }
        for (const auto& v : next) {
            if (g.verts_.size() >= max_vertices)
                fail(ErrorKind::ResourceLimit,
                     "ball exceeds vertex cap of " + std::to_string(max_vertices));
            g.index_.emplace(v, static_cast<int>(g.verts_.size()));
            g.verts_.push_back(v);
            g.dist_.push_back(d + 1);
        }
        level_begin = level_end;
        if (next.empty()) break;
    }

    const int nv = static_cast<int>(g.verts_.size());
    g.colours_.resize(nv);
    for (int i = 0; i < nv; ++i) g.colours_[i] = s.vertices[g.verts_[i].local].colour;

    // Enumerate edge instances with both endpoints inside the ball. An
    // instance is identified by (anchor cell, cell-edge index); ids are
    // assigned scanning vertices in index order.
    struct Slot { int vert; int edge; };
    std::vector<std::vector<Slot>> adj(nv);
    auto add_instance = [&](int ia, int ib, EdgeOrigin origin, int cell_edge,
                            std::vector<int> anchor) {
        int eid = static_cast<int>(g.edges_.size());
        g.edges_.push_back(EdgeInfo{ia, ib, origin, cell_edge, anchor});
        if (cell_edge >= 0 || g.spec_->aperiodic)
            g.edge_index_.emplace(std::make_pair(std::move(anchor), cell_edge), eid);
        adj[ia].push_back(Slot{ib, eid});
        if (ib != ia) adj[ib].push_back(Slot{ia, eid});
    };

    if (s.aperiodic) {
        // Tree edges are anchored at the child endpoint, cell_edge = -1.
        for (int i = 0; i < nv; ++i) {
            const VertexId& v = g.verts_[i];
            if (v.cell.empty()) continue;
            std::vector<int> parent(v.cell.begin(), v.cell.end() - 1);
            auto it = g.index_.find(VertexId{parent, 0});
            if (it != g.index_.end())
                add_instance(it->second, i, EdgeOrigin::original, -1, v.cell);
        }
    } else {
        for (int i = 0; i < nv; ++i) {
            const VertexId& v = g.verts_[i];
            for (int ei = 0; ei < static_cast<int>(s.edges.size()); ++ei) {
                const CellEdge& e = s.edges[ei];
                if (e.u != v.local) continue;
                auto it = g.index_.find(VertexId{add(v.cell, e.offset), e.v});
                if (it != g.index_.end())
                    add_instance(i, it->second, e.origin, ei, v.cell);
            }
        }
    }

    // Rebuild per-vertex adjacency in a canonical per-vertex order:
    // anchor instances by cell-edge index first, then target instances.
    // The scan above already yields this order for the anchor side; merge
    // the incoming side deterministically by (cell_edge, anchor cell).
    g.adj_off_.assign(nv + 1, 0);
    for (int i = 0; i < nv; ++i) {
        auto& slots = adj[i];
        std::stable_sort(slots.begin(), slots.end(), [&](const Slot& x, const Slot& y) {
            const auto& ex = g.edges_[x.edge];
            const auto& ey = g.edges_[y.edge];
            bool ax = ex.a == i;  // anchored here
            bool ay = ey.a == i;
            if (ax != ay) return ax > ay;
            if (ex.cell_edge != ey.cell_edge) return ex.cell_edge < ey.cell_edge;
            return ex.anchor_cell < ey.anchor_cell;
        });
        g.adj_off_[i + 1] = g.adj_off_[i] + static_cast<int>(slots.size());
    }
    g.adj_vert_.reserve(g.adj_off_[nv]);
    g.adj_edge_.reserve(g.adj_off_[nv]);
    for (int i = 0; i < nv; ++i) {
        for (const Slot& sl : adj[i]) {
            g.adj_vert_.push_back(sl.vert);
            g.adj_edge_.push_back(sl.edge);
        }
    }
    return g;
}

int BallGraph::index_of(const VertexId& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? -1 : it->second;
}

int BallGraph::require_index(const VertexId& v) const {
    int i = index_of(v);
    if (i < 0) fail(ErrorKind::NotInGraph, "vertex " + vertex_label(v) + " is not in the ball");
    return i;
}

int BallGraph::edge_index(const std::vector<int>& anchor_cell, int cell_edge) const {
    auto it = edge_index_.find(std::make_pair(anchor_cell, cell_edge));
    return it == edge_index_.end() ? -1 : it->second;
}

int BallGraph::full_degree(int v) const {
    return spec_->degree_of_local(verts_[v].local);
}

std::string BallGraph::check_invariants() const {
    const int nv = vertex_count();
    for (int v = 0; v < nv; ++v) {
        if (dist_[v] > radius_) return "vertex beyond radius";
        if (!is_boundary(v) && degree(v) != full_degree(v))
            return "interior vertex " + vertex_label(verts_[v]) + " missing incident edges";
    }
    // Adjacency symmetry via edge endpoints.
    for (int v = 0; v < nv; ++v) {
        for (int s = adj_begin(v); s < adj_end(v); ++s) {
            const EdgeInfo& e = edges_[adj_edge(s)];
            if (e.a != v && e.b != v) return "adjacency references foreign edge";
            int other = (e.a == v) ? e.b : e.a;
            if (other != adj_vertex(s)) return "adjacency/edge endpoint mismatch";
        }
    }
    return "";
}

std::vector<int> bfs_distance_multi(const BallGraph& ball, std::span<const int> sources) {
    std::vector<int> d(ball.vertex_count(), -1);
    std::deque<int> q;
    for (int s : sources) {
        if (s < 0 || s >= ball.vertex_count())
            fail(ErrorKind::NotInGraph, "BFS source index out of range");
        if (d[s] == -1) {
            d[s] = 0;
            q.push_back(s);
        }
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int s = ball.adj_begin(v); s < ball.adj_end(v); ++s) {
            int u = ball.adj_vertex(s);
            if (d[u] == -1) {
                d[u] = d[v] + 1;
                q.push_back(u);
            }
        }
    }
    return d;
}

std::vector<int> bfs_distance(const BallGraph& ball, int source) {
    int src[1] = {source};
    return bfs_distance_multi(ball, src);
}

std::vector<int> bfs_distance_from_midedge(const BallGraph& ball, int edge_id) {
    if (edge_id < 0 || edge_id >= ball.edge_count())
        fail(ErrorKind::NotInGraph, "mid-edge id out of range");
    const auto& e = ball.edge(edge_id);
    int src[2] = {e.a, e.b};
    std::vector<int> d = bfs_distance_multi(ball, std::span<const int>(src, 2));
    for (auto& x : d)
        if (x >= 0) x = 2 * x + 1;
    return d;
}

int midedge_distance(const BallGraph& ball, int edge_a, int edge_b) {
    if (edge_a < 0 || edge_a >= ball.edge_count() || edge_b < 0 || edge_b >= ball.edge_count())
        fail(ErrorKind::NotInGraph, "mid-edge id out of range");
    if (edge_a == edge_b) return 0;
    const auto& ea = ball.edge(edge_a);
    const auto& eb = ball.edge(edge_b);
    int src[2] = {ea.a, ea.b};
    std::vector<int> d = bfs_distance_multi(ball, std::span<const int>(src, 2));
    int best = -1;
    for (int v : {eb.a, eb.b}) {
        if (d[v] >= 0 && (best < 0 || d[v] < best)) best = d[v];
    }
    if (best < 0) fail(ErrorKind::NotInGraph, "mid-edges lie in disconnected parts of the ball");
    return 2 + 2 * best;
}

} // namespace saw
