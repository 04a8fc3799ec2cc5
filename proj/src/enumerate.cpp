#include "saw/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <set>
#include <sstream>
#include <thread>

namespace saw {

namespace {

constexpr int kMaxLength = 60;

struct Csr {
    const int* off;
    const int* vert;
    const int* eid;
    int nv;
    int ne;
};

Csr csr_of(const BallGraph& g) {
    return Csr{g.adj_off_data(), g.adj_vert_data(), g.adj_edge_data(), g.vertex_count(),
               g.edge_count()};
}

std::string graph_id_of(const BallGraph& ball) {
    return ball.spec().name + "#r" + std::to_string(ball.radius());
}

std::string describe_set(const char* kind, std::span<const int> ids) {
    std::ostringstream os;
    os << kind << '[';
    if (ids.size() <= 12) {
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (i) os << ',';
            os << ids[i];
        }
    } else {
        os << ids.size() << " entries";
    }
    os << ']';
    return os.str();
}

void check_n_max(int n_max) {
    if (n_max < 0) fail(ErrorKind::OutOfDomain, "n_max must be >= 0");
    if (n_max > kMaxLength)
        fail(ErrorKind::ResourceLimit, "n_max beyond engine depth cap of 60");
}

/// Exactness guard: every vertex a walk can touch, and the neighbours probed
/// for end moves, must be present with full adjacency. `extra` is 1 for the
/// displacement variant, which also measures in-ball shortest paths.
void require_radius(const BallGraph& ball, int start_seed_dist, int n_max, int extra = 0) {
    int needed = start_seed_dist + n_max + 1 + extra;
    if (ball.radius() < needed)
        fail(ErrorKind::InsufficientRadius,
             "ball radius " + std::to_string(ball.radius()) +
                 " is too small for exact counts; minimal adequate radius is " +
                 std::to_string(needed));
}

int midedge_seed_dist(const BallGraph& ball, int e) {
    const auto& info = ball.edge(e);
    return std::min(ball.seed_distance(info.a), ball.seed_distance(info.b));
}

// ---------------------------------------------------------------------------
// Vertex-mode enumeration
// ---------------------------------------------------------------------------

struct VertexTask {
    std::vector<int> path;  // path[0] is the start vertex
};

/// Counts every extension of the current path rooted at v0 (inclusive), with
/// v0 at depth d0. Expects the path so far to be marked in vis.
void extend_vertex(const Csr& g, std::uint8_t* vis, int v0, int d0, int n_max,
                   std::uint64_t* counts) {
    ++counts[d0];
    if (d0 == n_max) return;
    int vstack[kMaxLength + 2];
    int sstack[kMaxLength + 2];
    int top = 0;
    int depth = d0;
    vstack[0] = v0;
    sstack[0] = g.off[v0];
    vis[v0] = 1;
    while (top >= 0) {
        const int v = vstack[top];
        int slot = sstack[top];
        if (slot == g.off[v + 1]) {
            vis[v] = 0;
            --top;
            --depth;
            continue;
        }
        sstack[top] = slot + 1;
        const int u = g.vert[slot];
        if (vis[u]) continue;
        ++counts[depth + 1];
        if (depth + 1 == n_max) continue;
        vis[u] = 1;
        ++top;
        ++depth;
        vstack[top] = u;
        sstack[top] = g.off[u];
    }
}

void gen_vertex(const Csr& g, std::uint8_t* vis, std::vector<int>& path, int depth, int limit,
                int n_max, std::uint64_t* counts, std::vector<VertexTask>& tasks) {
    ++counts[depth];
    if (depth == n_max) return;
    if (depth == limit) {
        tasks.push_back(VertexTask{path});
        return;
    }
    const int v = path.back();
    for (int s = g.off[v]; s < g.off[v + 1]; ++s) {
        const int u = g.vert[s];
        if (vis[u]) continue;
        vis[u] = 1;
        path.push_back(u);
        gen_vertex(g, vis, path, depth + 1, limit, n_max, counts, tasks);
        path.pop_back();
        vis[u] = 0;
    }
}

// ---------------------------------------------------------------------------
// Mid-edge-mode enumeration
// ---------------------------------------------------------------------------

struct MidedgeTask {
    int start_edge;
    int start_pass;              // start mid-edge passes the end filter
    std::vector<int> path_verts; // visited vertices in order
    std::vector<int> path_edges; // traversed edges, path_edges[i] enters path_verts[i]
};

struct MidedgeBufs {
    std::uint64_t* counts;
    std::uint64_t* rev_counts;   // may be null
    const std::uint8_t* end_ok;
    const std::uint8_t* in_start_set;  // only read when rev_counts != null
};

/// End moves at v with the walk's traversed mid-edges marked: one walk per
/// incident unvisited mid-edge passing the end filter.
inline void count_ends(const Csr& g, const std::uint8_t* evis, int v, int depth,
                       const MidedgeBufs& b, bool rev_here) {
    std::uint64_t ends = 0, revs = 0;
    for (int s = g.off[v]; s < g.off[v + 1]; ++s) {
        const int e = g.eid[s];
        if (!evis[e] && b.end_ok[e]) {
            ++ends;
            if (rev_here && b.in_start_set[e]) ++revs;
        }
    }
    b.counts[depth] += ends;
    if (rev_here) b.rev_counts[depth] += revs;
}

/// Iterative extension from v0 at depth d0. v0 and its entry edge are already
/// marked by the caller; everything deeper is marked and unmarked here.
void extend_midedge(const Csr& g, std::uint8_t* vvis, std::uint8_t* evis, int v0, int d0,
                    int n_max, const MidedgeBufs& b, bool rev) {
    count_ends(g, evis, v0, d0, b, rev);
    if (d0 == n_max) return;
    int vstack[kMaxLength + 2];
    int sstack[kMaxLength + 2];
    int estack[kMaxLength + 2];
    int top = 0;
    int depth = d0;
    vstack[0] = v0;
    sstack[0] = g.off[v0];
    estack[0] = -1;
    while (top >= 0) {
        const int v = vstack[top];
        int slot = sstack[top];
        if (slot == g.off[v + 1]) {
            if (estack[top] >= 0) {
                vvis[v] = 0;
                evis[estack[top]] = 0;
            }
            --top;
            --depth;
            continue;
        }
        sstack[top] = slot + 1;
        const int u = g.vert[slot];
        const int e = g.eid[slot];
        if (evis[e] || vvis[u]) continue;
        evis[e] = 1;
        vvis[u] = 1;
        count_ends(g, evis, u, depth + 1, b, rev);
        if (depth + 1 == n_max) {
            evis[e] = 0;
            vvis[u] = 0;
            continue;
        }
        ++top;
        ++depth;
        vstack[top] = u;
        sstack[top] = g.off[u];
        estack[top] = e;
    }
}

void gen_midedge(const Csr& g, std::uint8_t* vvis, std::uint8_t* evis, std::vector<int>& pverts,
                 std::vector<int>& pedges, int start_edge, int start_pass, int depth, int limit,
                 int n_max, const MidedgeBufs& b, bool rev, std::vector<MidedgeTask>& tasks) {
    const int v = pverts.back();
    count_ends(g, evis, v, depth, b, rev);
    if (depth == n_max) return;
    if (depth == limit) {
        tasks.push_back(MidedgeTask{start_edge, start_pass, pverts, pedges});
        return;
    }
    for (int s = g.off[v]; s < g.off[v + 1]; ++s) {
        const int u = g.vert[s];
        const int e = g.eid[s];
        if (evis[e] || vvis[u]) continue;
        evis[e] = 1;
        vvis[u] = 1;
        pverts.push_back(u);
        pedges.push_back(e);
        gen_midedge(g, vvis, evis, pverts, pedges, start_edge, start_pass, depth + 1, limit,
                    n_max, b, rev, tasks);
        pedges.pop_back();
        pverts.pop_back();
        evis[e] = 0;
        vvis[u] = 0;
    }
}

template <typename Task, typename WorkerFn>
void run_tasks(const std::vector<Task>& tasks, int workers, WorkerFn make_worker) {
    if (tasks.empty()) return;
    workers = std::max(1, workers);
    std::atomic<std::size_t> next{0};
    auto body = [&](int worker_index) {
        auto process = make_worker(worker_index);
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            process(tasks[i]);
        }
    };
    if (workers == 1) {
        body(0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
}

std::vector<BigInt> merge_buffers(const std::uint64_t* base,
                                  const std::vector<std::vector<std::uint64_t>>& per_worker,
                                  int len, int stride_offset = 0) {
    std::vector<BigInt> out(len, BigInt(0));
    for (int i = 0; i < len; ++i) out[i] = base[i];
    for (const auto& buf : per_worker) {
        if (buf.empty()) continue;
        for (int i = 0; i < len; ++i) out[i] += buf[stride_offset + i];
    }
    return out;
}

} // namespace

std::vector<int> domain_vertices(const BallGraph& ball) {
    return ball.seeds();
}

std::vector<int> incident_edges(const BallGraph& ball, std::span<const int> verts,
                                std::optional<EdgeOrigin> origin) {
    std::set<int> out;
    for (int v : verts) {
        if (v < 0 || v >= ball.vertex_count())
            fail(ErrorKind::NotInGraph, "vertex index out of range");
        for (int s = ball.adj_begin(v); s < ball.adj_end(v); ++s) {
            int e = ball.adj_edge(s);
            if (!origin || ball.edge(e).origin == *origin) out.insert(e);
        }
    }
    return std::vector<int>(out.begin(), out.end());
}

CountSeries count_from_vertices(const BallGraph& ball, std::span<const int> starts, int n_max,
                                const EnumOptions& opt) {
    check_n_max(n_max);
    if (starts.empty()) fail(ErrorKind::EmptySeries, "no start vertices given");
    for (int v : starts) {
        if (v < 0 || v >= ball.vertex_count())
            fail(ErrorKind::NotInGraph, "start vertex index out of range");
        require_radius(ball, ball.seed_distance(v), n_max);
    }
    const Csr g = csr_of(ball);
    const int limit = std::max(0, std::min(opt.split_depth, n_max));

    std::vector<std::uint64_t> base(n_max + 1, 0);
    std::vector<VertexTask> tasks;
    {
        std::vector<std::uint8_t> vis(g.nv, 0);
        std::vector<int> path;
        for (int v : starts) {
            vis[v] = 1;
            path.push_back(v);
            gen_vertex(g, vis.data(), path, 0, limit, n_max, base.data(), tasks);
            path.pop_back();
            vis[v] = 0;
        }
    }
    std::vector<std::vector<std::uint64_t>> worker_bufs(std::max(1, opt.workers));
    for (auto& buf : worker_bufs) buf.assign(n_max + 1, 0);
    run_tasks(tasks, opt.workers, [&](int w) {
        auto vis = std::make_shared<std::vector<std::uint8_t>>(g.nv, 0);
        return [&, w, vis](const VertexTask& task) {
            std::uint8_t* vb = vis->data();
            for (int v : task.path) vb[v] = 1;
            const int d = static_cast<int>(task.path.size()) - 1;
            const int last = task.path.back();
            for (int s = g.off[last]; s < g.off[last + 1]; ++s) {
                const int u = g.vert[s];
                if (vb[u]) continue;
                extend_vertex(g, vb, u, d + 1, n_max, worker_bufs[w].data());
            }
            for (int v : task.path) vb[v] = 0;
        };
    });

    CountSeries out;
    out.counts = merge_buffers(base.data(), worker_bufs, n_max + 1);
    out.start_mode = StartMode::vertex;
    out.end_filter = EndFilter::any;
    out.start_desc = describe_set("vertices", starts);
    out.graph_id = graph_id_of(ball);
    out.exact_to = n_max;
    const std::vector<std::string> vt = builtin_names();
    out.vertex_transitive_single =
        starts.size() == 1 && !ball.spec().origin_tagged &&
        std::find(vt.begin(), vt.end(), ball.spec().name) != vt.end();
    return out;
}

namespace {

DirectedSplitSeries count_midedges_impl(const BallGraph& ball, std::span<const int> start_edges,
                                        int n_max, EndFilter end_filter, const EnumOptions& opt,
                                        bool want_reversal_split) {
    check_n_max(n_max);
    if (start_edges.empty()) fail(ErrorKind::EmptySeries, "no start mid-edges given");
    if (end_filter == EndFilter::midedge_of_original && !ball.origin_tagged())
        fail(ErrorKind::NoOriginTags,
             "end filter midedge_of_original needs a Fisher-image graph with origin tags");
    const Csr g = csr_of(ball);
    for (int e : start_edges) {
        if (e < 0 || e >= g.ne) fail(ErrorKind::NotInGraph, "start mid-edge index out of range");
        require_radius(ball, midedge_seed_dist(ball, e), n_max);
    }

    std::vector<std::uint8_t> end_ok(g.ne, 1);
    if (end_filter == EndFilter::midedge_of_original) {
        for (int e = 0; e < g.ne; ++e)
            end_ok[e] = ball.edge(e).origin == EdgeOrigin::original ? 1 : 0;
    }
    std::vector<std::uint8_t> in_start(g.ne, 0);
    for (int e : start_edges) in_start[e] = 1;

    const int limit = std::max(1, std::min(opt.split_depth, n_max));
    std::vector<std::uint64_t> base(n_max + 1, 0), base_rev(n_max + 1, 0);
    std::vector<MidedgeTask> tasks;
    {
        std::vector<std::uint8_t> vvis(g.nv, 0), evis(g.ne, 0);
        std::vector<int> pverts, pedges;
        for (int e0 : start_edges) {
            const auto& info = ball.edge(e0);
            const int start_pass = end_ok[e0] ? 1 : 0;
            if (start_pass) {
                ++base[0];
                if (want_reversal_split) ++base_rev[0];
            }
            MidedgeBufs bufs{base.data(), want_reversal_split ? base_rev.data() : nullptr,
                             end_ok.data(), in_start.data()};
            const bool rev = want_reversal_split && start_pass;
            evis[e0] = 1;
            for (int v : {info.a, info.b}) {
                if (n_max == 0) break;
                vvis[v] = 1;
                pverts.push_back(v);
                gen_midedge(g, vvis.data(), evis.data(), pverts, pedges, e0, start_pass, 1,
                            limit, n_max, bufs, rev, tasks);
                pverts.pop_back();
                vvis[v] = 0;
            }
            evis[e0] = 0;
        }
    }

    const int stride = n_max + 1;
    std::vector<std::vector<std::uint64_t>> worker_bufs(std::max(1, opt.workers));
    for (auto& buf : worker_bufs) buf.assign(2 * stride, 0);
    run_tasks(tasks, opt.workers, [&](int w) {
        auto vvis = std::make_shared<std::vector<std::uint8_t>>(g.nv, 0);
        auto evis = std::make_shared<std::vector<std::uint8_t>>(g.ne, 0);
        return [&, w, vvis, evis](const MidedgeTask& task) {
            std::uint8_t* vb = vvis->data();
            std::uint8_t* eb = evis->data();
            eb[task.start_edge] = 1;
            for (int v : task.path_verts) vb[v] = 1;
            for (int e : task.path_edges) eb[e] = 1;
            MidedgeBufs bufs{worker_bufs[w].data(),
                             want_reversal_split ? worker_bufs[w].data() + stride : nullptr,
                             end_ok.data(), in_start.data()};
            const bool rev = want_reversal_split && task.start_pass;
            const int d = static_cast<int>(task.path_verts.size());
            const int last = task.path_verts.back();
            for (int s = g.off[last]; s < g.off[last + 1]; ++s) {
                const int u = g.vert[s];
                const int e = g.eid[s];
                if (eb[e] || vb[u]) continue;
                eb[e] = 1;
                vb[u] = 1;
                extend_midedge(g, vb, eb, u, d + 1, n_max, bufs, rev);
                eb[e] = 0;
                vb[u] = 0;
            }
            eb[task.start_edge] = 0;
            for (int v : task.path_verts) vb[v] = 0;
            for (int e : task.path_edges) eb[e] = 0;
        };
    });

    DirectedSplitSeries out;
    out.directed.counts = merge_buffers(base.data(), worker_bufs, stride);
    if (want_reversal_split)
        out.reverse_qualifying = merge_buffers(base_rev.data(), worker_bufs, stride, stride);
    out.directed.start_mode = StartMode::midedge;
    out.directed.end_filter = end_filter;
    out.directed.start_desc = describe_set("midedges", start_edges);
    out.directed.graph_id = graph_id_of(ball);
    out.directed.exact_to = n_max;
    return out;
}

} // namespace

CountSeries count_from_midedges(const BallGraph& ball, std::span<const int> start_edges,
                                int n_max, EndFilter end_filter, const EnumOptions& opt) {
    return count_midedges_impl(ball, start_edges, n_max, end_filter, opt, false).directed;
}

DirectedSplitSeries count_from_midedges_with_reversal_split(const BallGraph& ball,
                                                            std::span<const int> start_edges,
                                                            int n_max, EndFilter end_filter,
                                                            const EnumOptions& opt) {
    return count_midedges_impl(ball, start_edges, n_max, end_filter, opt, true);
}

std::vector<BigInt> DirectedSplitSeries::undirected() const {
    std::vector<BigInt> out(directed.counts.size());
    for (std::size_t m = 0; m < directed.counts.size(); ++m) {
        if (m == 0) {
            out[m] = directed.counts[m];
        } else {
            // Walks whose reversal also qualifies come in reversal pairs.
            out[m] = directed.counts[m] - reverse_qualifying[m] / 2;
        }
    }
    return out;
}

std::vector<std::vector<BigInt>> endpoint_resolved_counts(const BallGraph& ball, int v,
                                                          int n_max) {
    check_n_max(n_max);
    if (v < 0 || v >= ball.vertex_count())
        fail(ErrorKind::NotInGraph, "vertex index out of range");
    require_radius(ball, ball.seed_distance(v), n_max);
    const Csr g = csr_of(ball);
    std::vector<std::vector<std::uint64_t>> table(n_max + 1,
                                                  std::vector<std::uint64_t>(g.nv, 0));
    std::vector<std::uint8_t> vis(g.nv, 0);

    // Plain recursive endpoint-tagged DFS.
    auto dfs = [&](auto&& self, int u, int depth) -> void {
        ++table[depth][u];
        if (depth == n_max) return;
        for (int s = g.off[u]; s < g.off[u + 1]; ++s) {
            const int w = g.vert[s];
            if (vis[w]) continue;
            vis[w] = 1;
            self(self, w, depth + 1);
            vis[w] = 0;
        }
    };
    vis[v] = 1;
    dfs(dfs, v, 0);
    vis[v] = 0;

    std::vector<std::vector<BigInt>> out(n_max + 1, std::vector<BigInt>(g.nv));
    for (int n = 0; n <= n_max; ++n)
        for (int u = 0; u < g.nv; ++u) out[n][u] = table[n][u];
    return out;
}

CountSeries two_point_series(const BallGraph& ball, int v, int w, int n_max) {
    if (w < 0 || w >= ball.vertex_count())
        fail(ErrorKind::NotInGraph, "target vertex index out of range");
    auto table = endpoint_resolved_counts(ball, v, n_max);
    CountSeries out;
    out.counts.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) out.counts[n] = table[n][w];
    out.start_mode = StartMode::vertex;
    out.end_filter = EndFilter::any;
    out.start_desc = "two_point(" + vertex_label(ball.vertex(v)) + "->" +
                     vertex_label(ball.vertex(w)) + ")";
    out.graph_id = graph_id_of(ball);
    out.exact_to = n_max;
    return out;
}

DisplacementSeries displacement_series(const BallGraph& ball, std::span<const int> start_edges,
                                       int n_max) {
    check_n_max(n_max);
    if (start_edges.empty()) fail(ErrorKind::EmptySeries, "no start mid-edges given");
    const Csr g = csr_of(ball);
    for (int e : start_edges) {
        if (e < 0 || e >= g.ne) fail(ErrorKind::NotInGraph, "start mid-edge index out of range");
        require_radius(ball, midedge_seed_dist(ball, e), n_max, 1);
    }
    std::vector<std::uint64_t> counts(n_max + 1, 0), sums(n_max + 1, 0);
    std::vector<std::uint8_t> vvis(g.nv, 0), evis(g.ne, 0);

    for (int e0 : start_edges) {
        const auto& info = ball.edge(e0);
        int sources[2] = {info.a, info.b};
        std::vector<int> dmin = bfs_distance_multi(ball, std::span<const int>(sources, 2));
        auto end_dist = [&](int e) -> std::uint64_t {
            if (e == e0) return 0;
            const auto& f = ball.edge(e);
            int d = std::min(dmin[f.a], dmin[f.b]);
            return static_cast<std::uint64_t>(2 + 2 * d);
        };
        // 0-step walk: zero displacement.
        ++counts[0];
        auto dfs = [&](auto&& self, int v, int depth) -> void {
            for (int s = g.off[v]; s < g.off[v + 1]; ++s) {
                const int e = g.eid[s];
                if (evis[e]) continue;
                std::uint64_t d = end_dist(e);
                ++counts[depth];
                sums[depth] += d * d;
            }
            if (depth == n_max) return;
            for (int s = g.off[v]; s < g.off[v + 1]; ++s) {
                const int u = g.vert[s];
                const int e = g.eid[s];
                if (evis[e] || vvis[u]) continue;
                evis[e] = 1;
                vvis[u] = 1;
                self(self, u, depth + 1);
                evis[e] = 0;
                vvis[u] = 0;
            }
        };
        evis[e0] = 1;
        for (int v : {info.a, info.b}) {
            if (n_max == 0) break;
            vvis[v] = 1;
            dfs(dfs, v, 1);
            vvis[v] = 0;
        }
        evis[e0] = 0;
    }

    DisplacementSeries out;
    out.counts.assign(counts.begin(), counts.end());
    out.sum_sq.assign(sums.begin(), sums.end());
    out.graph_id = graph_id_of(ball);
    return out;
}

Real DisplacementSeries::mean_sq(int n) const {
    if (n < 0 || n > n_max() || counts[n] == 0) return Real(0);
    return Real(sum_sq[n]) / Real(counts[n]);
}

WeightedCounts weighted_black_white(const BallGraph& ball, std::span<const int> start_edges,
                                    int n_max) {
    check_n_max(n_max);
    StructureReport rep = validate_structure(ball.spec());
    if (!rep.is_bipartite_coloured)
        fail(ErrorKind::NotBipartite, "weighted_black_white needs a bipartite 2-coloured graph");
    if (start_edges.empty()) fail(ErrorKind::EmptySeries, "no start mid-edges given");
    const Csr g = csr_of(ball);
    for (int e : start_edges) {
        if (e < 0 || e >= g.ne) fail(ErrorKind::NotInGraph, "start mid-edge index out of range");
        require_radius(ball, midedge_seed_dist(ball, e), n_max);
    }
    const int stride = n_max + 1;
    std::vector<std::uint64_t> grid(stride * stride, 0);
    std::vector<std::uint8_t> vvis(g.nv, 0), evis(g.ne, 0);

    for (int e0 : start_edges) {
        const auto& info = ball.edge(e0);
        ++grid[0];  // (b, w) = (0, 0)
        auto dfs = [&](auto&& self, int v, int b, int w) -> void {
            std::uint64_t ends = 0;
            for (int s = g.off[v]; s < g.off[v + 1]; ++s) {
                if (!evis[g.eid[s]]) ++ends;
            }
            grid[b * stride + w] += ends;
            if (b + w == n_max) return;
            for (int s = g.off[v]; s < g.off[v + 1]; ++s) {
                const int u = g.vert[s];
                const int e = g.eid[s];
                if (evis[e] || vvis[u]) continue;
                evis[e] = 1;
                vvis[u] = 1;
                bool ub = ball.colour(u) == Colour::black;
                self(self, u, b + (ub ? 1 : 0), w + (ub ? 0 : 1));
                evis[e] = 0;
                vvis[u] = 0;
            }
        };
        evis[e0] = 1;
        for (int v : {info.a, info.b}) {
            if (n_max == 0) break;
            bool vb = ball.colour(v) == Colour::black;
            vvis[v] = 1;
            dfs(dfs, v, vb ? 1 : 0, vb ? 0 : 1);
            vvis[v] = 0;
        }
        evis[e0] = 0;
    }

    WeightedCounts out;
    out.mode = WeightedCounts::Mode::black_white;
    out.n_max = n_max;
    out.graph_id = graph_id_of(ball);
    for (int b = 0; b <= n_max; ++b) {
        for (int w = 0; w + b <= n_max; ++w) {
            if (grid[b * stride + w])
                out.counts[{b, w, 0}] = grid[b * stride + w];
        }
    }
    return out;
}

WeightedCounts weighted_pqr(const BallGraph& ball, std::span<const int> start_edges, int n_max) {
    check_n_max(n_max);
    if (!ball.origin_tagged())
        fail(ErrorKind::NoOriginTags, "weighted_pqr needs a Fisher-image graph with origin tags");
    if (start_edges.empty()) fail(ErrorKind::EmptySeries, "no start mid-edges given");
    const Csr g = csr_of(ball);
    for (int e : start_edges) {
        if (e < 0 || e >= g.ne) fail(ErrorKind::NotInGraph, "start mid-edge index out of range");
        if (ball.edge(e).origin != EdgeOrigin::original)
            fail(ErrorKind::OutOfDomain, "start mid-edges must lie on original-origin edges");
        require_radius(ball, midedge_seed_dist(ball, e), n_max);
    }
    std::vector<std::uint8_t> edge_orig(g.ne);
    for (int e = 0; e < g.ne; ++e)
        edge_orig[e] = ball.edge(e).origin == EdgeOrigin::original ? 1 : 0;

    const int stride = n_max + 1;
    std::vector<std::uint64_t> cube(static_cast<std::size_t>(stride) * stride * stride, 0);
    auto at = [&](int p, int q, int r) -> std::uint64_t& {
        return cube[(static_cast<std::size_t>(p) * stride + q) * stride + r];
    };
    std::vector<std::uint8_t> vvis(g.nv, 0), evis(g.ne, 0);

    for (int e0 : start_edges) {
        const auto& info = ball.edge(e0);
        ++at(0, 0, 0);
        // in_orig: origin of the half-edge entering the current vertex.
        auto dfs = [&](auto&& self, int v, bool in_orig, int p, int q, int r) -> void {
            for (int s = g.off[v]; s < g.off[v + 1]; ++s) {
                const int e = g.eid[s];
                // Walks must end on an original mid-edge.
                if (!evis[e] && edge_orig[e]) {
                    if (in_orig) {
                        ++at(p, q, r + 1);
                    } else {
                        ++at(p, q + 1, r);
                    }
                }
            }
            if (p + q + r + 1 >= n_max) return;
            for (int s = g.off[v]; s < g.off[v + 1]; ++s) {
                const int u = g.vert[s];
                const int e = g.eid[s];
                if (evis[e] || vvis[u]) continue;
                const bool out_orig = edge_orig[e] != 0;
                int np = p + (!in_orig && !out_orig ? 1 : 0);
                int nq = q + (in_orig != out_orig ? 1 : 0);
                int nr = r + (in_orig && out_orig ? 1 : 0);
                evis[e] = 1;
                vvis[u] = 1;
                self(self, u, out_orig, np, nq, nr);
                evis[e] = 0;
                vvis[u] = 0;
            }
        };
        evis[e0] = 1;
        for (int v : {info.a, info.b}) {
            if (n_max == 0) break;
            vvis[v] = 1;
            dfs(dfs, v, true, 0, 0, 0);
            vvis[v] = 0;
        }
        evis[e0] = 0;
    }

    WeightedCounts out;
    out.mode = WeightedCounts::Mode::pqr;
    out.n_max = n_max;
    out.graph_id = graph_id_of(ball);
    for (int p = 0; p <= n_max; ++p)
        for (int q = 0; q + p <= n_max; ++q)
            for (int r = 0; r + q + p <= n_max; ++r)
                if (at(p, q, r)) out.counts[{p, q, r}] = at(p, q, r);
    return out;
}

CountSeries series_from_pqr(const WeightedCounts& w, EndFilter end_filter,
                            const std::string& start_desc) {
    if (w.mode != WeightedCounts::Mode::pqr)
        fail(ErrorKind::WrongSeriesKind, "series_from_pqr needs pqr-mode weighted counts");
    CountSeries out;
    out.counts.assign(w.n_max + 1, BigInt(0));
    for (const auto& [key, c] : w.counts) {
        int len = key[0] + key[1] + key[2];
        out.counts[len] += c;
    }
    out.start_mode = StartMode::midedge;
    out.end_filter = end_filter;
    out.start_desc = start_desc;
    out.graph_id = w.graph_id;
    out.exact_to = w.n_max;
    return out;
}

std::vector<BigInt> core_length_counts(const WeightedCounts& w) {
    if (w.mode != WeightedCounts::Mode::pqr)
        fail(ErrorKind::WrongSeriesKind, "core_length_counts needs pqr-mode weighted counts");
    std::vector<BigInt> out(w.n_max / 2 + 1, BigInt(0));
    for (const auto& [key, c] : w.counts) {
        auto [p, q, r] = std::tuple{key[0], key[1], key[2]};
        if (r != 0 || q % 2 != 0)
            fail(ErrorKind::WrongSeriesKind,
                 "core_length_counts expects a fully transformed graph (r = 0, even q)");
        out[q / 2] += c;
    }
    return out;
}

CountSeries substitute_series(const CountSeries& series0, SubstitutionRule rule) {
    if (rule != SubstitutionRule::x_to_x2_1px)
        fail(ErrorKind::WrongSeriesKind, "unknown substitution rule");
    if (series0.start_mode != StartMode::midedge || series0.end_filter != EndFilter::any)
        fail(ErrorKind::WrongSeriesKind,
             "substitution expects an unfiltered mid-edge series (a Z_0 series)");
    if (series0.exact_to >= 0 && series0.exact_to < series0.n_max())
        fail(ErrorKind::WrongSeriesKind, "base series has inexact tail coefficients");
    const int n0 = series0.n_max();
    CountSeries out;
    out.counts.assign(3 * n0 + 1, BigInt(0));
    for (int n = 0; n <= n0; ++n) {
        if (series0.counts[n] == 0) continue;
        for (int l = 0; l <= n; ++l) {
            out.counts[2 * n + l] += series0.counts[n] * binomial(n, l);
        }
    }
    out.start_mode = StartMode::midedge;
    out.end_filter = EndFilter::midedge_of_original;
    out.start_desc = "substituted(" + series0.start_desc + ")";
    out.graph_id = series0.graph_id;
    out.exact_to = std::min(3 * n0, 2 * n0 + 1);
    return out;
}

} // namespace saw
