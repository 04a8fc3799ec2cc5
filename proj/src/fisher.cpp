#include "saw/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace saw {

namespace {

struct HalfEdge {
    int cell_edge;
    bool anchor_side;
};

/// Incident half-edges of a local vertex, in deterministic order: by cell
/// edge index, anchor side before target side. A self-offset edge (u == v,
/// nonzero offset) contributes one half-edge of each kind.
std::vector<HalfEdge> half_edges_of(const LatticeSpec& spec, int local) {
    std::vector<HalfEdge> out;
    for (int i = 0; i < static_cast<int>(spec.edges.size()); ++i) {
        const CellEdge& e = spec.edges[i];
        if (e.u == local) out.push_back(HalfEdge{i, true});
        if (e.v == local) out.push_back(HalfEdge{i, false});
    }
    return out;
}

std::array<double, 2> cell_displacement(const Embedding& emb, const std::vector<int>& offset) {
    std::array<double, 2> d{0.0, 0.0};
    for (std::size_t i = 0; i < offset.size() && i < emb.basis.size(); ++i) {
        d[0] += offset[i] * emb.basis[i][0];
        d[1] += offset[i] * emb.basis[i][1];
    }
    return d;
}

/// Position of the far endpoint of a half-edge, relative to the origin cell.
std::array<double, 2> half_edge_far_end(const LatticeSpec& spec, const Embedding& emb,
                                        const HalfEdge& h) {
    const CellEdge& e = spec.edges[h.cell_edge];
    std::array<double, 2> d = cell_displacement(emb, e.offset);
    if (h.anchor_side) {
        return {emb.site[e.v][0] + d[0], emb.site[e.v][1] + d[1]};
    }
    return {emb.site[e.u][0] - d[0], emb.site[e.u][1] - d[1]};
}

int half_edge_slot(const std::vector<HalfEdge>& hs, int cell_edge, bool anchor_side) {
    for (int j = 0; j < static_cast<int>(hs.size()); ++j) {
        if (hs[j].cell_edge == cell_edge && hs[j].anchor_side == anchor_side) return j;
    }
    return -1;
}

void require_periodic_simple(const LatticeSpec& spec, const StructureReport& r) {
    if (spec.aperiodic)
        fail(ErrorKind::NotPeriodic, "the Fisher transformation needs a periodic spec");
    if (!r.is_simple)
        fail(ErrorKind::NotSimple, "the Fisher transformation needs a simple graph");
}

} // namespace

FisherResult fisher_full(const LatticeSpec& spec) {
    StructureReport r = validate_structure(spec);
    require_periodic_simple(spec, r);
    if (!r.is_cubic)
        fail(ErrorKind::NotCubic, "fisher_full transforms every vertex, so all degrees must be 3");

    const int nv = static_cast<int>(spec.vertices.size());
    std::vector<std::vector<HalfEdge>> hs(nv);
    for (int v = 0; v < nv; ++v) hs[v] = half_edges_of(spec, v);

    FisherResult fr;
    LatticeSpec& t = fr.transformed;
    t.name = "fisher(" + spec.name + ")";
    t.dimension = spec.dimension;
    t.origin_tagged = true;
    for (int v = 0; v < nv; ++v) {
        for (int j = 0; j < 3; ++j) t.vertices.push_back(CellVertex{3 * v + j, Colour::none});
        fr.vertex_map.push_back({v, {3 * v + 0, 3 * v + 1, 3 * v + 2}});
    }
    // Image edges first, preserving indices.
    for (int i = 0; i < static_cast<int>(spec.edges.size()); ++i) {
        const CellEdge& e = spec.edges[i];
        int ju = half_edge_slot(hs[e.u], i, true);
        int jv = half_edge_slot(hs[e.v], i, false);
        t.edges.push_back(CellEdge{3 * e.u + ju, 3 * e.v + jv, e.offset, EdgeOrigin::original});
        fr.edge_map.push_back({i, i});
    }
    for (int v = 0; v < nv; ++v) {
        const std::vector<int> zero(spec.dimension, 0);
        for (auto [x, y] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
            fr.triangle_edges.push_back(static_cast<int>(t.edges.size()));
            t.edges.push_back(CellEdge{3 * v + x, 3 * v + y, zero, EdgeOrigin::triangle});
        }
    }
    for (int d : spec.domain) {
        for (int j = 0; j < 3; ++j) t.domain.push_back(3 * d + j);
    }
    std::sort(t.domain.begin(), t.domain.end());

    if (spec.embedding) {
        Embedding emb;
        emb.basis = spec.embedding->basis;
        emb.site.resize(t.vertices.size());
        for (int v = 0; v < nv; ++v) {
            const auto& p = spec.embedding->site[v];
            for (int j = 0; j < 3; ++j) {
                auto q = half_edge_far_end(spec, *spec.embedding, hs[v][j]);
                emb.site[3 * v + j] = {p[0] + (q[0] - p[0]) / 3.0, p[1] + (q[1] - p[1]) / 3.0};
            }
        }
        t.embedding = std::move(emb);
    }
    t.validate();
    return fr;
}

FisherResult fisher_black(const LatticeSpec& spec) {
    StructureReport r = validate_structure(spec);
    require_periodic_simple(spec, r);
    if (!r.is_bipartite_coloured)
        fail(ErrorKind::NotBipartite,
             "fisher_black needs a bipartite 2-coloured spec (every edge black-white)");
    if (!r.black_cubic)
        fail(ErrorKind::BlackNotCubic, "fisher_black needs every black vertex to have degree 3");

    const int nv = static_cast<int>(spec.vertices.size());
    std::vector<std::vector<HalfEdge>> hs(nv);
    for (int v = 0; v < nv; ++v) hs[v] = half_edges_of(spec, v);

    FisherResult fr;
    LatticeSpec& t = fr.transformed;
    t.name = "fisher_black(" + spec.name + ")";
    t.dimension = spec.dimension;
    t.origin_tagged = true;

    // New local numbering: whites keep one slot, blacks expand to three.
    std::vector<std::array<int, 3>> slot(nv);
    int next = 0;
    for (int v = 0; v < nv; ++v) {
        if (spec.colour_of_local(v) == Colour::black) {
            slot[v] = {next, next + 1, next + 2};
            for (int j = 0; j < 3; ++j) t.vertices.push_back(CellVertex{next + j, Colour::black});
            next += 3;
        } else {
            slot[v] = {next, next, next};
            t.vertices.push_back(CellVertex{next, Colour::white});
            next += 1;
        }
        fr.vertex_map.push_back({v, slot[v]});
    }
    auto image_end = [&](int local, int cell_edge, bool anchor_side) {
        if (spec.colour_of_local(local) == Colour::white) return slot[local][0];
        return slot[local][half_edge_slot(hs[local], cell_edge, anchor_side)];
    };
    for (int i = 0; i < static_cast<int>(spec.edges.size()); ++i) {
        const CellEdge& e = spec.edges[i];
        t.edges.push_back(CellEdge{image_end(e.u, i, true), image_end(e.v, i, false), e.offset,
                                   EdgeOrigin::original});
        fr.edge_map.push_back({i, i});
    }
    const std::vector<int> zero(spec.dimension, 0);
    for (int v = 0; v < nv; ++v) {
        if (spec.colour_of_local(v) != Colour::black) continue;
        for (auto [x, y] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
            fr.triangle_edges.push_back(static_cast<int>(t.edges.size()));
            t.edges.push_back(CellEdge{slot[v][x], slot[v][y], zero, EdgeOrigin::triangle});
        }
    }
    std::set<int> dom;
    for (int d : spec.domain) {
        if (spec.colour_of_local(d) == Colour::black) {
            dom.insert(slot[d].begin(), slot[d].end());
        } else {
            dom.insert(slot[d][0]);
        }
    }
    t.domain.assign(dom.begin(), dom.end());

    if (spec.embedding) {
        Embedding emb;
        emb.basis = spec.embedding->basis;
        emb.site.resize(t.vertices.size());
        for (int v = 0; v < nv; ++v) {
            const auto& p = spec.embedding->site[v];
            if (spec.colour_of_local(v) == Colour::black) {
                for (int j = 0; j < 3; ++j) {
                    auto q = half_edge_far_end(spec, *spec.embedding, hs[v][j]);
                    emb.site[slot[v][j]] = {p[0] + (q[0] - p[0]) / 3.0,
                                            p[1] + (q[1] - p[1]) / 3.0};
                }
            } else {
                emb.site[slot[v][0]] = p;
            }
        }
        t.embedding = std::move(emb);
    }
    t.validate();
    return fr;
}

std::vector<FisherResult> iterate_fisher(const LatticeSpec& spec, int k, std::size_t cell_cap) {
    if (k < 1) fail(ErrorKind::OutOfDomain, "iterate_fisher needs k >= 1");
    std::vector<FisherResult> chain;
    const LatticeSpec* cur = &spec;
    for (int i = 0; i < k; ++i) {
        if (cur->vertices.size() * 3 > cell_cap)
            fail(ErrorKind::ResourceLimit,
                 "iterated cell would exceed " + std::to_string(cell_cap) + " vertices");
        chain.push_back(fisher_full(*cur));
        cur = &chain.back().transformed;
    }
    return chain;
}

LatticeSpec contract_fisher(const FisherResult& fr) {
    const LatticeSpec& t = fr.transformed;
    std::map<int, int> back;
    bool bipartite = false;
    for (const auto& [orig, tri] : fr.vertex_map) {
        for (int s : tri) back[s] = orig;
        if (tri[0] == tri[1]) bipartite = true;
    }
    LatticeSpec out;
    out.name = "contracted(" + t.name + ")";
    out.dimension = t.dimension;
    out.vertices.resize(fr.vertex_map.size());
    for (const auto& [orig, tri] : fr.vertex_map) {
        Colour c = Colour::none;
        if (bipartite) c = (tri[0] == tri[1]) ? Colour::white : Colour::black;
        out.vertices[orig] = CellVertex{orig, c};
    }
    for (const auto& [orig_idx, image_idx] : fr.edge_map) {
        const CellEdge& e = t.edges[image_idx];
        CellEdge c{back.at(e.u), back.at(e.v), e.offset, EdgeOrigin::original};
        if (static_cast<int>(out.edges.size()) <= orig_idx) out.edges.resize(orig_idx + 1);
        out.edges[orig_idx] = std::move(c);
    }
    std::set<int> dom;
    for (int d : t.domain) dom.insert(back.at(d));
    out.domain.assign(dom.begin(), dom.end());
    out.validate();
    return out;
}

GasketGraph gasket_iterate(int k, std::size_t vertex_cap) {
    if (k < 0) fail(ErrorKind::OutOfDomain, "gasket_iterate needs k >= 0");
    GasketGraph g;
    g.iterations = k;
    g.pos = {{-0.5, 0.0}, {0.5, 0.0}};
    g.edges = {{0, 1}};
    const double c = 0.5, s = 0.8660254037844386;
    g.stubs = {{0, {-0.5 - c, s}}, {0, {-0.5 - c, -s}}, {1, {0.5 + c, s}}, {1, {0.5 + c, -s}}};

    for (int round = 0; round < k; ++round) {
        if (g.pos.size() * 3 > vertex_cap)
            fail(ErrorKind::ResourceLimit, "gasket iterate exceeds vertex cap");
        // Incident items per vertex, ordered: full edges by index, then stubs.
        struct Item {
            bool is_stub;
            int idx;
        };
        std::vector<std::vector<Item>> inc(g.pos.size());
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            inc[g.edges[e].first].push_back(Item{false, e});
            inc[g.edges[e].second].push_back(Item{false, e});
        }
        for (int t = 0; t < static_cast<int>(g.stubs.size()); ++t)
            inc[g.stubs[t].vertex].push_back(Item{true, t});

        GasketGraph h;
        h.iterations = g.iterations;
        std::vector<std::array<int, 3>> slot(g.pos.size());
        for (int v = 0; v < static_cast<int>(g.pos.size()); ++v) {
            for (int j = 0; j < 3; ++j) {
                const Item& it = inc[v][j];
                std::array<double, 2> far;
                if (it.is_stub) {
                    far = g.stubs[it.idx].tip;
                } else {
                    int other = g.edges[it.idx].first == v ? g.edges[it.idx].second
                                                           : g.edges[it.idx].first;
                    far = g.pos[other];
                }
                slot[v][j] = static_cast<int>(h.pos.size());
                h.pos.push_back({g.pos[v][0] + (far[0] - g.pos[v][0]) / 3.0,
                                 g.pos[v][1] + (far[1] - g.pos[v][1]) / 3.0});
            }
        }
        auto item_slot = [&](int v, bool is_stub, int idx) {
            for (int j = 0; j < 3; ++j) {
                if (inc[v][j].is_stub == is_stub && inc[v][j].idx == idx) return slot[v][j];
            }
            return -1;
        };
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            auto [u, v] = g.edges[e];
            h.edges.push_back({item_slot(u, false, e), item_slot(v, false, e)});
        }
        for (int v = 0; v < static_cast<int>(g.pos.size()); ++v) {
            for (auto [x, y] : {std::pair{0, 1}, {0, 2}, {1, 2}})
                h.edges.push_back({slot[v][x], slot[v][y]});
        }
        for (int t = 0; t < static_cast<int>(g.stubs.size()); ++t)
            h.stubs.push_back({item_slot(g.stubs[t].vertex, true, t), g.stubs[t].tip});
        g = std::move(h);
    }
    return g;
}

} // namespace saw
