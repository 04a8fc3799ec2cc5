#include "saw/render.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace saw {

namespace {

constexpr const char* kSvgBanner = "<!-- sawkit svg v1 -->\n";

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

struct Canvas {
    std::ostringstream body;
    double min_x = 1e30, min_y = 1e30, max_x = -1e30, max_y = -1e30;

    void grow(double x, double y) {
        min_x = std::min(min_x, x);
        min_y = std::min(min_y, y);
        max_x = std::max(max_x, x);
        max_y = std::max(max_y, y);
    }
    void line(double x1, double y1, double x2, double y2, const std::string& style) {
        grow(x1, y1);
        grow(x2, y2);
        body << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
             << "\" y2=\"" << fmt(y2) << "\" " << style << "/>\n";
    }
    void curve(double x1, double y1, double cx, double cy, double x2, double y2,
               const std::string& style) {
        grow(x1, y1);
        grow(x2, y2);
        grow(cx, cy);
        body << "<path d=\"M " << fmt(x1) << ' ' << fmt(y1) << " Q " << fmt(cx) << ' ' << fmt(cy)
             << ' ' << fmt(x2) << ' ' << fmt(y2) << "\" fill=\"none\" " << style << "/>\n";
    }
    void circle(double x, double y, double r, const std::string& style) {
        grow(x - r, y - r);
        grow(x + r, y + r);
        body << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r)
             << "\" " << style << "/>\n";
    }
    void text(double x, double y, const std::string& s) {
        grow(x, y);
        body << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y)
             << "\" font-size=\"0.28\" font-family=\"monospace\">" << s << "</text>\n";
    }

    std::string finish(double pad = 0.8) {
        if (min_x > max_x) {
            min_x = min_y = 0;
            max_x = max_y = 1;
        }
        std::ostringstream out;
        out << kSvgBanner;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(min_x - pad) << ' '
            << fmt(min_y - pad) << ' ' << fmt(max_x - min_x + 2 * pad) << ' '
            << fmt(max_y - min_y + 2 * pad) << "\" width=\"900\">\n";
        out << body.str();
        out << "</svg>\n";
        return out.str();
    }
};

std::array<double, 2> vertex_position(const BallGraph& ball, int v,
                                      const std::vector<std::array<double, 2>>& fallback) {
    if (!fallback.empty()) return fallback[v];
    const Embedding& emb = *ball.spec().embedding;
    const VertexId& id = ball.vertex(v);
    std::array<double, 2> p = emb.site[id.local];
    for (std::size_t i = 0; i < id.cell.size() && i < emb.basis.size(); ++i) {
        p[0] += id.cell[i] * emb.basis[i][0];
        p[1] += id.cell[i] * emb.basis[i][1];
    }
    return p;
}

/// Radial tree layout: children fan out within the parent's angular sector.
std::vector<std::array<double, 2>> tree_layout(const BallGraph& ball) {
    const double pi = 3.14159265358979323846;
    std::vector<std::array<double, 2>> pos(ball.vertex_count(), {0.0, 0.0});
    std::vector<std::pair<double, double>> sector(ball.vertex_count(), {0.0, 2 * pi});
    for (int v = 0; v < ball.vertex_count(); ++v) {
        const auto& word = ball.vertex(v).cell;
        if (word.empty()) continue;
        std::vector<int> parent_word(word.begin(), word.end() - 1);
        int parent = ball.index_of(VertexId{parent_word, 0});
        auto [lo, hi] = sector[parent];
        int siblings = parent_word.empty() ? 3 : 2;
        int slot = word.back();
        double width = (hi - lo) / siblings;
        double a = lo + width * slot, b = lo + width * (slot + 1);
        sector[v] = {a, b};
        double angle = (a + b) / 2;
        double radius = static_cast<double>(word.size());
        pos[v] = {radius * std::cos(angle), radius * std::sin(angle)};
    }
    return pos;
}

} // namespace

std::string ball_to_dot(const BallGraph& ball) {
    std::ostringstream os;
    os << "graph \"" << ball.spec().name << "\" {\n";
    os << "  node [shape=point];\n";
    for (int v = 0; v < ball.vertex_count(); ++v) {
        os << "  \"" << vertex_label(ball.vertex(v)) << "\"";
        if (ball.colour(v) == Colour::black) os << " [style=filled, fillcolor=black]";
        if (ball.colour(v) == Colour::white) os << " [style=filled, fillcolor=white]";
        os << ";\n";
    }
    for (int e = 0; e < ball.edge_count(); ++e) {
        const auto& info = ball.edge(e);
        os << "  \"" << vertex_label(ball.vertex(info.a)) << "\" -- \""
           << vertex_label(ball.vertex(info.b)) << "\"";
        if (info.origin == EdgeOrigin::triangle) os << " [style=dashed]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string ball_to_svg(const BallGraph& ball) {
    std::vector<std::array<double, 2>> fallback;
    if (!ball.spec().embedding) {
        if (ball.spec().aperiodic) {
            fallback = tree_layout(ball);
        } else {
            fail(ErrorKind::UnsupportedKind,
                 "spec '" + ball.spec().name + "' has no drawing embedding; use dot output");
        }
    }
    Canvas c;
    // Count parallel edges per vertex pair so multigraph edges separate.
    std::map<std::pair<int, int>, int> seen;
    for (int e = 0; e < ball.edge_count(); ++e) {
        const auto& info = ball.edge(e);
        auto pa = vertex_position(ball, info.a, fallback);
        auto pb = vertex_position(ball, info.b, fallback);
        std::string style = info.origin == EdgeOrigin::triangle
                                ? "stroke=\"#888888\" stroke-width=\"0.05\""
                                : "stroke=\"#222222\" stroke-width=\"0.07\"";
        auto key = std::minmax(info.a, info.b);
        int dup = seen[{key.first, key.second}]++;
        if (dup == 0) {
            c.line(pa[0], pa[1], pb[0], pb[1], style);
        } else {
            double mx = (pa[0] + pb[0]) / 2, my = (pa[1] + pb[1]) / 2;
            double nx = -(pb[1] - pa[1]), ny = pb[0] - pa[0];
            double norm = std::sqrt(nx * nx + ny * ny);
            if (norm == 0) norm = 1;
            double w = 0.25 * dup;
            c.curve(pa[0], pa[1], mx + nx / norm * w, my + ny / norm * w, pb[0], pb[1], style);
        }
    }
    for (int v = 0; v < ball.vertex_count(); ++v) {
        auto p = vertex_position(ball, v, fallback);
        std::string style;
        switch (ball.colour(v)) {
            case Colour::black:
                style = "fill=\"#000000\"";
                break;
            case Colour::white:
                style = "fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"0.04\"";
                break;
            case Colour::none:
                style = ball.is_boundary(v) ? "fill=\"#bbbbbb\"" : "fill=\"#444444\"";
                break;
        }
        c.circle(p[0], p[1], ball.colour(v) == Colour::none ? 0.09 : 0.12, style);
    }
    return c.finish();
}

std::string gasket_to_dot(const GasketGraph& g) {
    std::ostringstream os;
    os << "graph gasket {\n  node [shape=point];\n";
    for (int v = 0; v < g.vertex_count(); ++v) os << "  v" << v << ";\n";
    for (const auto& [a, b] : g.edges) os << "  v" << a << " -- v" << b << ";\n";
    for (std::size_t t = 0; t < g.stubs.size(); ++t) {
        os << "  s" << t << " [shape=none, label=\"\"];\n";
        os << "  v" << g.stubs[t].vertex << " -- s" << t << " [style=dotted];\n";
    }
    os << "}\n";
    return os.str();
}

std::string gasket_to_svg(const GasketGraph& g) {
    Canvas c;
    for (const auto& [a, b] : g.edges) {
        c.line(g.pos[a][0], g.pos[a][1], g.pos[b][0], g.pos[b][1],
               "stroke=\"#222222\" stroke-width=\"0.012\"");
    }
    for (const auto& stub : g.stubs) {
        const auto& p = g.pos[stub.vertex];
        double dx = stub.tip[0] - p[0], dy = stub.tip[1] - p[1];
        double n = std::sqrt(dx * dx + dy * dy);
        if (n == 0) n = 1;
        double len = 0.12;
        c.line(p[0], p[1], p[0] + dx / n * len, p[1] + dy / n * len,
               "stroke=\"#999999\" stroke-width=\"0.01\" stroke-dasharray=\"0.02\"");
    }
    for (const auto& p : g.pos) c.circle(p[0], p[1], 0.016, "fill=\"#333333\"");
    return c.finish(0.3);
}

std::string convergence_plot_svg(const FixedPointTrace& trace) {
    Canvas c;
    const int n = static_cast<int>(trace.iterates.size());
    const double w = 10.0, h = 6.0;
    double lo = 0.37, hi = 1.03;
    auto xmap = [&](int k) { return n > 1 ? w * k / (n - 1) : 0.0; };
    auto ymap = [&](double v) { return h - h * (v - lo) / (hi - lo); };
    c.line(0, ymap(lo), 0, ymap(hi), "stroke=\"#000\" stroke-width=\"0.03\"");
    c.line(0, ymap(lo), w, ymap(lo), "stroke=\"#000\" stroke-width=\"0.03\"");
    double phi_inv = 0.6180339887498949;
    c.line(0, ymap(phi_inv), w, ymap(phi_inv),
           "stroke=\"#cc3333\" stroke-width=\"0.02\" stroke-dasharray=\"0.15\"");
    c.text(w + 0.1, ymap(phi_inv), "1/phi");
    for (int k = 0; k + 1 < n; ++k) {
        double a = static_cast<double>(trace.iterates[k]);
        double b = static_cast<double>(trace.iterates[k + 1]);
        c.line(xmap(k), ymap(a), xmap(k + 1), ymap(b), "stroke=\"#3355bb\" stroke-width=\"0.04\"");
    }
    for (int k = 0; k < n; ++k) {
        c.circle(xmap(k), ymap(static_cast<double>(trace.iterates[k])), 0.06, "fill=\"#3355bb\"");
    }
    c.text(0.0, ymap(hi) - 0.2, "mu_k^{-1} vs k");
    return c.finish(1.0);
}

std::string series_plot_svg(const CountSeries& series) {
    Canvas c;
    const int n = series.n_max();
    const double w = 10.0, h = 6.0;
    double max_log = 0;
    std::vector<double> logs(n + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        if (series.counts[i] > 0)
            logs[i] = static_cast<double>(log10(Real(series.counts[i])));
        max_log = std::max(max_log, logs[i]);
    }
    if (max_log == 0) max_log = 1;
    auto xmap = [&](int k) { return n > 0 ? w * k / n : 0.0; };
    auto ymap = [&](double v) { return h - h * v / max_log; };
    c.line(0, ymap(0), 0, ymap(max_log), "stroke=\"#000\" stroke-width=\"0.03\"");
    c.line(0, ymap(0), w, ymap(0), "stroke=\"#000\" stroke-width=\"0.03\"");
    for (int i = 0; i + 1 <= n; ++i) {
        c.line(xmap(i), ymap(logs[i]), xmap(i + 1), ymap(logs[i + 1]),
               "stroke=\"#227744\" stroke-width=\"0.04\"");
    }
    c.text(0.0, ymap(max_log) - 0.2, "log10 counts vs n");
    return c.finish(1.0);
}

} // namespace saw
