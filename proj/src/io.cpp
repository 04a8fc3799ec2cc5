#include "saw/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include <json.hpp>

namespace saw {

using nlohmann::json;

namespace {

json spec_to_json_obj(const LatticeSpec& spec) {
    json j;
    j["name"] = spec.name;
    j["dimension"] = spec.dimension;
    j["multigraph"] = spec.multigraph;
    if (spec.aperiodic) j["aperiodic"] = true;
    json verts = json::array();
    for (const auto& v : spec.vertices)
        verts.push_back({{"local", v.local}, {"colour", colour_name(v.colour)}});
    j["vertices"] = std::move(verts);
    json edges = json::array();
    for (const auto& e : spec.edges)
        edges.push_back({{"u", e.u}, {"v", e.v}, {"offset", e.offset}});
    j["edges"] = std::move(edges);
    j["domain"] = spec.domain;
    return j;
}

json maps_to_json(const FisherResult& fr) {
    json maps;
    json em = json::array();
    for (auto [a, b] : fr.edge_map) em.push_back({a, b});
    maps["edge_map"] = std::move(em);
    json vm = json::array();
    for (const auto& [v, tri] : fr.vertex_map) vm.push_back({v, {tri[0], tri[1], tri[2]}});
    maps["vertex_map"] = std::move(vm);
    maps["triangle_edges"] = fr.triangle_edges;
    return maps;
}

} // namespace

LatticeSpec load_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
    }
    LatticeSpec spec;
    try {
        spec.name = j.at("name").get<std::string>();
        spec.dimension = j.at("dimension").get<int>();
        spec.multigraph = j.value("multigraph", false);
        spec.aperiodic = j.value("aperiodic", false);
        for (const auto& v : j.at("vertices")) {
            spec.vertices.push_back(CellVertex{v.at("local").get<int>(),
                                               colour_from_name(v.value("colour", "none"))});
        }
        for (const auto& e : j.at("edges")) {
            CellEdge ce;
            ce.u = e.at("u").get<int>();
            ce.v = e.at("v").get<int>();
            ce.offset = e.at("offset").get<std::vector<int>>();
            spec.edges.push_back(std::move(ce));
        }
        spec.domain = j.at("domain").get<std::vector<int>>();
        if (j.contains("maps")) {
            for (const auto& t : j["maps"].at("triangle_edges")) {
                int idx = t.get<int>();
                if (idx < 0 || idx >= static_cast<int>(spec.edges.size()))
                    fail(ErrorKind::ParseError, "triangle edge index out of range");
                spec.edges[idx].origin = EdgeOrigin::triangle;
            }
            spec.origin_tagged = true;
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("spec file shape: ") + e.what());
    }
    spec.validate();
    return spec;
}

std::string serialize_spec(const LatticeSpec& spec) {
    json j = spec_to_json_obj(spec);
    if (spec.origin_tagged) {
        // Keep tags round-trippable even without full transform maps.
        json tri = json::array();
        for (int i = 0; i < static_cast<int>(spec.edges.size()); ++i) {
            if (spec.edges[i].origin == EdgeOrigin::triangle) tri.push_back(i);
        }
        j["maps"] = {{"triangle_edges", std::move(tri)},
                     {"edge_map", json::array()},
                     {"vertex_map", json::array()}};
    }
    return j.dump(2) + "\n";
}

std::string serialize_fisher(const FisherResult& fr) {
    json j = spec_to_json_obj(fr.transformed);
    j["maps"] = maps_to_json(fr);
    return j.dump(2) + "\n";
}

std::string series_to_json(const CountSeries& series) {
    json j;
    j["graph"] = series.graph_id;
    j["start_mode"] = series.start_mode == StartMode::vertex ? "vertex" : "midedge";
    j["start_set"] = series.start_desc;
    j["end_filter"] =
        series.end_filter == EndFilter::any ? "any" : "midedge_of_original_E";
    j["n_max"] = series.n_max();
    j["exact_to"] = series.exact_to;
    j["vertex_transitive_single"] = series.vertex_transitive_single;
    json counts = json::array();
    for (const auto& c : series.counts) counts.push_back(c.str());
    j["counts"] = std::move(counts);
    return j.dump(2) + "\n";
}

CountSeries series_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
    }
    CountSeries s;
    try {
        s.graph_id = j.at("graph").get<std::string>();
        s.start_mode =
            j.at("start_mode").get<std::string>() == "vertex" ? StartMode::vertex
                                                              : StartMode::midedge;
        s.start_desc = j.at("start_set").get<std::string>();
        s.end_filter = j.at("end_filter").get<std::string>() == "any"
                           ? EndFilter::any
                           : EndFilter::midedge_of_original;
        s.exact_to = j.value("exact_to", -1);
        s.vertex_transitive_single = j.value("vertex_transitive_single", false);
        for (const auto& c : j.at("counts"))
            s.counts.push_back(bigint_from_decimal(c.get<std::string>()));
        if (s.exact_to < 0) s.exact_to = s.n_max();
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("series file shape: ") + e.what());
    }
    return s;
}

std::string series_to_csv(const CountSeries& series) {
    std::string out = "n,count\n";
    for (int n = 0; n <= series.n_max(); ++n)
        out += std::to_string(n) + "," + series.counts[n].str() + "\n";
    return out;
}

std::string weighted_to_json(const WeightedCounts& w) {
    json j;
    j["graph"] = w.graph_id;
    j["mode"] = w.mode == WeightedCounts::Mode::black_white ? "black_white" : "pqr";
    j["n_max"] = w.n_max;
    json entries = json::array();
    for (const auto& [key, c] : w.counts) {
        if (w.mode == WeightedCounts::Mode::black_white) {
            entries.push_back({{"black", key[0]}, {"white", key[1]}, {"count", c.str()}});
        } else {
            entries.push_back({{"p", key[0]}, {"q", key[1]}, {"r", key[2]}, {"count", c.str()}});
        }
    }
    j["counts"] = std::move(entries);
    return j.dump(2) + "\n";
}

std::string displacement_to_json(const DisplacementSeries& d) {
    json j;
    j["graph"] = d.graph_id;
    j["n_max"] = d.n_max();
    json rows = json::array();
    for (int n = 0; n <= d.n_max(); ++n) {
        rows.push_back({{"n", n},
                        {"count", d.counts[n].str()},
                        {"sum_sq", d.sum_sq[n].str()},
                        {"mean_sq", real_to_string(d.mean_sq(n), 20)}});
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string displacement_to_csv(const DisplacementSeries& d) {
    std::string out = "n,count,sum_sq,mean_sq\n";
    for (int n = 0; n <= d.n_max(); ++n) {
        out += std::to_string(n) + "," + d.counts[n].str() + "," + d.sum_sq[n].str() + "," +
               real_to_string(d.mean_sq(n), 20) + "\n";
    }
    return out;
}

namespace {

json report_obj(const IdentityReport& r) {
    json j;
    j["identity"] = r.name;
    j["max_degree"] = r.max_degree;
    j["pass"] = r.pass;
    if (!r.pass) {
        j["fail_degree"] = r.fail_degree;
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

} // namespace

std::string report_to_json(const IdentityReport& r) { return report_obj(r).dump(2) + "\n"; }

std::string reports_to_json(const std::vector<IdentityReport>& rs) {
    json arr = json::array();
    for (const auto& r : rs) arr.push_back(report_obj(r));
    return arr.dump(2) + "\n";
}

std::string trace_to_json(const FixedPointTrace& t, int digits) {
    json j;
    j["direction"] = direction_name(t.direction);
    j["converged"] = t.converged;
    j["steps"] = t.iterates.size() - 1;
    j["asymptotic_ratio"] = real_to_string(t.asymptotic_ratio, digits);
    json rows = json::array();
    for (std::size_t k = 0; k < t.iterates.size(); ++k) {
        json row;
        row["k"] = k;
        row["iterate"] = real_to_string(t.iterates[k], digits);
        row["error"] = real_to_string(t.errors[k], digits);
        if (k < t.ratios.size()) row["ratio"] = real_to_string(t.ratios[k], digits);
        rows.push_back(std::move(row));
    }
    j["trace"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string trace_to_csv(const FixedPointTrace& t, int digits) {
    std::string out = "k,iterate,error,ratio\n";
    for (std::size_t k = 0; k < t.iterates.size(); ++k) {
        out += std::to_string(k) + "," + real_to_string(t.iterates[k], digits) + "," +
               real_to_string(t.errors[k], digits) + ",";
        if (k < t.ratios.size()) out += real_to_string(t.ratios[k], digits);
        out += "\n";
    }
    return out;
}

std::string estimate_to_json(const MuEstimate& m, int digits) {
    json j;
    j["roots_are_upper_bounds"] = m.roots_are_upper_bounds;
    j["cubic"] = m.cubic;
    j["cubic_range_ok"] = m.cubic_range_ok;
    j["final_root"] = real_to_string(m.final_root, digits);
    j["final_ratio"] = real_to_string(m.final_ratio, digits);
    json roots = json::array(), ratios = json::array();
    for (const auto& r : m.root_estimates) roots.push_back(real_to_string(r, digits));
    for (const auto& r : m.ratio_estimates) ratios.push_back(real_to_string(r, digits));
    j["root_estimates"] = std::move(roots);
    j["ratio_estimates"] = std::move(ratios);
    return j.dump(2) + "\n";
}

std::string diagnostics_to_json(const DiagnosticsReport& rep, int digits) {
    json j;
    json g;
    g["slope"] = real_to_string(rep.gamma_fit.slope, digits);
    g["intercept"] = real_to_string(rep.gamma_fit.intercept, digits);
    g["residual"] = real_to_string(rep.gamma_fit.residual, digits);
    g["window"] = {rep.gamma_fit.window_lo, rep.gamma_fit.window_hi};
    j["gamma_fit"] = std::move(g);
    j["gamma_estimate"] = real_to_string(rep.gamma_estimate, digits);
    if (rep.has_nu) {
        json nu;
        nu["slope"] = real_to_string(rep.nu_fit.slope, digits);
        nu["intercept"] = real_to_string(rep.nu_fit.intercept, digits);
        nu["residual"] = real_to_string(rep.nu_fit.residual, digits);
        nu["window"] = {rep.nu_fit.window_lo, rep.nu_fit.window_hi};
        j["nu_fit"] = std::move(nu);
        j["nu_estimate"] = real_to_string(rep.nu_estimate, digits);
    }
    json ytab = json::array();
    for (const auto& [y, val] : rep.y_table)
        ytab.push_back({{"y", real_to_string(y, digits)}, {"Y", real_to_string(val, digits)}});
    j["Y_table"] = std::move(ytab);
    json vtab = json::array();
    for (const auto& [z, val] : rep.v_table)
        vtab.push_back({{"z", real_to_string(z, digits)}, {"V", real_to_string(val, digits)}});
    j["V_table"] = std::move(vtab);
    if (rep.fisher_residual)
        j["fisher_relation_residual"] = real_to_string(*rep.fisher_residual, digits);
    return j.dump(2) + "\n";
}

std::string structure_to_json(const StructureReport& r) {
    json j;
    j["is_cubic"] = r.is_cubic;
    j["is_bipartite_coloured"] = r.is_bipartite_coloured;
    j["black_cubic"] = r.black_cubic;
    j["is_simple"] = r.is_simple;
    return j.dump(2) + "\n";
}

std::string two_point_rows_to_json(const BallGraph& ball, const std::vector<TwoPointRow>& rows,
                                   int digits) {
    json arr = json::array();
    for (const auto& row : rows) {
        arr.push_back({{"target", vertex_label(ball.vertex(row.target))},
                       {"distance", row.distance},
                       {"Z", real_to_string(row.z_value, digits)},
                       {"truncation", row.truncation}});
    }
    return arr.dump(2) + "\n";
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    fs::path tmp = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::ResourceLimit, "cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush())
            fail(ErrorKind::ResourceLimit, "short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

} // namespace saw
