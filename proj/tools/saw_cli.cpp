// saw — exact self-avoiding-walk enumeration and analysis on periodic lattices.
//
// Subcommands: lattice list|show|validate, ball build, count ..., transform ...,
// verify ..., mu ..., exponents, render. Exit codes: 0 success, 1 verification
// failure, 2 usage or precondition error, 3 resource limits.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "saw/analysis.hpp"
#include "saw/enumerate.hpp"
#include "saw/fisher.hpp"
#include "saw/io.hpp"
#include "saw/lattice.hpp"
#include "saw/pipelines.hpp"
#include "saw/render.hpp"

namespace {

using namespace saw;

struct Common {
    std::string lattice;
    std::string spec_file;
    int radius = -1;
    int n_max = -1;
    int degree = -1;
    int workers = 1;
    int split_depth = 8;
    int precision = 15;
    std::string out;
    std::string format;
};

void add_lattice_opts(CLI::App* cmd, Common& c) {
    auto* a = cmd->add_option("--lattice", c.lattice, "builtin lattice name");
    auto* b = cmd->add_option("--spec-file", c.spec_file, "lattice spec file (JSON)");
    a->excludes(b);
}

void add_out_opts(CLI::App* cmd, Common& c, const std::string& formats) {
    cmd->add_option("--out", c.out, "output path (written atomically); stdout when absent");
    if (!formats.empty())
        cmd->add_option("--format", c.format, "output format: " + formats);
    cmd->add_option("--precision", c.precision, "printed digits for real values");
}

void add_worker_opts(CLI::App* cmd, Common& c) {
    cmd->add_option("--workers", c.workers, "enumeration worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--split-depth", c.split_depth, "prefix depth defining parallel work units");
}

LatticeSpec resolve_spec(const Common& c) {
    if (!c.spec_file.empty()) {
        std::ifstream in(c.spec_file);
        if (!in) fail(ErrorKind::ParseError, "cannot open spec file " + c.spec_file);
        std::stringstream ss;
        ss << in.rdbuf();
        return load_spec(ss.str());
    }
    if (c.lattice.empty())
        fail(ErrorKind::UnknownLattice, "one of --lattice or --spec-file is required");
    LatticeSpec spec = builtin(c.lattice);
    spec.validate();
    return spec;
}

EnumOptions enum_opts(const Common& c) {
    EnumOptions o;
    o.workers = c.workers;
    o.split_depth = c.split_depth;
    return o;
}

void emit(const Common& c, const std::string& content) {
    if (c.out.empty()) {
        std::cout << content;
    } else {
        atomic_write(c.out, content);
    }
}

int ball_radius_for(const Common& c, int extra = 1) {
    if (c.radius >= 0) return c.radius;
    return c.n_max + extra;
}

std::vector<int> parse_cell(const std::string& text) {
    std::vector<int> cell;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) cell.push_back(std::stoi(part));
    return cell;
}

std::vector<Real> parse_grid(const std::vector<std::string>& parts, std::vector<Real> fallback) {
    if (parts.empty()) return fallback;
    std::vector<Real> out;
    for (const auto& p : parts) out.push_back(Real(p));
    return out;
}

int exit_code_for(const SawError& e) {
    return e.kind() == ErrorKind::ResourceLimit ? 3 : 2;
}

// --- subcommand bodies -------------------------------------------------------

int cmd_lattice_list() {
    for (const auto& name : builtin_names()) std::cout << name << "\n";
    return 0;
}

int cmd_lattice_show(const Common& c) {
    LatticeSpec spec = resolve_spec(c);
    emit(c, serialize_spec(spec));
    return 0;
}

int cmd_lattice_validate(const Common& c) {
    LatticeSpec spec = resolve_spec(c);
    StructureReport r = validate_structure(spec);
    emit(c, structure_to_json(r));
    return 0;
}

int cmd_ball_build(const Common& c) {
    LatticeSpec spec = resolve_spec(c);
    if (c.radius < 0) fail(ErrorKind::OutOfDomain, "ball build needs --radius");
    BallGraph ball = BallGraph::build(std::make_shared<LatticeSpec>(spec), c.radius);
    std::string err = ball.check_invariants();
    if (!err.empty()) fail(ErrorKind::InvalidSpec, "ball invariant violated: " + err);
    if (c.format == "dot") {
        emit(c, ball_to_dot(ball));
    } else if (c.format == "svg") {
        emit(c, ball_to_svg(ball));
    } else {
        std::ostringstream os;
        os << "{\n  \"graph\": \"" << ball.spec().name << "\",\n  \"radius\": " << ball.radius()
           << ",\n  \"vertices\": " << ball.vertex_count()
           << ",\n  \"mid_edges\": " << ball.edge_count() << ",\n  \"boundary\": ";
        int boundary = 0;
        for (int v = 0; v < ball.vertex_count(); ++v)
            if (ball.is_boundary(v)) ++boundary;
        os << boundary << "\n}\n";
        emit(c, os.str());
    }
    return 0;
}

int cmd_count_vertices(const Common& c, bool all_domain) {
    LatticeSpec spec = resolve_spec(c);
    if (c.n_max < 0) fail(ErrorKind::OutOfDomain, "count needs --n-max");
    BallGraph ball = BallGraph::build(std::make_shared<LatticeSpec>(spec), ball_radius_for(c));
    std::vector<int> starts = domain_vertices(ball);
    if (!all_domain) starts.resize(1);
    CountSeries s = count_from_vertices(ball, starts, c.n_max, enum_opts(c));
    emit(c, c.format == "csv" ? series_to_csv(s) : series_to_json(s));
    return 0;
}

int cmd_count_midedges(const Common& c, const std::string& end_filter,
                       const std::string& start_origin) {
    LatticeSpec spec = resolve_spec(c);
    if (c.n_max < 0) fail(ErrorKind::OutOfDomain, "count needs --n-max");
    BallGraph ball = BallGraph::build(std::make_shared<LatticeSpec>(spec), ball_radius_for(c));
    std::optional<EdgeOrigin> origin;
    if (start_origin == "original") origin = EdgeOrigin::original;
    std::vector<int> starts = incident_edges(ball, domain_vertices(ball), origin);
    EndFilter f = end_filter == "original" ? EndFilter::midedge_of_original : EndFilter::any;
    CountSeries s = count_from_midedges(ball, starts, c.n_max, f, enum_opts(c));
    emit(c, c.format == "csv" ? series_to_csv(s) : series_to_json(s));
    return 0;
}

int cmd_count_twopoint(const Common& c, const std::string& cell_text, int target_local) {
    LatticeSpec spec = resolve_spec(c);
    if (c.n_max < 0) fail(ErrorKind::OutOfDomain, "count needs --n-max");
    BallGraph ball = BallGraph::build(std::make_shared<LatticeSpec>(spec), ball_radius_for(c));
    int v = domain_vertices(ball).front();
    VertexId target{parse_cell(cell_text), target_local};
    int w = ball.require_index(target);
    CountSeries s = two_point_series(ball, v, w, c.n_max);
    emit(c, c.format == "csv" ? series_to_csv(s) : series_to_json(s));
    return 0;
}

int cmd_count_displacement(const Common& c) {
    LatticeSpec spec = resolve_spec(c);
    if (c.n_max < 0) fail(ErrorKind::OutOfDomain, "count needs --n-max");
    BallGraph ball = BallGraph::build(std::make_shared<LatticeSpec>(spec), ball_radius_for(c, 2));
    std::vector<int> starts = incident_edges(ball, domain_vertices(ball));
    DisplacementSeries d = displacement_series(ball, starts, c.n_max);
    emit(c, c.format == "csv" ? displacement_to_csv(d) : displacement_to_json(d));
    return 0;
}

int cmd_count_weighted(const Common& c, const std::string& mode) {
    LatticeSpec spec = resolve_spec(c);
    if (c.n_max < 0) fail(ErrorKind::OutOfDomain, "count needs --n-max");
    BallGraph ball = BallGraph::build(std::make_shared<LatticeSpec>(spec), ball_radius_for(c));
    if (mode == "pqr") {
        std::vector<int> starts =
            incident_edges(ball, domain_vertices(ball), EdgeOrigin::original);
        emit(c, weighted_to_json(weighted_pqr(ball, starts, c.n_max)));
    } else {
        std::vector<int> starts = incident_edges(ball, domain_vertices(ball));
        emit(c, weighted_to_json(weighted_black_white(ball, starts, c.n_max)));
    }
    return 0;
}

int cmd_transform(const Common& c, const std::string& variant, int k) {
    if (variant == "gasket") {
        GasketGraph g = gasket_iterate(k);
        if (c.format == "svg") {
            emit(c, gasket_to_svg(g));
        } else if (c.format == "dot") {
            emit(c, gasket_to_dot(g));
        } else {
            std::ostringstream os;
            os << "{\n  \"iterations\": " << k << ",\n  \"vertices\": " << g.vertex_count()
               << ",\n  \"edges\": " << g.edges.size() << ",\n  \"stubs\": " << g.stubs.size()
               << "\n}\n";
            emit(c, os.str());
        }
        return 0;
    }
    LatticeSpec spec = resolve_spec(c);
    if (variant == "iterate") {
        auto chain = iterate_fisher(spec, k);
        emit(c, serialize_fisher(chain.back()));
        return 0;
    }
    FisherResult fr = variant == "black" ? fisher_black(spec) : fisher_full(spec);
    if (c.format == "dot" || c.format == "svg") {
        int radius = c.radius >= 0 ? c.radius : 4;
        BallGraph ball =
            BallGraph::build(std::make_shared<LatticeSpec>(fr.transformed), radius);
        emit(c, c.format == "dot" ? ball_to_dot(ball) : ball_to_svg(ball));
    } else {
        emit(c, serialize_fisher(fr));
    }
    return 0;
}

int cmd_verify_fisher(const Common& c) {
    LatticeSpec spec = resolve_spec(c);
    if (c.degree < 0) fail(ErrorKind::OutOfDomain, "verify needs --degree");
    FisherVerification v = run_fisher_verification(spec, c.degree, enum_opts(c));
    emit(c, reports_to_json({v.identity, v.two_pow_n}));
    return v.identity.pass && v.two_pow_n.pass ? 0 : 1;
}

int cmd_verify_sandwich(const Common& c, const std::string& kind) {
    LatticeSpec spec = resolve_spec(c);
    if (c.degree < 0) fail(ErrorKind::OutOfDomain, "verify needs --degree");
    IdentityReport r = kind == "bipartite" ? run_sandwich_bipartite(spec, c.degree, enum_opts(c))
                                           : run_sandwich_full(spec, c.degree, enum_opts(c));
    emit(c, report_to_json(r));
    return r.pass ? 0 : 1;
}

int cmd_verify_bipartite(const Common& c) {
    LatticeSpec spec = resolve_spec(c);
    if (c.degree < 0) fail(ErrorKind::OutOfDomain, "verify needs --degree");
    IdentityReport r = run_bipartite_substitution(spec, c.degree);
    emit(c, report_to_json(r));
    return r.pass ? 0 : 1;
}

int cmd_mu_estimate(const Common& c, bool midedges) {
    LatticeSpec spec = resolve_spec(c);
    if (c.n_max < 0) fail(ErrorKind::OutOfDomain, "mu estimate needs --n-max");
    BallGraph ball = BallGraph::build(std::make_shared<LatticeSpec>(spec), ball_radius_for(c));
    CountSeries s;
    if (midedges) {
        std::vector<int> starts = incident_edges(ball, domain_vertices(ball));
        s = count_from_midedges(ball, starts, c.n_max, EndFilter::any, enum_opts(c));
    } else {
        std::vector<int> starts = domain_vertices(ball);
        starts.resize(1);
        s = count_from_vertices(ball, starts, c.n_max, enum_opts(c));
    }
    MuEstimate m = estimate_mu(s, validate_structure(spec).is_cubic);
    emit(c, estimate_to_json(m, c.precision));
    return 0;
}

int cmd_mu_iterate(const Common& c, const std::string& start, int k_max,
                   const std::string& tol) {
    FixedPointTrace t = iterate_mu(Real(start), k_max, Real(tol));
    if (c.format == "csv") {
        emit(c, trace_to_csv(t, c.precision));
    } else if (c.format == "svg") {
        emit(c, convergence_plot_svg(t));
    } else {
        emit(c, trace_to_json(t, c.precision));
    }
    return 0;
}

int cmd_mu_solve_tilde(const Common& c, const std::string& mu_text) {
    Real mu = mu_text.empty() ? sqrt(2 + sqrt(Real(2))) : Real(mu_text);
    Real mu_tilde = solve_mu_tilde(mu);
    Real residual = abs(h_eval(1 / mu_tilde) - 1 / (mu * mu));
    std::ostringstream os;
    os << "{\n  \"mu\": \"" << real_to_string(mu, c.precision) << "\",\n  \"mu_tilde\": \""
       << real_to_string(mu_tilde, c.precision) << "\",\n  \"defining_residual\": \""
       << real_to_string(residual, 3) << "\"\n}\n";
    emit(c, os.str());
    return 0;
}

int cmd_exponents(const Common& c, int disp_n_max, const std::string& mu_text,
                  const std::string& eta_text, const std::vector<std::string>& y_grid,
                  const std::vector<std::string>& z_grid,
                  const std::vector<int>& decay_distances) {
    LatticeSpec spec = resolve_spec(c);
    if (c.n_max < 0) fail(ErrorKind::OutOfDomain, "exponents needs --n-max");
    const int disp_n = disp_n_max > 0 ? disp_n_max : c.n_max;
    const int radius = c.radius >= 0 ? c.radius : std::max(c.n_max + 1, disp_n + 2);
    BallGraph ball = BallGraph::build(std::make_shared<LatticeSpec>(spec), radius);
    std::vector<int> seeds = domain_vertices(ball);
    std::vector<int> x = incident_edges(ball, seeds);

    CountSeries s = count_from_midedges(ball, x, c.n_max, EndFilter::any, enum_opts(c));
    DisplacementSeries d = displacement_series(ball, x, disp_n);

    Real mu;
    if (!mu_text.empty()) {
        mu = Real(mu_text);
    } else {
        std::vector<int> one = {seeds.front()};
        CountSeries vs = count_from_vertices(ball, one, std::min(c.n_max, radius - 1));
        mu = estimate_mu(vs, false).final_ratio;
    }
    std::optional<Real> eta;
    if (!eta_text.empty()) eta = Real(eta_text);

    std::vector<Real> yg = parse_grid(y_grid, {Real(0), Real(1) / 2, Real(1), Real(2)});
    std::vector<Real> zg = parse_grid(z_grid, {Real(0), Real(1) / 2, Real(3) / 4, Real(1)});
    DiagnosticsReport rep = exponent_diagnostics(s, &d, mu, yg, zg, eta);
    std::string body = diagnostics_to_json(rep, c.precision);

    if (!decay_distances.empty()) {
        std::vector<int> dist = bfs_distance(ball, seeds.front());
        std::vector<int> targets;
        for (int want : decay_distances) {
            for (int v = 0; v < ball.vertex_count(); ++v) {
                if (dist[v] == want) {
                    targets.push_back(v);
                    break;
                }
            }
        }
        auto rows = two_point_decay(ball, seeds.front(), targets, 1 / mu, c.n_max);
        // Splice the decay table into the JSON object.
        body.pop_back();
        body.pop_back();
        body += ",\n  \"two_point_decay\": " + two_point_rows_to_json(ball, rows, c.precision);
        body += "}\n";
    }
    emit(c, body);
    return 0;
}

int cmd_render(const Common& c, const std::string& kind, int k, const std::string& variant,
               const std::string& start, int k_max, const std::string& tol) {
    if (kind == "gasket") {
        emit(c, gasket_to_svg(gasket_iterate(k)));
        return 0;
    }
    if (kind == "convergence_plot") {
        FixedPointTrace t = iterate_mu(Real(start), k_max, Real(tol));
        emit(c, convergence_plot_svg(t));
        return 0;
    }
    if (kind == "series_plot") {
        LatticeSpec spec = resolve_spec(c);
        int n = c.n_max > 0 ? c.n_max : 16;
        BallGraph ball = BallGraph::build(std::make_shared<LatticeSpec>(spec), n + 1);
        std::vector<int> starts = domain_vertices(ball);
        starts.resize(1);
        emit(c, series_plot_svg(count_from_vertices(ball, starts, n)));
        return 0;
    }
    if (kind == "lattice_ball" || kind == "fisher_image") {
        LatticeSpec spec = resolve_spec(c);
        if (kind == "fisher_image")
            spec = (variant == "black" ? fisher_black(spec) : fisher_full(spec)).transformed;
        int radius = c.radius >= 0 ? c.radius : 4;
        BallGraph ball = BallGraph::build(std::make_shared<LatticeSpec>(spec), radius);
        emit(c, c.format == "dot" ? ball_to_dot(ball) : ball_to_svg(ball));
        return 0;
    }
    fail(ErrorKind::UnsupportedKind, "render kind '" + kind + "' is not supported");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact self-avoiding-walk enumeration on periodic lattice graphs"};
    app.require_subcommand(1);
    Common c;

    // lattice
    auto* lattice = app.add_subcommand("lattice", "manage lattice specs");
    lattice->require_subcommand(1);
    auto* lat_list = lattice->add_subcommand("list", "list builtin lattices");
    auto* lat_show = lattice->add_subcommand("show", "print a lattice spec as JSON");
    add_lattice_opts(lat_show, c);
    add_out_opts(lat_show, c, "");
    auto* lat_validate =
        lattice->add_subcommand("validate", "validate a spec and report structure");
    add_lattice_opts(lat_validate, c);
    add_out_opts(lat_validate, c, "");

    // ball
    auto* ball = app.add_subcommand("ball", "finite lattice balls");
    ball->require_subcommand(1);
    auto* ball_build = ball->add_subcommand("build", "instantiate a ball of given radius");
    add_lattice_opts(ball_build, c);
    ball_build->add_option("--radius", c.radius, "graph radius");
    add_out_opts(ball_build, c, "json|dot|svg");

    // count
    auto* count = app.add_subcommand("count", "exact SAW enumeration");
    count->require_subcommand(1);
    bool all_domain = false;
    auto* cv = count->add_subcommand("vertices", "vertex-start SAW counts");
    add_lattice_opts(cv, c);
    cv->add_option("--n-max", c.n_max, "maximum walk length");
    cv->add_option("--radius", c.radius, "ball radius (default n_max + 1)");
    cv->add_flag("--all-domain", all_domain, "sum over the whole fundamental domain");
    add_worker_opts(cv, c);
    add_out_opts(cv, c, "json|csv");

    std::string end_filter = "any", start_origin = "any";
    auto* cm = count->add_subcommand("midedges", "mid-edge-start SAW counts");
    add_lattice_opts(cm, c);
    cm->add_option("--n-max", c.n_max, "maximum walk length (vertices visited)");
    cm->add_option("--radius", c.radius, "ball radius (default n_max + 1)");
    cm->add_option("--end-filter", end_filter, "any|original")
        ->check(CLI::IsMember({"any", "original"}));
    cm->add_option("--start-origin", start_origin, "any|original (start edge filter)")
        ->check(CLI::IsMember({"any", "original"}));
    add_worker_opts(cm, c);
    add_out_opts(cm, c, "json|csv");

    std::string target_cell = "0";
    int target_local = 0;
    auto* ct = count->add_subcommand("twopoint", "endpoint-resolved counts sigma_n(v, w)");
    add_lattice_opts(ct, c);
    ct->add_option("--n-max", c.n_max, "maximum walk length");
    ct->add_option("--radius", c.radius, "ball radius (default n_max + 1)");
    ct->add_option("--target-cell", target_cell, "target cell, comma-separated");
    ct->add_option("--target-local", target_local, "target local index");
    add_out_opts(ct, c, "json|csv");

    auto* cd = count->add_subcommand("displacement", "mean-square displacement series");
    add_lattice_opts(cd, c);
    cd->add_option("--n-max", c.n_max, "maximum walk length");
    cd->add_option("--radius", c.radius, "ball radius (default n_max + 2)");
    add_out_opts(cd, c, "json|csv");

    std::string weighted_mode = "bw";
    auto* cw = count->add_subcommand("weighted", "weighted counts for Z(x,y) / Z~(p,q,r)");
    add_lattice_opts(cw, c);
    cw->add_option("--n-max", c.n_max, "maximum walk length");
    cw->add_option("--radius", c.radius, "ball radius (default n_max + 1)");
    cw->add_option("--mode", weighted_mode, "bw|pqr")->check(CLI::IsMember({"bw", "pqr"}));
    add_out_opts(cw, c, "json");

    // transform
    auto* transform = app.add_subcommand("transform", "Fisher transformations");
    transform->require_subcommand(1);
    int iter_k = 1;
    auto* tf = transform->add_subcommand("full", "Fisher transformation at every vertex");
    add_lattice_opts(tf, c);
    tf->add_option("--radius", c.radius, "drawing radius for dot/svg output");
    add_out_opts(tf, c, "json|dot|svg");
    auto* tb = transform->add_subcommand("black", "Fisher transformation at black vertices");
    add_lattice_opts(tb, c);
    tb->add_option("--radius", c.radius, "drawing radius for dot/svg output");
    add_out_opts(tb, c, "json|dot|svg");
    auto* ti = transform->add_subcommand("iterate", "iterated full transformation");
    add_lattice_opts(ti, c);
    ti->add_option("--k", iter_k, "iteration count")->check(CLI::PositiveNumber);
    add_out_opts(ti, c, "json");
    auto* tg = transform->add_subcommand("gasket", "Sierpinski-gasket iterates of a single edge");
    tg->add_option("--k", iter_k, "iteration count");
    add_out_opts(tg, c, "json|dot|svg");

    // verify
    auto* verify = app.add_subcommand("verify", "coefficient-wise identity checks");
    verify->require_subcommand(1);
    auto* vf = verify->add_subcommand("fisher", "Z0(x^2(1+x)) = Z1*(x) plus 2^n correspondence");
    add_lattice_opts(vf, c);
    vf->add_option("--degree", c.degree, "verified degree");
    add_worker_opts(vf, c);
    add_out_opts(vf, c, "json");
    std::string sandwich_kind = "full";
    auto* vs = verify->add_subcommand("sandwich", "partition-function sandwich inequalities");
    add_lattice_opts(vs, c);
    vs->add_option("--degree", c.degree, "verified degree");
    vs->add_option("--kind", sandwich_kind, "full|bipartite")
        ->check(CLI::IsMember({"full", "bipartite"}));
    add_worker_opts(vs, c);
    add_out_opts(vs, c, "json");
    auto* vb = verify->add_subcommand("bipartite", "Z~(p,q,r) = Z(q^2(1+p), r)");
    add_lattice_opts(vb, c);
    vb->add_option("--degree", c.degree, "verified total degree");
    add_out_opts(vb, c, "json");

    // mu
    auto* mu = app.add_subcommand("mu", "connective-constant tools");
    mu->require_subcommand(1);
    bool est_midedges = false;
    auto* me = mu->add_subcommand("estimate", "root/ratio estimates from enumeration");
    add_lattice_opts(me, c);
    me->add_option("--n-max", c.n_max, "maximum walk length");
    me->add_option("--radius", c.radius, "ball radius (default n_max + 1)");
    me->add_flag("--midedges", est_midedges, "estimate from the mid-edge series");
    add_worker_opts(me, c);
    add_out_opts(me, c, "json");
    std::string mu_start = "0.5", mu_tol = "1e-12";
    int mu_kmax = 60;
    auto* mi = mu->add_subcommand("iterate", "golden-mean fixed-point iteration");
    mi->add_option("--start", mu_start, "mu_0^{-1} in [1/2, 1]");
    mi->add_option("--k-max", mu_kmax, "maximum iterations");
    mi->add_option("--tol", mu_tol, "convergence tolerance");
    add_out_opts(mi, c, "json|csv|svg");
    std::string mu_value;
    auto* ms = mu->add_subcommand("solve-tilde", "decorated-lattice constant from mu");
    ms->add_option("--mu", mu_value, "base connective constant (default sqrt(2+sqrt2))");
    add_out_opts(ms, c, "json");

    // exponents
    int disp_n_max = -1;
    std::string mu_text, eta_text;
    std::vector<std::string> y_grid, z_grid;
    std::vector<int> decay_distances;
    auto* expo = app.add_subcommand("exponents", "truncated critical-exponent diagnostics");
    add_lattice_opts(expo, c);
    expo->add_option("--n-max", c.n_max, "count series length");
    expo->add_option("--disp-n-max", disp_n_max, "displacement series length (default n-max)");
    expo->add_option("--radius", c.radius, "ball radius");
    expo->add_option("--mu", mu_text, "connective constant (default: trailing ratio estimate)");
    expo->add_option("--eta", eta_text, "eta for the Fisher-relation residual");
    expo->add_option("--y-grid", y_grid, "y values for the Y table");
    expo->add_option("--z-grid", z_grid, "z values for the V table");
    expo->add_option("--decay-distances", decay_distances,
                     "graph distances for the two-point decay table");
    add_worker_opts(expo, c);
    add_out_opts(expo, c, "json");

    // render
    std::string render_kind = "lattice_ball", render_variant = "full";
    int render_k = 3;
    auto* render = app.add_subcommand("render", "figure emission (SVG/DOT)");
    render->add_option("--kind", render_kind,
                       "lattice_ball|fisher_image|gasket|convergence_plot|series_plot");
    add_lattice_opts(render, c);
    render->add_option("--radius", c.radius, "ball radius for lattice figures");
    render->add_option("--k", render_k, "gasket iterations");
    render->add_option("--variant", render_variant, "full|black (fisher_image)");
    render->add_option("--start", mu_start, "convergence plot start");
    render->add_option("--k-max", mu_kmax, "convergence plot iterations");
    render->add_option("--tol", mu_tol, "convergence plot tolerance");
    render->add_option("--n-max", c.n_max, "series plot length");
    add_out_opts(render, c, "svg|dot");

    CLI11_PARSE(app, argc, argv);

    try {
        if (lat_list->parsed()) return cmd_lattice_list();
        if (lat_show->parsed()) return cmd_lattice_show(c);
        if (lat_validate->parsed()) return cmd_lattice_validate(c);
        if (ball_build->parsed()) return cmd_ball_build(c);
        if (cv->parsed()) return cmd_count_vertices(c, all_domain);
        if (cm->parsed()) return cmd_count_midedges(c, end_filter, start_origin);
        if (ct->parsed()) return cmd_count_twopoint(c, target_cell, target_local);
        if (cd->parsed()) return cmd_count_displacement(c);
        if (cw->parsed()) return cmd_count_weighted(c, weighted_mode);
        if (tf->parsed()) return cmd_transform(c, "full", iter_k);
        if (tb->parsed()) return cmd_transform(c, "black", iter_k);
        if (ti->parsed()) return cmd_transform(c, "iterate", iter_k);
        if (tg->parsed()) return cmd_transform(c, "gasket", iter_k);
        if (vf->parsed()) return cmd_verify_fisher(c);
        if (vs->parsed()) return cmd_verify_sandwich(c, sandwich_kind);
        if (vb->parsed()) return cmd_verify_bipartite(c);
        if (me->parsed()) return cmd_mu_estimate(c, est_midedges);
        if (mi->parsed()) return cmd_mu_iterate(c, mu_start, mu_kmax, mu_tol);
        if (ms->parsed()) return cmd_mu_solve_tilde(c, mu_value);
        if (expo->parsed())
            return cmd_exponents(c, disp_n_max, mu_text, eta_text, y_grid, z_grid,
                                 decay_distances);
        if (render->parsed())
            return cmd_render(c, render_kind, render_k, render_variant, mu_start, mu_kmax,
                              mu_tol);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const SawError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::bad_alloc&) {
        std::cerr << "error: ResourceLimit: out of memory\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
