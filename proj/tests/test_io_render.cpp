#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include "saw/analysis.hpp"
#include "saw/enumerate.hpp"
#include "saw/fisher.hpp"
#include "saw/io.hpp"
#include "saw/lattice.hpp"
#include "saw/render.hpp"

#include <json.hpp>

using namespace saw;

namespace {

std::shared_ptr<LatticeSpec> make(const std::string& name) {
    auto s = std::make_shared<LatticeSpec>(builtin(name));
    s->validate();
    return s;
}

} // namespace

TEST_CASE("spec files carry exactly the documented keys") {
    auto parsed = nlohmann::json::parse(serialize_spec(builtin("hexagonal")));
    std::vector<std::string> keys;
    for (auto it = parsed.begin(); it != parsed.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"dimension", "domain", "edges", "multigraph",
                                           "name", "vertices"});
    CHECK(parsed["vertices"][0].contains("local"));
    CHECK(parsed["vertices"][0].contains("colour"));
    CHECK(parsed["edges"][0].contains("u"));
    CHECK(parsed["edges"][0].contains("v"));
    CHECK(parsed["edges"][0].contains("offset"));
    // The aperiodic flag appears only on the tree.
    auto tree = nlohmann::json::parse(serialize_spec(builtin("tree3")));
    CHECK(tree.value("aperiodic", false));
    CHECK_FALSE(parsed.contains("aperiodic"));
    // Transforms append the maps section.
    auto fisher = nlohmann::json::parse(serialize_fisher(fisher_full(builtin("hexagonal"))));
    CHECK(fisher.contains("maps"));
    CHECK(fisher["maps"].contains("edge_map"));
    CHECK(fisher["maps"].contains("vertex_map"));
    CHECK(fisher["maps"].contains("triangle_edges"));
}

TEST_CASE("count series JSON round-trip keeps decimal-string counts") {
    auto ball = BallGraph::build(make("hexagonal"), 8);
    std::vector<int> starts = {ball.seeds().front()};
    CountSeries s = count_from_vertices(ball, starts, 6);
    std::string text = series_to_json(s);
    CHECK(text.find("\"90\"") != std::string::npos);
    CountSeries back = series_from_json(text);
    CHECK(back.counts == s.counts);
    CHECK(back.graph_id == s.graph_id);
    CHECK(back.start_mode == s.start_mode);
    CHECK(back.exact_to == s.exact_to);
}

TEST_CASE("CSV export shows one row per length") {
    auto ball = BallGraph::build(make("line"), 5);
    std::vector<int> starts = {ball.seeds().front()};
    CountSeries s = count_from_vertices(ball, starts, 3);
    CHECK(series_to_csv(s) == "n,count\n0,1\n1,2\n2,2\n3,2\n");
}

TEST_CASE("serializations are byte-stable across repeated calls") {
    LatticeSpec spec = builtin("square_octagon");
    CHECK(serialize_spec(spec) == serialize_spec(builtin("square_octagon")));
    auto ball = BallGraph::build(make("hexagonal"), 4);
    CHECK(ball_to_svg(ball) == ball_to_svg(ball));
    CHECK(ball_to_dot(ball) == ball_to_dot(ball));
}

TEST_CASE("DOT output labels vertices cell/local and dashes triangle sides") {
    FisherResult fr = fisher_full(builtin("hexagonal"));
    auto ball = BallGraph::build(std::make_shared<LatticeSpec>(fr.transformed), 2);
    std::string dot = ball_to_dot(ball);
    CHECK(dot.find("\"0,0/0\"") != std::string::npos);
    CHECK(dot.find("style=dashed") != std::string::npos);
    CHECK(dot.find("graph \"fisher(hexagonal)\"") != std::string::npos);
}

TEST_CASE("SVG carries the version banner and colour classes") {
    auto ball = BallGraph::build(make("hexagonal"), 3);
    std::string svg = ball_to_svg(ball);
    CHECK(svg.rfind("<!-- sawkit svg v1 -->", 0) == 0);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("fill=\"#000000\"") != std::string::npos);   // black class
    CHECK(svg.find("fill=\"#ffffff\"") != std::string::npos);   // white class
    // Parallel edges on loop3 curve instead of overlapping.
    auto loop = BallGraph::build(make("loop3"), 3);
    CHECK(ball_to_svg(loop).find("<path") != std::string::npos);
    // tree3 renders through the radial fallback.
    auto tree = BallGraph::build(make("tree3"), 3);
    CHECK(ball_to_svg(tree).find("<circle") != std::string::npos);
}

TEST_CASE("gasket SVG places two triangles after one round") {
    GasketGraph g = gasket_iterate(1);
    std::string svg = gasket_to_svg(g);
    CHECK(svg.rfind("<!-- sawkit svg v1 -->", 0) == 0);
    // 7 full edges drawn as lines, plus 4 stubs.
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 10);
}

TEST_CASE("convergence and series plots") {
    FixedPointTrace t = iterate_mu(Real(1) / 2, 40, Real("1e-12"));
    std::string svg = convergence_plot_svg(t);
    CHECK(svg.find("1/phi") != std::string::npos);

    auto ball = BallGraph::build(make("hexagonal"), 9);
    std::vector<int> starts = {ball.seeds().front()};
    CountSeries s = count_from_vertices(ball, starts, 8);
    CHECK(series_plot_svg(s).find("log10 counts vs n") != std::string::npos);
}

TEST_CASE("atomic_write leaves no temporary behind") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "sawkit-io-test";
    fs::create_directories(dir);
    fs::path target = dir / "out.json";
    atomic_write(target.string(), "{\"ok\": true}\n");
    std::ifstream in(target);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "{\"ok\": true}\n");
    int extras = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path() != target) ++extras;
    }
    CHECK(extras == 0);
    fs::remove_all(dir);
}

TEST_CASE("weighted and displacement serializers emit decimal strings") {
    auto ball = BallGraph::build(make("hexagonal"), 8);
    auto x = incident_edges(ball, domain_vertices(ball));
    WeightedCounts w = weighted_black_white(ball, x, 4);
    std::string wj = weighted_to_json(w);
    CHECK(wj.find("\"black\"") != std::string::npos);

    DisplacementSeries d = displacement_series(ball, x, 3);
    std::string dj = displacement_to_json(d);
    CHECK(dj.find("\"sum_sq\"") != std::string::npos);
    CHECK(displacement_to_csv(d).rfind("n,count,sum_sq,mean_sq\n", 0) == 0);
}

TEST_CASE("trace and estimate serializers") {
    FixedPointTrace t = iterate_mu(Real(1) / 2, 40, Real("1e-10"));
    CHECK(trace_to_json(t, 15).find("\"direction\": \"increasing\"") != std::string::npos);
    CHECK(trace_to_csv(t, 15).rfind("k,iterate,error,ratio\n", 0) == 0);

    auto ball = BallGraph::build(make("tree3"), 9);
    std::vector<int> starts = {ball.seeds().front()};
    MuEstimate m = estimate_mu(count_from_vertices(ball, starts, 8), true);
    std::string ej = estimate_to_json(m, 15);
    CHECK(ej.find("\"roots_are_upper_bounds\": true") != std::string::npos);
}
