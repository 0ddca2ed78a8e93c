#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "icf/curve_io.hpp"
#include "icf/presets.hpp"
#include "icf/run_artifacts.hpp"
#include "icf/svg.hpp"

using icf::CurveState;

TEST_CASE("curve files round-trip bit-exactly") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    CurveState c;
    c.points.resize(64);
    for (auto& p : c.points) p = {coord(rng), coord(rng)};

    auto via_json = icf::curve_from_json(icf::curve_to_json(c));
    auto via_csv = icf::curve_from_csv(icf::curve_to_csv(c));
    REQUIRE(via_json.n() == c.n());
    REQUIRE(via_csv.n() == c.n());
    for (int j = 0; j < c.n(); ++j) {
        CHECK(via_json.points[j].x == c.points[j].x);
        CHECK(via_json.points[j].y == c.points[j].y);
        CHECK(via_csv.points[j].x == c.points[j].x);
        CHECK(via_csv.points[j].y == c.points[j].y);
    }
}

TEST_CASE("malformed curve files are rejected") {
    CHECK_THROWS_AS((void)icf::curve_from_json("{]"), icf::BadParams);
    CHECK_THROWS_AS((void)icf::curve_from_json("{\"points\": [[1, 2, 3]]}"),
                    icf::BadParams);
    CHECK_THROWS_AS((void)icf::curve_from_json("{\"n\": 7, \"points\": [[1, 2]]}"),
                    icf::BadParams);
    CHECK_THROWS_AS((void)icf::curve_from_csv("a;b\n1;2\n"), icf::BadParams);
    CHECK_THROWS_AS((void)icf::curve_from_csv("x,y\n1\n"), icf::BadParams);
}

TEST_CASE("diagnostics CSV round-trips and pins its header") {
    std::vector<icf::DiagnosticsRecord> records(3);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> val(1e-7, 10.0);
    for (auto& r : records)
        r = {val(rng), val(rng), val(rng), val(rng), val(rng),
             val(rng), val(rng), val(rng), val(rng)};
    const auto csv = icf::diagnostics_to_csv(records);
    CHECK(csv.rfind("t,L,E,L3E,K_l2sq,k_sup,Q_blowup,circle_residual,min_speed\n",
                    0) == 0);
    auto back = icf::diagnostics_from_csv(csv);
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(back[i].t == records[i].t);
        CHECK(back[i].k_l2sq == records[i].k_l2sq);
        CHECK(back[i].min_speed == records[i].min_speed);
    }
    CHECK_THROWS_AS((void)icf::diagnostics_from_csv("time,L\n1,2\n"), icf::BadParams);
}

TEST_CASE("flow config JSON: round-trip, defaults, unknown keys, bad values") {
    icf::FlowConfig c;
    c.dt_initial = 3e-8;
    c.t_end = 0.25;
    c.scheme = icf::Scheme::explicit_rk4;
    c.resample_every = 7;
    auto back = icf::flow_config_from_json(icf::flow_config_to_json(c));
    CHECK(back.dt_initial == c.dt_initial);
    CHECK(back.t_end == c.t_end);
    CHECK(back.scheme == icf::Scheme::explicit_rk4);
    CHECK(back.resample_every == 7);

    auto partial = icf::flow_config_from_json(
        "{\"t_end\": 2.5, \"future_extension_knob\": true}");
    CHECK(partial.t_end == 2.5);
    CHECK(partial.dt_initial == icf::FlowConfig{}.dt_initial);

    CHECK_THROWS_AS((void)icf::flow_config_from_json("{\"scheme\": \"leapfrog\"}"),
                    icf::BadParams);
    CHECK_THROWS_AS((void)icf::flow_config_from_json("{\"dt_min\": -1}"),
                    icf::BadParams);
    CHECK_THROWS_AS((void)icf::flow_config_from_json("not json"), icf::BadParams);
}

TEST_CASE("manifest JSON is deterministic and lists outputs with checksums") {
    icf::RunManifest m;
    m.config_json = "{\"t_end\": 1.0}";
    m.termination_reason = "converged";
    m.start_walltime_unix = 1700000000;
    m.end_walltime_unix = 1700000004;
    m.outputs.push_back({"diagnostics.csv", 123, 0xDEADBEEF});
    const auto a = icf::manifest_to_json(m);
    const auto b = icf::manifest_to_json(m);
    CHECK(a == b);
    CHECK(a.find("deadbeef") != std::string::npos);
    CHECK(a.find("\"version\": \"1.0.0\"") != std::string::npos);
    CHECK(a.find("converged") != std::string::npos);
}

TEST_CASE("svg frames") {
    SUBCASE("circle: single closed path, unit aspect viewBox") {
        auto svg = icf::emit_svg_frame(icf::preset_curve("circle", {}, 128));
        CHECK(svg.find("<path") != std::string::npos);
        CHECK(svg.find(" Z\"") != std::string::npos);
        const auto vb = svg.find("viewBox=\"");
        REQUIRE(vb != std::string::npos);
        std::istringstream nums(svg.substr(vb + 9));
        double x0, y0, w, h;
        nums >> x0 >> y0 >> w >> h;
        CHECK(std::fabs(w - h) < 1e-9);           // aspect ratio 1
        CHECK(std::fabs(w - 2.4) < 1e-9);         // diameter 2 plus 10% padding
    }
    SUBCASE("self-intersecting lemniscate renders") {
        auto svg = icf::emit_svg_frame(icf::preset_curve("lemniscate", {}, 256));
        CHECK(svg.find("<path") != std::string::npos);
    }
    SUBCASE("time metadata and styling options") {
        icf::SvgStyle style;
        style.time = 0.125;
        style.show_normals = true;
        auto svg = icf::emit_svg_frame(icf::preset_curve("ellipse", {}, 64), style);
        CHECK(svg.find("data-time=\"0.125\"") != std::string::npos);
        CHECK(svg.find("<line") != std::string::npos);

        icf::SvgStyle cmap;
        cmap.color_by_curvature = true;
        auto colored = icf::emit_svg_frame(icf::preset_curve("ellipse", {}, 64), cmap);
        CHECK(std::count(colored.begin(), colored.end(), '\n') > 64);
        CHECK(colored.find("rgb(") != std::string::npos);
    }
}
