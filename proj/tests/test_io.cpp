#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dartflip/doublechain.hpp"
#include "dartflip/enumerate.hpp"
#include "dartflip/io.hpp"
#include "fixtures.hpp"

using namespace dartflip;
using namespace fixtures;

TEST_CASE("point set round-trips through JSON") {
    auto ps = dc11();
    std::string text = emit_point_set(*ps);
    PointSetFile f = parse_point_set(text);
    CHECK(f.ps->n() == ps->n());
    for (int i = 0; i < ps->n(); ++i) {
        CHECK(f.ps->at(i).x == ps->at(i).x);
        CHECK(f.ps->at(i).y == ps->at(i).y);
    }
    CHECK_FALSE(f.chains.has_value());
}

TEST_CASE("chains round-trip and are validated") {
    DoubleChain dc;
    dc.ps = dc11();
    dc.p1 = {0, 1, 2};
    dc.p2 = {3, 4, 5};
    std::string text = emit_point_set(*dc.ps, &dc);
    PointSetFile f = parse_point_set(text);
    REQUIRE(f.chains.has_value());
    CHECK(f.chains->p1 == dc.p1);
    CHECK(f.chains->p2 == dc.p2);
    CHECK(is_double_chain(*f.ps, f.chains->p1, f.chains->p2));

    // swapping the chains breaks the double-chain invariants
    std::swap(dc.p1, dc.p2);
    CHECK_THROWS_AS(parse_point_set(emit_point_set(*dc.ps, &dc)), ParseError);
}

TEST_CASE("malformed point-set documents raise ParseError") {
    CHECK_THROWS_AS(parse_point_set("not json"), ParseError);
    CHECK_THROWS_AS(parse_point_set("{}"), ParseError);
    CHECK_THROWS_AS(parse_point_set(R"({"points": [[0,0],[1]]})"), ParseError);
    CHECK_THROWS_AS(parse_point_set(R"({"points": [[0,0],[1,0.5],[0,1]]})"), ParseError);
    // collinear points fail PointSet validation
    CHECK_THROWS_AS(parse_point_set(R"({"points": [[0,0],[1,0],[2,0]]})"), ParseError);
    // chain index out of range
    CHECK_THROWS_AS(
        parse_point_set(R"({"points": [[0,0],[4,0],[2,4]], "chains": {"p1": [0,9], "p2": [1,2]}})"),
        ParseError);
}

TEST_CASE("k-DPT round-trips through JSON") {
    KDPT t = t4_1dpt(t4(), T4_A);
    std::string text = emit_kdpt(t);
    KDPT back = parse_kdpt(text);
    CHECK(canonical_key(back) == canonical_key(t));
    CHECK(dart_count(back) == 1);
}

TEST_CASE("k-DPT parsing validates the structure") {
    // a triangulation with a wrong k declaration
    KDPT t = initial_triangulation(t4());
    std::string text = emit_kdpt(t);
    CHECK_NOTHROW(parse_kdpt(text));
    auto pos = text.find("\"k\": 0");
    REQUIRE(pos != std::string::npos);
    std::string bad = text.substr(0, pos) + "\"k\": 1" + text.substr(pos + 6);
    CHECK_THROWS_AS(parse_kdpt(bad), std::invalid_argument);
    // missing edges
    CHECK_THROWS_AS(parse_kdpt(R"({"points": [[0,0],[4,0],[2,4]], "k": 0})"), ParseError);
    // dangling edge index
    CHECK_THROWS_AS(
        parse_kdpt(R"({"points": [[0,0],[4,0],[2,4]], "edges": [[0,1],[1,7],[0,2]], "k": 0})"),
        ParseError);
}

TEST_CASE("flip path serialization") {
    FlipPath p;
    p.start_key = "s";
    p.end_key = "e";
    p.flips.push_back({Edge(0, 1), Edge(2, 3)});
    std::string text = emit_flip_path(p);
    CHECK(text.find("\"start\"") != std::string::npos);
    CHECK(text.find("\"removed\"") != std::string::npos);
    CHECK(text.find("\"inserted\"") != std::string::npos);
}

TEST_CASE("graph exports are deterministic and consistent") {
    FlipGraph fg = build_flip_graph(dc11(), 1);
    std::string dot1 = graph_to_dot(fg);
    std::string dot2 = graph_to_dot(build_flip_graph(dc11(), 1));
    CHECK(dot1 == dot2);
    CHECK(dot1.find("graph flipgraph") != std::string::npos);
    for (const std::string& key : fg.keys) CHECK(dot1.find(key) != std::string::npos);

    std::string js = graph_to_json(fg);
    CHECK(js == graph_to_json(build_flip_graph(dc11(), 1)));
    // edge lines appear once per undirected edge
    std::size_t count = 0;
    for (std::size_t pos = 0; (pos = dot1.find(" -- ", pos)) != std::string::npos; ++pos) ++count;
    CHECK(static_cast<int>(count) == fg.meta.edge_count);
}

TEST_CASE("svg rendering marks darts and spines") {
    KDPT t = t4_1dpt(t4(), T4_A);
    std::string svg = render_svg(t);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polygon") != std::string::npos);        // shaded dart
    CHECK(svg.find("stroke-dasharray") != std::string::npos);  // dashed spine

    KDPT tri = initial_triangulation(t4());
    std::string plain = render_svg(tri);
    CHECK(plain.find("<polygon") == std::string::npos);
    CHECK(plain.find("stroke-dasharray") == std::string::npos);
}

TEST_CASE("random point sets are deterministic and in general position") {
    PointSet a = random_point_set(8, 42);
    PointSet b = random_point_set(8, 42);
    CHECK(a.n() == 8);
    for (int i = 0; i < 8; ++i) {
        CHECK(a.at(i).x == b.at(i).x);
        CHECK(a.at(i).y == b.at(i).y);
    }
    PointSet c = random_point_set(8, 43);
    bool same = true;
    for (int i = 0; i < 8; ++i) same = same && a.at(i).x == c.at(i).x && a.at(i).y == c.at(i).y;
    CHECK_FALSE(same);
    for (int i = 0; i < a.n(); ++i)
        for (int j = i + 1; j < a.n(); ++j)
            for (int l = j + 1; l < a.n(); ++l)
                CHECK(orient(a.at(i), a.at(j), a.at(l)) != Orientation::Collinear);
}

TEST_CASE("convex point sets have all points on the hull") {
    for (int n : {3, 5, 9}) {
        PointSet ps = convex_point_set(n);
        CHECK(ps.n() == n);
        CHECK(ps.h() == n);
    }
    CHECK_THROWS_AS(convex_point_set(2), std::invalid_argument);
}
