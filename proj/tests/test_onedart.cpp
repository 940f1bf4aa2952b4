#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "dartflip/enumerate.hpp"
#include "dartflip/flipgraph.hpp"
#include "dartflip/onedart.hpp"
#include "fixtures.hpp"

using namespace dartflip;
using namespace fixtures;

namespace {

DartInfo dart_of(const KDPT& t) {
    for (const Face& f : faces(t))
        if (f.is_dart()) return f.dart();
    REQUIRE(false);
    return {};
}

std::shared_ptr<const PointSet> tri6() {
    // triangle hull with three interior points
    return std::make_shared<PointSet>(
        PointSet::make({{0, 0}, {12, 0}, {6, 12}, {5, 3}, {7, 3}, {6, 5}}));
}

}  // namespace

TEST_CASE("perturbed incircle breaks cocircular ties consistently") {
    auto ps = std::make_shared<PointSet>(PointSet::make({{0, 0}, {2, 0}, {2, 2}, {0, 2}}));
    CHECK(incircle(ps->at(0), ps->at(1), ps->at(2), ps->at(3)) == 0);
    int s = perturbed_incircle(*ps, 0, 1, 2, 3);
    CHECK((s == 1 || s == -1));
    // both diagonals of the square flip to the same perturbed Delaunay state
    KDPT d1(ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 0), Edge(0, 2)});
    KDPT d2(ps, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 0), Edge(1, 3)});
    delaunay_flips(d1, {});
    delaunay_flips(d2, {});
    CHECK(canonical_key(d1) == canonical_key(d2));
}

TEST_CASE("delaunay flips converge from every CONVEX5 fan") {
    auto c5 = convex5();
    std::set<std::string> finals;
    for (int apex = 0; apex < 5; ++apex) {
        std::vector<Edge> edges = hull_edges(*c5);
        for (int v = 0; v < 5; ++v)
            if (v != apex && Edge(apex, v) != Edge(apex, (apex + 1) % 5) &&
                Edge(apex, v) != Edge(apex, (apex + 4) % 5))
                edges.emplace_back(apex, v);
        KDPT t(c5, edges);
        REQUIRE(is_valid_kdpt(t, 0));
        delaunay_flips(t, {});
        finals.insert(canonical_key(t));
    }
    CHECK(finals.size() == 1);
}

TEST_CASE("constrained flip path between CONVEX5 triangulations") {
    auto c5 = convex5();
    auto res = all_triangulations(c5);
    for (const KDPT& from : res.items) {
        for (const KDPT& to : res.items) {
            FlipPath path = constrained_flip_path(from, to, hull_edges(*c5));
            KDPT end = replay_path(from, path, 0);
            CHECK(canonical_key(end) == canonical_key(to));
        }
    }
}

TEST_CASE("constrained flip path keeps the constraint in place") {
    auto c5 = convex5();
    std::vector<Edge> fan0 = hull_edges(*c5);
    fan0.emplace_back(0, 2);
    fan0.emplace_back(0, 3);
    std::vector<Edge> other = hull_edges(*c5);
    other.emplace_back(0, 2);
    other.emplace_back(2, 4);
    KDPT from(c5, fan0), to(c5, other);
    std::vector<Edge> constrained = hull_edges(*c5);
    constrained.emplace_back(0, 2);
    FlipPath path = constrained_flip_path(from, to, constrained);
    KDPT cur = from;
    for (const Flip& f : path.flips) {
        CHECK(f.removed != Edge(0, 2));
        cur = apply_flip(cur, f);
        CHECK(cur.has_edge(Edge(0, 2)));
    }
    CHECK(canonical_key(cur) == canonical_key(to));

    std::vector<Edge> crossing = constrained;
    crossing.emplace_back(1, 3);
    CHECK_THROWS_AS(constrained_flip_path(from, to, crossing), std::invalid_argument);
}

TEST_CASE("complete triangulation extends a base edge set") {
    auto ps = t4();
    auto edges = complete_triangulation(*ps, hull_edges(*ps));
    KDPT t(ps, edges);
    CHECK(is_valid_kdpt(t, 0));
    auto with_spoke = complete_triangulation(*ps, {Edge(T4_p, T4_C)});
    CHECK(std::binary_search(with_spoke.begin(), with_spoke.end(), Edge(T4_p, T4_C)));
    CHECK(is_valid_kdpt(KDPT(ps, with_spoke), 0));
}

TEST_CASE("replay path rejects a wrong start state") {
    auto ps = t4();
    FlipPath path;
    path.start_key = "bogus";
    path.end_key = "bogus";
    CHECK_THROWS_AS(replay_path(t4_1dpt(ps, T4_C), path, 1), std::invalid_argument);
}

TEST_CASE("the T4 darts already sit in dart triangles") {
    auto ps = t4();
    for (int missing : {T4_A, T4_B, T4_C}) {
        KDPT t = t4_1dpt(ps, missing);
        CHECK(dart_in_dart_triangle(t));
        FlipPath path = dart_triangle_path(t);
        CHECK(path.length() == 0);
        CHECK(path.start_key == path.end_key);
    }
}

TEST_CASE("dart triangle path on every enumerated 1-DPT") {
    for (auto ps : {t4(), q5(), dc11(), tri6()}) {
        for (const KDPT& t : all_kdpts(ps, 1).items) {
            DartInfo before = dart_of(t);
            FlipPath path = dart_triangle_path(t);
            CHECK_FALSE(path.fallback);
            KDPT end = replay_path(t, path, 1);
            CHECK(dart_in_dart_triangle(end));
            DartInfo after = dart_of(end);
            CHECK(after.tip == before.tip);
            CHECK(after.tail == before.tail);
        }
    }
}

TEST_CASE("special face flip carries the dart across a diagonal") {
    auto ps = std::make_shared<PointSet>(
        PointSet::make({{0, 0}, {8, 0}, {8, 8}, {0, 8}, {4, 2}}));
    const int s = 0, t = 1, u = 2, v = 3, pd = 4;
    KDPT start(ps, {Edge(s, t), Edge(t, u), Edge(u, v), Edge(v, s), Edge(s, u),
                    Edge(pd, s), Edge(pd, u)});
    REQUIRE(is_valid_kdpt(start, 1));
    REQUIRE(dart_in_dart_triangle(start));

    FlipPath path = special_face_flip(start, {s, t, u, v}, Edge(s, u));
    CHECK(path.length() <= 3);
    KDPT end = replay_path(start, path, 1);
    CHECK(end.has_edge(Edge(t, v)));
    CHECK_FALSE(end.has_edge(Edge(s, u)));
    CHECK(dart_in_dart_triangle(end));
    DartInfo d = dart_of(end);
    CHECK(d.tail == pd);
    CHECK(std::set<int>{d.tip, d.wing1, d.wing2} == std::set<int>{s, t, v});

    // already-flipped quads are a no-op
    FlipPath idle = special_face_flip(end, {s, t, u, v}, Edge(s, u));
    CHECK(idle.length() == 0);
}

TEST_CASE("same tail path on T4 is a single rotation") {
    auto ps = t4();
    KDPT t1 = t4_1dpt(ps, T4_C);
    KDPT t2 = t4_1dpt(ps, T4_B);
    FlipPath path = same_tail_path(t1, t2);
    CHECK_FALSE(path.fallback);
    CHECK(path.length() == 1);
    CHECK(canonical_key(replay_path(t1, path, 1)) == canonical_key(t2));
}

TEST_CASE("same tail path over all pairs of small 1-DPTs") {
    for (auto ps : {q5(), tri6()}) {
        auto res = all_kdpts(ps, 1);
        std::map<int, std::vector<const KDPT*>> by_tail;
        for (const KDPT& t : res.items) by_tail[dart_of(t).tail].push_back(&t);
        for (const auto& [tail, group] : by_tail) {
            for (const KDPT* a : group) {
                for (const KDPT* b : group) {
                    FlipPath path = same_tail_path(*a, *b);
                    CHECK(canonical_key(replay_path(*a, path, 1)) == canonical_key(*b));
                }
            }
        }
    }
}

TEST_CASE("quintuple swap test on Q5") {
    auto ps = q5();
    CHECK(quintuple_swap_test(*ps, Q5_p, Q5_q, Q5_s, Q5_t, Q5_u));
    CHECK_THROWS_AS(quintuple_swap_test(*ps, Q5_p, Q5_p, Q5_s, Q5_t, Q5_u),
                    std::invalid_argument);
}

TEST_CASE("quintuples without a triangular empty hull fail") {
    auto c5 = convex5();
    CHECK_FALSE(quintuple_swap_test(*c5, 0, 1, 2, 3, 4));  // 5-point hull
    // extra point embedded in the candidate triangle
    auto ps = std::make_shared<PointSet>(
        PointSet::make({{0, 0}, {8, 0}, {4, 8}, {3, 3}, {5, 3}, {4, 5}}));
    CHECK_FALSE(quintuple_swap_test(*ps, 3, 4, 0, 1, 2));
}

TEST_CASE("Q5 admits exactly four tail-swap configurations") {
    auto sub = PointSet::make({{0, 0}, {8, 0}, {4, 8}, {3, 3}, {5, 3}});
    CHECK(tail_swap_configurations(sub) == 4);
    CHECK_THROWS_AS(tail_swap_configurations(*convex5()), std::invalid_argument);
}

TEST_CASE("tail graph shapes on the fixtures") {
    CHECK_THROWS_AS(tail_graph(*t4()), std::invalid_argument);

    TailGraph q = tail_graph(*q5());
    CHECK(q.nodes == std::vector<int>{Q5_p, Q5_q});
    CHECK(q.edges == std::vector<std::pair<int, int>>{{Q5_p, Q5_q}});

    TailGraph d = tail_graph(*dc11());
    CHECK(d.nodes == std::vector<int>{1, 4});
    CHECK(d.edges.empty());
}

TEST_CASE("predicted components match brute force on the fixtures") {
    using Parts = std::vector<std::vector<int>>;
    CHECK(predicted_components_1dpt(*t4()) == Parts{{T4_p}});
    CHECK(predicted_components_1dpt(*q5()) == Parts{{Q5_p, Q5_q}});
    CHECK(predicted_components_1dpt(*dc11()) == Parts{{1}, {4}});
    CHECK(predicted_components_1dpt(*tri6()) == Parts{{3, 4, 5}});

    for (auto ps : {t4(), q5(), dc11(), tri6()}) {
        FlipGraph fg = build_flip_graph(ps, 1);
        std::map<int, std::set<int>> tails_by_component;
        for (std::size_t i = 0; i < fg.nodes.size(); ++i)
            tails_by_component[fg.component[i]].insert(dart_of(fg.nodes[i]).tail);
        Parts brute;
        for (auto& [comp, tails] : tails_by_component)
            brute.emplace_back(tails.begin(), tails.end());
        std::sort(brute.begin(), brute.end());
        CHECK(predicted_components_1dpt(*ps) == brute);
    }
}
