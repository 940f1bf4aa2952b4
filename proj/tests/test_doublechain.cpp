#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "dartflip/doublechain.hpp"
#include "dartflip/enumerate.hpp"
#include "dartflip/flipgraph.hpp"
#include "fixtures.hpp"

using namespace dartflip;
using namespace fixtures;

namespace {

DoubleChain dc11_chain() {
    DoubleChain dc;
    dc.ps = dc11();
    dc.p1 = {0, 1, 2};
    dc.p2 = {3, 4, 5};
    return dc;
}

}  // namespace

TEST_CASE("DC11 is a double chain") {
    DoubleChain dc = dc11_chain();
    CHECK(dc.a() == 1);
    CHECK(dc.b() == 1);
    CHECK(double_chain_violations(*dc.ps, dc.p1, dc.p2).empty());
    CHECK(is_double_chain(*dc.ps, dc.p1, dc.p2));
}

TEST_CASE("perturbed DC11 variants violate the invariants") {
    // middle upper point lifted above its chord: convexity/hull breaks
    auto high = PointSet::make({{0, 10}, {5, 30}, {10, 10}, {0, 0}, {5, 2}, {10, 0}});
    CHECK_FALSE(is_double_chain(high, {0, 1, 2}, {3, 4, 5}));

    // swapped chain labels: concavity flips the wrong way
    CHECK_FALSE(is_double_chain(*dc11(), {3, 4, 5}, {0, 1, 2}));

    // upper chain dips through a diagonal of the 4-gon
    auto deep = PointSet::make({{0, 10}, {5, 3}, {10, 10}, {0, 0}, {5, 2}, {10, 0}});
    auto bad = double_chain_violations(deep, {0, 1, 2}, {3, 4, 5});
    bool diagonal = false;
    for (const auto& v : bad) diagonal = diagonal || v.find("diagonal") != std::string::npos;
    CHECK(diagonal);

    // non-monotone chain order
    CHECK_FALSE(is_double_chain(*dc11(), {0, 2, 1}, {3, 4, 5}));
    // wrong partition
    CHECK_FALSE(is_double_chain(*dc11(), {0, 1}, {3, 4, 5}));
}

TEST_CASE("generate builds valid double chains") {
    for (auto [a, b] : {std::pair{0, 0}, {1, 1}, {2, 3}, {3, 2}, {4, 4}}) {
        DoubleChain dc = generate(a, b);
        CHECK(dc.a() == a);
        CHECK(dc.b() == b);
        CHECK(dc.ps->n() == a + b + 4);
        CHECK(dc.ps->h() == 4);
        CHECK(is_double_chain(*dc.ps, dc.p1, dc.p2));
    }
    CHECK_THROWS_AS(generate(-1, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate(400, 400), std::invalid_argument);
}

TEST_CASE("dart classification on DC11") {
    DoubleChain dc = dc11_chain();
    DartInfo aligned{0, 1, 3, 2};  // tip u0, tail u1
    CHECK(classify_dart_dc(dc, aligned) == DartClass::Aligned);
    DartInfo crossing{4, 1, 0, 2};  // tip v1, tail u1
    CHECK(classify_dart_dc(dc, crossing) == DartClass::Crossing);
}

TEST_CASE("every enumerated dart is aligned or crossing") {
    for (auto [a, b] : {std::pair{1, 1}, {2, 2}}) {
        DoubleChain dc = generate(a, b);
        for (int k = 1; k <= a + b; ++k) {
            for (const KDPT& t : all_kdpts(dc.ps, k).items) {
                Designation d = designation(dc, t);
                CHECK(d.k() == k);
                CHECK(d.k1 <= a);
                CHECK(d.k2 <= b);
                for (const Face& f : faces(t))
                    if (f.is_dart())
                        CHECK_NOTHROW(classify_dart_dc(dc, f.dart()));
            }
        }
    }
}

TEST_CASE("flips preserve the designation") {
    DoubleChain dc = generate(2, 1);
    for (int k = 1; k <= 3; ++k) {
        FlipGraph fg = build_flip_graph(dc.ps, k);
        for (std::size_t i = 0; i < fg.nodes.size(); ++i) {
            Designation di = designation(dc, fg.nodes[i]);
            for (int j : fg.adjacency[i])
                CHECK(designation(dc, fg.nodes[static_cast<std::size_t>(j)]) == di);
        }
    }
}

TEST_CASE("canonical k-DPTs are valid and correctly designated") {
    for (auto [a, b] : {std::pair{0, 0}, {1, 1}, {2, 2}, {2, 3}, {3, 1}}) {
        DoubleChain dc = generate(a, b);
        for (int k1 = 0; k1 <= a; ++k1) {
            for (int k2 = 0; k2 <= b; ++k2) {
                Designation d{k1, k2};
                KDPT t = canonical_kdpt(dc, d);
                CHECK(is_valid_kdpt(t, k1 + k2));
                CHECK(designation(dc, t) == d);
                // darts sit aligned in the leftmost slots
                std::set<int> tails;
                for (const Face& f : faces(t))
                    if (f.is_dart()) {
                        CHECK(classify_dart_dc(dc, f.dart()) == DartClass::Aligned);
                        tails.insert(f.dart().tail);
                    }
                std::set<int> want;
                for (int i = 1; i <= k1; ++i) want.insert(dc.p1[static_cast<std::size_t>(i)]);
                for (int j = 1; j <= k2; ++j) want.insert(dc.p2[static_cast<std::size_t>(j)]);
                CHECK(tails == want);
            }
        }
        CHECK_THROWS_AS(canonical_kdpt(dc, Designation{a + 1, 0}), std::invalid_argument);
    }
}

TEST_CASE("canonicalize reaches the canonical form on DC11") {
    DoubleChain dc = dc11_chain();
    int fallbacks = 0;
    for (int k = 0; k <= 2; ++k) {
        for (const KDPT& t : all_kdpts(dc.ps, k).items) {
            FlipPath path = canonicalize(dc, t);
            KDPT end = replay_path(t, path, k);
            CHECK(canonical_key(end) == canonical_key(canonical_kdpt(dc, designation(dc, t))));
            if (path.fallback) ++fallbacks;
        }
    }
    CHECK(fallbacks == 0);
}

TEST_CASE("canonicalize reaches the canonical form on asymmetric chains") {
    for (auto [a, b] : {std::pair{2, 1}, {1, 2}}) {
        DoubleChain dc = generate(a, b);
        int fallbacks = 0;
        for (int k = 0; k <= a + b; ++k) {
            for (const KDPT& t : all_kdpts(dc.ps, k).items) {
                FlipPath path = canonicalize(dc, t);
                KDPT end = replay_path(t, path, k);
                CHECK(canonical_key(end) ==
                      canonical_key(canonical_kdpt(dc, designation(dc, t))));
                if (path.fallback) ++fallbacks;
            }
        }
        CHECK(fallbacks == 0);
    }
}

TEST_CASE("component count formula") {
    CHECK(component_count_formula(1, 1, 1) == 2);
    CHECK(component_count_formula(2, 2, 2) == 3);
    CHECK(component_count_formula(3, 2, 0) == 1);
    CHECK(component_count_formula(3, 2, 5) == 1);
    CHECK(component_count_formula(4, 4, 3) == 4);
    CHECK_THROWS_AS(component_count_formula(1, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(component_count_formula(-1, 1, 0), std::invalid_argument);
}

TEST_CASE("components match the formula on small chains") {
    for (auto [a, b] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
        DoubleChain dc = generate(a, b);
        for (int k = 0; k <= a + b; ++k) {
            FlipGraph fg = build_flip_graph(dc.ps, k);
            CHECK(fg.meta.component_count == component_count_formula(a, b, k));
        }
    }
}
