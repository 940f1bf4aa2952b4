#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dartflip/enumerate.hpp"
#include "fixtures.hpp"

using namespace dartflip;
using namespace fixtures;

TEST_CASE("initial triangulation validates") {
    CHECK(is_valid_kdpt(initial_triangulation(t4()), 0));
    CHECK(is_valid_kdpt(initial_triangulation(convex5()), 0));
    KDPT dc = initial_triangulation(dc11());
    CHECK(is_valid_kdpt(dc, 0));
    CHECK(dc.edges().size() == 11);  // 3*6 - 4 - 3
}

TEST_CASE("T4 has a unique triangulation") {
    auto res = all_triangulations(t4());
    REQUIRE(res.count() == 1);
    auto ps = t4();
    std::vector<Edge> full = hull_edges(*ps);
    for (int v : {T4_A, T4_B, T4_C}) full.emplace_back(T4_p, v);
    CHECK(res.keys()[0] == canonical_key(KDPT(ps, full)));
}

TEST_CASE("CONVEX5 has Catalan-many triangulations") {
    CHECK(all_triangulations(convex5()).count() == 5);
}

TEST_CASE("enumeration cap") {
    CHECK_THROWS_AS(all_triangulations(dc11(), 5), CapExceeded);
    CHECK_THROWS_AS(all_kdpts(dc11(), 1, 5), CapExceeded);
    CHECK_THROWS_AS(all_kdpts(dc11(), 7), std::invalid_argument);
}

TEST_CASE("1-DPTs of T4") {
    auto res = all_kdpts(t4(), 1);
    REQUIRE(res.count() == 3);
    auto ps = t4();
    auto key_list = res.keys();
    std::set<std::string> keys(key_list.begin(), key_list.end());
    for (int missing : {T4_A, T4_B, T4_C})
        CHECK(keys.count(canonical_key(t4_1dpt(ps, missing))) == 1);
    CHECK(res.by_tail == std::map<int, int>{{T4_p, 3}});
}

TEST_CASE("CONVEX5 admits no darts") {
    CHECK_THROWS_AS(all_kdpts(convex5(), 1), std::invalid_argument);  // k > n-h
}

TEST_CASE("k=0 enumeration equals triangulation enumeration") {
    for (auto ps : {t4(), convex5(), dc11(), q5()}) {
        CHECK(all_kdpts(ps, 0).keys() == all_triangulations(ps).keys());
    }
}

TEST_CASE("every enumerated k-DPT validates and round-trips through spines") {
    for (auto ps : {t4(), q5(), dc11()}) {
        for (int k = 0; k <= ps->n() - ps->h(); ++k) {
            auto res = all_kdpts(ps, k);
            std::set<std::string> keys;
            for (const KDPT& t : res.items) {
                CHECK(is_valid_kdpt(t, k));
                CHECK(keys.insert(canonical_key(t)).second);
                SpineSplit s = add_spines(t);
                CHECK(is_valid_kdpt(s.triangulation, 0));
                CHECK(canonical_key(remove_spines(s.triangulation, s.spines)) ==
                      canonical_key(t));
            }
        }
    }
}

TEST_CASE("every interior point appears as a 1-DPT tail") {
    for (auto ps : {t4(), q5(), dc11()}) {
        auto res = all_kdpts(ps, 1);
        std::set<int> tails;
        for (const auto& [tail, cnt] : res.by_tail) {
            CHECK(cnt > 0);
            CHECK_FALSE(ps->is_hull_vertex(tail));
            tails.insert(tail);
        }
        auto interior = ps->interior_indices();
        CHECK(tails == std::set<int>(interior.begin(), interior.end()));
    }
}

TEST_CASE("total k-DPT count equals (triangulation, spine set) pair count") {
    // Sigma_k |k-DPTs| counts each (T, S) pair exactly once by the spine
    // bijection; recount pairs independently through add_spines.
    for (auto ps : {t4(), q5(), dc11()}) {
        int total = 0;
        std::map<std::string, int> per_triangulation;
        for (int k = 0; k <= ps->n() - ps->h(); ++k) {
            for (const KDPT& t : all_kdpts(ps, k).items) {
                ++total;
                ++per_triangulation[canonical_key(add_spines(t).triangulation)];
            }
        }
        int tri_count = all_triangulations(ps).count();
        CHECK(static_cast<int>(per_triangulation.size()) == tri_count);
        int pair_total = 0;
        for (const auto& [key, cnt] : per_triangulation) pair_total += cnt;
        CHECK(pair_total == total);
    }
}
