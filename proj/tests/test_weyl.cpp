#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_helpers.hpp"
#include "resroot/weyl.hpp"

#include <algorithm>
#include <set>

using namespace resroot;

TEST_CASE("simple reflections negate their own root and permute the rest") {
    for (RootSystemType t : std::vector<RootSystemType>{
             {Family::A, 3}, {Family::B, 3}, {Family::BC, 2}, {Family::G2, 2}}) {
        RootSystem rs = build_root_system(t);
        for (int k = 0; k < rs.rank(); ++k) {
            CHECK(reflect(rs, k, rs.simple(k).v) == negated(rs.simple(k).v));
            std::set<int> images;
            for (const Root& r : rs.roots) {
                int im = rs.find_root(reflect(rs, k, r.v));
                REQUIRE(im >= 0); // closure under the reflection
                images.insert(im);
            }
            CHECK(static_cast<int>(images.size()) == rs.n_roots());
        }
    }
}

TEST_CASE("words compose left to right and invert cleanly") {
    RootSystem rs = build_root_system({Family::B, 3});
    std::vector<int> word = {0, 2, 1, 0, 2};
    QVec v = {Rat(3), parse_rat("-1/2"), Rat(5)};
    QVec image = apply_word(rs, word, v);
    CHECK(apply_inverse_word(rs, word, image) == v);

    // Left-to-right means the first letter acts first.
    QVec manual = v;
    for (int k : word) manual = reflect(rs, k, manual);
    CHECK(image == manual);
}

TEST_CASE("the matrix of a word reproduces its action") {
    RootSystem rs = build_root_system({Family::C, 3});
    WeylElement w = make_weyl(rs, {1, 0, 2, 1});
    for (const Root& r : rs.roots)
        CHECK(apply_matrix(w.matrix, r.v) == apply_word(rs, w.word, r.v));
    // Orthogonal: preserves the pairing.
    QVec a = {Rat(1), Rat(2), Rat(3)};
    QVec b = {Rat(-1), Rat(0), Rat(4)};
    CHECK(dot(apply_matrix(w.matrix, a), apply_matrix(w.matrix, b)) == dot(a, b));

    CHECK(identity_matrix(3) == make_weyl(rs, {}).matrix);
    CHECK(identity_matrix(3) == make_weyl(rs, {0, 0}).matrix);
}

TEST_CASE("orbit search finds an image satisfying the predicate") {
    RootSystem rs = build_root_system({Family::A, 3});
    // A functional inside the wall spanned by the non-distinguished simple
    // roots; the orbit leaves that span quickly.
    QVec lambda = rs.simple(1).v;
    auto off_wall = [&](const QVec& f) {
        return !span_contains(rs.nondistinguished_base_vectors(), f);
    };
    OrbitSearchResult res = weyl_orbit_search(rs, lambda, off_wall);
    CHECK(off_wall(res.image));
    CHECK(apply_word(rs, res.element.word, lambda) == res.image);

    // Already satisfying: identity element comes back.
    OrbitSearchResult triv = weyl_orbit_search(rs, rs.simple(0).v, off_wall);
    CHECK(triv.element.word.empty());
}

TEST_CASE("orbit search reports exhaustion instead of spinning") {
    RootSystem rs = build_root_system({Family::A, 2});
    auto never = [](const QVec&) { return false; };
    CHECK_THROWS_AS(weyl_orbit_search(rs, rs.simple(0).v, never, 50),
                    SearchExhausted);
}

TEST_CASE("full enumeration matches the classical group orders") {
    auto order = [](RootSystemType t) {
        RootSystem rs = build_root_system(t);
        return enumerate_weyl_permutations(rs).size();
    };
    CHECK(order({Family::A, 2}) == 6);    // S3
    CHECK(order({Family::A, 3}) == 24);   // S4
    CHECK(order({Family::B, 2}) == 8);
    CHECK(order({Family::BC, 2}) == 8);   // same group as B2
    CHECK(order({Family::B, 3}) == 48);
    CHECK(order({Family::G2, 2}) == 12);
    CHECK(order({Family::D, 4}) == 192);
}

TEST_CASE("enumerated permutations respect negation and addition") {
    RootSystem rs = build_root_system({Family::BC, 2});
    auto perms = enumerate_weyl_permutations(rs);
    std::set<std::vector<int>> distinct(perms.begin(), perms.end());
    CHECK(distinct.size() == perms.size());
    for (const auto& p : perms) {
        for (int i = 0; i < rs.n_roots(); ++i) {
            CHECK(p[rs.neg_of[i]] == rs.neg_of[p[i]]);
            for (int j = 0; j < rs.n_roots(); ++j) {
                int s = rs.sum_of[i][j];
                if (s >= 0) CHECK(p[s] == rs.sum_of[p[i]][p[j]]);
            }
        }
    }
}

TEST_CASE("enumeration is guarded against larger ranks") {
    RootSystem rs = build_root_system({Family::A, 5});
    CHECK_THROWS_AS(enumerate_weyl_permutations(rs), CapabilityError);
    CHECK_THROWS_AS(enumerate_weyl_permutations(rs, 4), CapabilityError);
}
