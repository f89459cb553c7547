#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "resroot/dims.hpp"

using namespace resroot;

TEST_CASE("group specs parse and print back") {
    GroupSpec g = parse_group_spec("A3");
    CHECK(g.factors.size() == 1);
    CHECK(g.factors[0].type.family == Family::A);
    CHECK(g.factors[0].type.rank == 3);
    CHECK_FALSE(g.factors[0].compact);

    g = parse_group_spec(" A3 , A1* ");
    CHECK(g.factors.size() == 2);
    CHECK(g.factors[1].compact);
    CHECK(group_spec_str(g) == "A3,A1*");

    // Fixed-rank families may leave the rank implicit.
    CHECK(group_spec_str(parse_group_spec("E8*,G2,BC2")) == "E8*,G2,BC2");
    CHECK(parse_group_spec("F4").factors[0].type.rank == 4);

    CHECK_THROWS_AS(parse_group_spec(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_group_spec("A3,,B2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group_spec("A"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group_spec("Q3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group_spec("A3x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group_spec("D3"), std::invalid_argument); // bad rank
}

TEST_CASE("critical codimension of a product is the minimum over ideals") {
    CHECK(r_of(parse_group_spec("A3")) == 3);
    CHECK(r_of(parse_group_spec("A3,A1")) == 1);
    CHECK(r_of(parse_group_spec("A3,A5*")) == 3); // compact ideals do not count
    CHECK(r_of(parse_group_spec("A1")) == 1);
    CHECK(r_of(parse_group_spec("E8,G2")) == 5);
    CHECK_THROWS_AS(r_of(parse_group_spec("A3*,G2*")), UndefinedQuantityError);
}

TEST_CASE("minimal parabolic codimension of split forms") {
    CHECK(v_of_split({Family::A, 3}) == 3);
    CHECK(v_of_split({Family::A, 5}) == 5);
    CHECK(v_of_split({Family::C, 2}) == 3);
    CHECK(v_of_split({Family::C, 4}) == 7);
    CHECK(v_of_split({Family::D, 4}) == 6);
    CHECK(v_of_split({Family::G2, 2}) == 5);
    CHECK_THROWS_AS(v_of_split({Family::BC, 2}), std::invalid_argument);
}

TEST_CASE("triangular-number bound") {
    CHECK(d_prime_of(1) == 1);
    CHECK(d_prime_of(2) == 2);
    CHECK(d_prime_of(3) == 2);
    CHECK(d_prime_of(4) == 3);
    CHECK(d_prime_of(6) == 3);
    CHECK(d_prime_of(7) == 4);
    CHECK(d_prime_of(10) == 4);
    CHECK(d_prime_of(11) == 5);
    CHECK_THROWS_AS(d_prime_of(0), std::invalid_argument);
    // Minimality on a longer stretch: k(k-1)/2 < d <= k(k+1)/2.
    for (long d = 1; d <= 300; ++d) {
        long k = d_prime_of(d);
        CHECK(k * (k + 1) / 2 >= d);
        CHECK((k - 1) * k / 2 < d);
    }
}

TEST_CASE("known family labels") {
    CHECK(parse_known_family("SL") == KnownFamily::SLnR);
    CHECK(parse_known_family("Sp") == KnownFamily::Sp2nR);
    CHECK(parse_known_family("SOnn") == KnownFamily::SOnn);
    CHECK(parse_known_family("SOnn1") == KnownFamily::SOnn1);
    for (KnownFamily f : {KnownFamily::SLnR, KnownFamily::Sp2nR, KnownFamily::SOnn,
                          KnownFamily::SOnn1})
        CHECK(parse_known_family(known_family_name(f)) == f);
    CHECK_THROWS_AS(parse_known_family("SU"), std::invalid_argument);
}

TEST_CASE("dimension tables match the stated formulas") {
    for (int n = 3; n <= 8; ++n) {
        DimensionReport rep = known_dims(KnownFamily::SLnR, n);
        CHECK(rep.r == n - 1);
        REQUIRE(rep.v.has_value());
        CHECK(*rep.v == n - 1);
        REQUIRE(rep.n.has_value());
        CHECK(*rep.n == n);
        CHECK(rep.r_source == "computed");
        CHECK(rep.v_source == "table");
    }
    for (int n = 2; n <= 8; ++n) {
        DimensionReport rep = known_dims(KnownFamily::Sp2nR, n);
        CHECK(rep.r == 2 * n - 1);
        CHECK(*rep.v == 2 * n - 1);
        CHECK(*rep.n == 2 * n);
    }
    for (int n = 4; n <= 8; ++n) {
        DimensionReport rep = known_dims(KnownFamily::SOnn, n);
        CHECK(rep.r == 2 * n - 2);
        CHECK(*rep.v == 2 * n - 2);
        CHECK(*rep.n == 2 * n);
        CHECK(*rep.d == 2 * n - 1);
        CHECK(*rep.d_prime == 2 * n - 1);
    }
    for (int n = 3; n <= 8; ++n) {
        DimensionReport rep = known_dims(KnownFamily::SOnn1, n);
        CHECK(rep.r == 2 * n - 1);
        CHECK(*rep.v == 2 * n - 1);
        CHECK(*rep.n == 2 * n + 1);
        CHECK(*rep.d == 2 * n);
        CHECK_FALSE(rep.d_prime.has_value());
    }
}

TEST_CASE("tables reject parameters below their starting row") {
    CHECK_THROWS_AS(known_dims(KnownFamily::SLnR, 2), OutOfTableError);
    CHECK_THROWS_AS(known_dims(KnownFamily::Sp2nR, 1), OutOfTableError);
    CHECK_THROWS_AS(known_dims(KnownFamily::SOnn, 3), OutOfTableError);
    CHECK_THROWS_AS(known_dims(KnownFamily::SOnn1, 2), OutOfTableError);
}

TEST_CASE("hypothesis clauses") {
    HypothesisVerdict v = theorem_hypothesis(parse_group_spec("A3"), 2, false);
    CHECK(v.clause == 1);
    CHECK(v.r == 3);
    CHECK_FALSE(v.rank_one_factor);

    CHECK(theorem_hypothesis(parse_group_spec("A3"), 3, true).clause == 2);
    CHECK(theorem_hypothesis(parse_group_spec("A3"), 3, false).clause == 0);
    CHECK(theorem_hypothesis(parse_group_spec("A3"), 4, true).clause == 0);
    CHECK(theorem_hypothesis(parse_group_spec("C2"), 3, true).clause == 2);
    CHECK(theorem_hypothesis(parse_group_spec("A3"), 0, false).clause == 1);

    v = theorem_hypothesis(parse_group_spec("A1,A2"), 0, false);
    CHECK(v.clause == 1);
    CHECK(v.r == 1);
    CHECK(v.rank_one_factor);
    // Compact rank-1 ideals do not raise the flag.
    CHECK_FALSE(theorem_hypothesis(parse_group_spec("A1*,A2"), 1, false).rank_one_factor);

    CHECK_THROWS_AS(theorem_hypothesis(parse_group_spec("A3"), -1, false),
                    std::invalid_argument);
}

TEST_CASE("per-factor averaging over a product") {
    GroupSpec spec = parse_group_spec("A2,B2*,C2");
    RootSystem a2 = build_root_system({Family::A, 2});
    RootSystem c2 = build_root_system({Family::C, 2});
    std::vector<QVec> lambdas = {random_lambda(a2, 3, 0, 0), {},
                                 random_lambda(c2, 3, 2, 0)};
    std::vector<FactorRun> runs = run_averaging_product(spec, lambdas);
    REQUIRE(runs.size() == 3);
    CHECK_FALSE(runs[0].skipped_compact);
    CHECK(runs[1].skipped_compact);
    CHECK_FALSE(runs[2].skipped_compact);
    CHECK(runs[0].trace.steps.size() == 8);
    CHECK(runs[2].trace.steps.size() == 8);
    CHECK(static_cast<int>(runs[2].trace.final_state.classes.size()) == c2.n_classes());

    CHECK_THROWS_AS(run_averaging_product(spec, {lambdas[0]}), std::invalid_argument);
    // A non-compact rank-1 ideal cannot run the pipeline at all.
    RootSystem a1 = build_root_system({Family::A, 1});
    CHECK_THROWS_AS(
        run_averaging_product(parse_group_spec("A1"), {random_lambda(a1, 1, 0, 0)}),
        CapabilityError);
}
