#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "resroot/linalg.hpp"

using namespace resroot;

namespace {

QVec qv(std::initializer_list<const char*> xs) {
    QVec v;
    for (const char* x : xs) v.push_back(parse_rat(x));
    return v;
}

} // namespace

TEST_CASE("rational parsing and printing") {
    CHECK(rat_str(parse_rat("2/4")) == "1/2");
    CHECK(rat_str(parse_rat("-6/3")) == "-2");
    CHECK(rat_str(parse_rat("0")) == "0");
    CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);

    // gmpxx does not canonicalize the two-argument constructor; parse_rat
    // does, which is why the library always goes through it or calls
    // canonicalize() by hand.
    Rat raw(2, 4);
    raw.canonicalize();
    CHECK(raw == parse_rat("1/2"));
}

TEST_CASE("vector helpers") {
    QVec a = qv({"1", "2", "3"});
    QVec b = qv({"-1", "0", "1"});
    CHECK(dot(a, b) == Rat(2));
    CHECK(add(a, b) == qv({"0", "2", "4"}));
    CHECK(sub(a, b) == qv({"2", "2", "2"}));
    CHECK(scaled(a, parse_rat("1/2")) == qv({"1/2", "1", "3/2"}));
    CHECK(is_zero(qv({"0", "0"})));
    CHECK_FALSE(is_zero(a));
    CHECK(lex_cmp(a, b) > 0);
    CHECK(lex_cmp(a, a) == 0);
    CHECK(vec_str(qv({"1/2", "-3"})) == "1/2,-3");
    CHECK(parse_vec("1/2,-3") == qv({"1/2", "-3"}));
}

TEST_CASE("positive proportionality is a strict ray test") {
    QVec a = qv({"2", "-4", "0"});
    CHECK(positively_proportional(a, qv({"1", "-2", "0"})));
    CHECK(positively_proportional(a, qv({"3", "-6", "0"})));
    CHECK_FALSE(positively_proportional(a, qv({"-1", "2", "0"}))); // negative ray
    CHECK_FALSE(positively_proportional(a, qv({"2", "-4", "1"})));
    CHECK_FALSE(positively_proportional(a, qv({"0", "0", "0"})));
    CHECK_FALSE(positively_proportional(qv({"0", "0", "0"}), a));
}

TEST_CASE("primitive scaling lands on the integer generator of the ray") {
    CHECK(primitive_scale(qv({"1/2", "-3/2"})) == qv({"1", "-3"}));
    CHECK(primitive_scale(qv({"4", "6"})) == qv({"2", "3"}));
    CHECK(primitive_scale(qv({"-2", "0", "4"})) == qv({"-1", "0", "2"}));
    CHECK(primitive_scale(qv({"0", "0"})) == qv({"0", "0"}));
}

TEST_CASE("rank and span membership") {
    std::vector<QVec> rows = {qv({"1", "0", "0"}), qv({"0", "1", "0"}),
                              qv({"1", "1", "0"})};
    CHECK(rank_of(rows) == 2);
    CHECK(rank_of({qv({"0", "0"})}) == 0);
    CHECK(rank_of({qv({"1", "2"}), qv({"2", "5"})}) == 2);

    CHECK(span_contains(rows, qv({"5", "-7", "0"})));
    CHECK_FALSE(span_contains(rows, qv({"0", "0", "1"})));
}

TEST_CASE("coordinates in a basis invert the combination") {
    std::vector<QVec> basis = {qv({"1", "1", "0"}), qv({"0", "1", "1"})};
    QVec v = add(scaled(basis[0], parse_rat("2/3")), scaled(basis[1], parse_rat("-5")));
    auto c = coordinates_in_basis(basis, v);
    REQUIRE(c.has_value());
    CHECK((*c)[0] == parse_rat("2/3"));
    CHECK((*c)[1] == parse_rat("-5"));
    CHECK_FALSE(coordinates_in_basis(basis, qv({"1", "0", "0"})).has_value());
}

TEST_CASE("projection onto a span") {
    std::vector<QVec> basis = {qv({"1", "1", "0"})};
    QVec p = project_onto_span(basis, qv({"1", "0", "0"}));
    CHECK(p == qv({"1/2", "1/2", "0"}));
    // Idempotent, and the residual is orthogonal to the span.
    CHECK(project_onto_span(basis, p) == p);
    CHECK(dot(sub(qv({"1", "0", "0"}), p), basis[0]) == Rat(0));

    std::vector<QVec> plane = {qv({"1", "0", "1"}), qv({"0", "1", "0"})};
    QVec q = project_onto_span(plane, qv({"2", "3", "0"}));
    CHECK(dot(sub(qv({"2", "3", "0"}), q), plane[0]) == Rat(0));
    CHECK(dot(sub(qv({"2", "3", "0"}), q), plane[1]) == Rat(0));
}

TEST_CASE("nullspace vectors annihilate the rows") {
    std::vector<QVec> rows = {qv({"1", "1", "1"})};
    auto ns = nullspace(rows, 3);
    CHECK(ns.size() == 2);
    for (const QVec& v : ns) {
        CHECK_FALSE(is_zero(v));
        CHECK(dot(rows[0], v) == Rat(0));
    }

    CHECK(nullspace({qv({"1", "0"}), qv({"0", "1"})}, 2).empty());
    CHECK(nullspace({}, 2).size() == 2);
}

TEST_CASE("strict feasibility finds a witness or proves there is none") {
    std::vector<QVec> plane = {qv({"1", "0"}), qv({"0", "1"})};

    SUBCASE("compatible strict cone") {
        std::vector<Constraint> cs = {{qv({"1", "0"}), Rel::Pos},
                                      {qv({"0", "1"}), Rel::Pos},
                                      {qv({"1", "-1"}), Rel::Pos}};
        Feasibility f = strict_feasibility(cs, plane);
        REQUIRE(f.feasible);
        for (const Constraint& c : cs) CHECK(sgn(dot(c.f, f.witness)) > 0);
    }

    SUBCASE("contradictory pair") {
        std::vector<Constraint> cs = {{qv({"1", "0"}), Rel::Pos},
                                      {qv({"1", "0"}), Rel::Neg}};
        CHECK_FALSE(strict_feasibility(cs, plane).feasible);
    }

    SUBCASE("equality then strict") {
        std::vector<Constraint> cs = {{qv({"1", "1"}), Rel::Zero},
                                      {qv({"1", "0"}), Rel::Pos}};
        Feasibility f = strict_feasibility(cs, plane);
        REQUIRE(f.feasible);
        CHECK(dot(cs[0].f, f.witness) == Rat(0));
        CHECK(sgn(dot(cs[1].f, f.witness)) > 0);
    }

    SUBCASE("equalities can exclude the strict direction") {
        std::vector<Constraint> cs = {{qv({"1", "0"}), Rel::Zero},
                                      {qv({"0", "1"}), Rel::Zero},
                                      {qv({"1", "1"}), Rel::Pos}};
        CHECK_FALSE(strict_feasibility(cs, plane).feasible);
    }

    SUBCASE("restricted span changes the answer") {
        // On the diagonal line x = y, x > 0 and y < 0 cannot both hold.
        std::vector<Constraint> cs = {{qv({"1", "0"}), Rel::Pos},
                                      {qv({"0", "1"}), Rel::Neg}};
        CHECK_FALSE(strict_feasibility(cs, {qv({"1", "1"})}).feasible);
        CHECK(strict_feasibility(cs, {qv({"1", "-1"})}).feasible);
    }
}

TEST_CASE("strict feasibility scales past two variables") {
    // A transitive chain x1 > x2 > ... > x6 > 0 inside R^6, plus a few
    // redundant consequences; a witness must satisfy all of them.
    int n = 6;
    std::vector<QVec> basis;
    for (int i = 0; i < n; ++i) {
        QVec e(n, Rat(0));
        e[i] = 1;
        basis.push_back(e);
    }
    std::vector<Constraint> cs;
    for (int i = 0; i + 1 < n; ++i) {
        QVec f(n, Rat(0));
        f[i] = 1;
        f[i + 1] = -1;
        cs.push_back({f, Rel::Pos});
    }
    QVec last(n, Rat(0));
    last[n - 1] = 1;
    cs.push_back({last, Rel::Pos});
    QVec spread(n, Rat(0));
    spread[0] = 1;
    spread[n - 1] = -1;
    cs.push_back({spread, Rel::Pos});

    Feasibility f = strict_feasibility(cs, basis);
    REQUIRE(f.feasible);
    for (const Constraint& c : cs) CHECK(sgn(dot(c.f, f.witness)) > 0);
}
