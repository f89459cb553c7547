#ifndef RESROOT_TESTS_ORACLE_HELPERS_HPP
#define RESROOT_TESTS_ORACLE_HELPERS_HPP

// Independent oracles the suites compare library output against. Kept
// deliberately naive: closure by reflections from scratch, frozen count
// tables, no reuse of the construction code under test.

#include "resroot/root_system.hpp"

#include <set>
#include <string>
#include <vector>

namespace resroot::oracle {

inline std::string vec_key(const QVec& v) {
    std::string k;
    for (const Rat& x : v) {
        k += rat_str(x);
        k += '|';
    }
    return k;
}

// Reflection s_a(b) = b - 2 (a,b)/(a,a) a.
inline QVec reflect_by(const QVec& a, const QVec& b) {
    Rat c = Rat(2) * dot(a, b) / dot(a, a);
    c.canonicalize();
    return sub(b, scaled(a, c));
}

// Closes a seed set of vectors under reflection by every member. For a
// finite root system this reproduces the whole system from the simple
// roots, except that the doubled roots of BC sit in their own reflection
// orbit and must be seeded too (2 times the last simple root suffices).
inline std::vector<QVec> reflection_closure(std::vector<QVec> seed) {
    std::set<std::string> seen;
    std::vector<QVec> out;
    for (const QVec& v : seed) {
        if (seen.insert(vec_key(v)).second) out.push_back(v);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        // out grows while we iterate; index loop keeps that safe.
        for (std::size_t j = 0; j < out.size(); ++j) {
            QVec im = reflect_by(out[i], out[j]);
            if (seen.insert(vec_key(im)).second) out.push_back(im);
        }
    }
    return out;
}

// The seed the closure needs: simple roots, plus the doubled short simple
// root in the non-reduced family.
inline std::vector<QVec> closure_seed(const RootSystem& rs) {
    std::vector<QVec> seed = rs.base_vectors();
    if (rs.type.family == Family::BC)
        seed.push_back(scaled(rs.simple(rs.rank() - 1).v, Rat(2)));
    return seed;
}

// Classical cardinality of the full system, doubled roots included.
inline int expected_root_count(RootSystemType t) {
    int n = t.rank;
    switch (t.family) {
    case Family::A: return n * (n + 1);
    case Family::B: return 2 * n * n;
    case Family::C: return 2 * n * n;
    case Family::D: return 2 * n * (n - 1);
    case Family::BC: return 2 * n * (n + 1);
    case Family::G2: return 12;
    case Family::F4: return 48;
    case Family::E6: return 72;
    case Family::E7: return 126;
    case Family::E8: return 240;
    }
    return -1;
}

// Coarse class count: every {beta, 2 beta} pair of BC collapses.
inline int expected_class_count(RootSystemType t) {
    if (t.family == Family::BC) return 2 * t.rank * t.rank;
    return expected_root_count(t);
}

// Height of the highest root (Coxeter number minus one); for BC the
// doubled highest root tops out at 2 rank.
inline long expected_highest_height(RootSystemType t) {
    int n = t.rank;
    switch (t.family) {
    case Family::A: return n;
    case Family::B: return 2 * n - 1;
    case Family::C: return 2 * n - 1;
    case Family::D: return 2 * n - 3;
    case Family::BC: return 2 * n;
    case Family::G2: return 5;
    case Family::F4: return 11;
    case Family::E6: return 11;
    case Family::E7: return 17;
    case Family::E8: return 29;
    }
    return -1;
}

// Minimal resonant codimension, as stated per family.
inline int expected_critical_codimension(RootSystemType t) {
    int n = t.rank;
    switch (t.family) {
    case Family::A: return n;
    case Family::B: return 2 * n - 1;
    case Family::C: return 2 * n - 1;
    case Family::BC: return 2 * n - 1;
    case Family::D: return 2 * n - 2;
    case Family::G2: return 5;
    case Family::F4: return 15;
    case Family::E6: return 16;
    case Family::E7: return 27;
    case Family::E8: return 57;
    }
    return -1;
}

// Ranks 2..8 classical plus the five exceptional types: the grid the
// cardinality, pivot and averaging suites all run over.
inline std::vector<RootSystemType> standard_scope() {
    std::vector<RootSystemType> out;
    for (int n = 2; n <= 8; ++n) out.push_back({Family::A, n});
    for (int n = 2; n <= 8; ++n) out.push_back({Family::B, n});
    for (int n = 2; n <= 8; ++n) out.push_back({Family::C, n});
    for (int n = 2; n <= 8; ++n) out.push_back({Family::BC, n});
    for (int n = 4; n <= 8; ++n) out.push_back({Family::D, n});
    out.push_back({Family::G2, 2});
    out.push_back({Family::F4, 4});
    out.push_back({Family::E6, 6});
    out.push_back({Family::E7, 7});
    out.push_back({Family::E8, 8});
    return out;
}

} // namespace resroot::oracle

#endif
