#ifndef RESROOT_VEC_HPP
#define RESROOT_VEC_HPP

#include "resroot/rational.hpp"

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace resroot {

// Dense exact-rational vector. Roots, functionals and Cartan elements all
// live in the same fixed ambient coordinate space of a root system.
using QVec = std::vector<Rat>;

inline Rat dot(const QVec& a, const QVec& b) {
    Rat acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc;
}

inline QVec add(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

inline QVec sub(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

inline QVec scaled(const QVec& a, const Rat& c) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] * c;
    return r;
}

inline QVec negated(const QVec& a) { return scaled(a, Rat(-1)); }

inline bool is_zero(const QVec& a) {
    for (const Rat& x : a)
        if (x != 0)
            return false;
    return true;
}

// True when b is a positive multiple of a (both nonzero).
inline bool positively_proportional(const QVec& a, const QVec& b) {
    if (is_zero(a) || is_zero(b))
        return false;
    // Cross-ratio test: a[i] * b[j] == a[j] * b[i] for all i, j, with
    // matching signs. Comparing against the first nonzero coordinate
    // suffices.
    std::size_t k = 0;
    while (a[k] == 0)
        ++k;
    if (sgn(b[k]) != sgn(a[k]) || b[k] == 0)
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] * b[k] != b[i] * a[k])
            return false;
    return true;
}

inline int lex_cmp(const QVec& a, const QVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0)
            return c;
    }
    return 0;
}

// Scales a nonzero rational vector to the primitive integer vector on the
// same ray (gcd of entries 1, direction preserved).
inline QVec primitive_scale(const QVec& a) {
    Int l = 1;
    for (const Rat& x : a)
        l = lcm(l, x.get_den());
    Int g = 0;
    for (const Rat& x : a) {
        Rat y = x * Rat(l);
        g = gcd(g, y.get_num());
    }
    if (g == 0)
        return a;
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] * Rat(l) / Rat(g);
        r[i].canonicalize();
    }
    return r;
}

inline std::string vec_str(const QVec& a, const char* sep = ",") {
    std::ostringstream os;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i)
            os << sep;
        os << rat_str(a[i]);
    }
    return os.str();
}

inline QVec parse_vec(const std::string& text) {
    QVec out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ','))
        out.push_back(parse_rat(item));
    return out;
}

} // namespace resroot

#endif
