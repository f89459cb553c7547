#ifndef RESROOT_RATIONAL_HPP
#define RESROOT_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace resroot {

using Rat = mpq_class;
using Int = mpz_class;

// "p" when the denominator is 1, "p/q" otherwise. Never a decimal.
inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline int sign_of(const Rat& q) { return sgn(q); }

// Parses "p" or "p/q" with optional leading sign. Throws on garbage or
// a zero denominator; the result is always canonicalized.
inline Rat parse_rat(const std::string& text) {
    if (text.empty())
        throw std::invalid_argument("empty rational literal");
    Rat q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + text);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

} // namespace resroot

#endif
