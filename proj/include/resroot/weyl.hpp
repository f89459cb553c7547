#ifndef RESROOT_WEYL_HPP
#define RESROOT_WEYL_HPP

#include "resroot/root_system.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace resroot {

// A Weyl group element as a word in simple reflections plus the exact
// orthogonal matrix it composes to. Words list base positions (0-based)
// and are applied left to right: the first letter acts first.
struct WeylElement {
    std::vector<int> word;
    std::vector<QVec> matrix; // ambient_dim rows
};

// Reflection in the hyperplane of the simple root at base position k.
QVec reflect(const RootSystem& rs, int k, const QVec& v);

// Same operation under the name the functional-transport callers use.
inline QVec simple_reflection(const RootSystem& rs, int k, const QVec& f) {
    return reflect(rs, k, f);
}

QVec apply_word(const RootSystem& rs, const std::vector<int>& word, const QVec& v);
QVec apply_inverse_word(const RootSystem& rs, const std::vector<int>& word, const QVec& v);

std::vector<QVec> identity_matrix(int dim);
WeylElement make_weyl(const RootSystem& rs, std::vector<int> word);
QVec apply_matrix(const std::vector<QVec>& m, const QVec& v);

class SearchExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class CapabilityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct OrbitSearchResult {
    WeylElement element;
    QVec image;
};

// Breadth-first search over the orbit of lambda under simple reflections,
// returning the first element whose image satisfies the predicate. The cap
// bounds visited orbit points; exhausting it throws SearchExhausted, which
// for the span predicate on a nonzero functional indicates a caller bug.
OrbitSearchResult weyl_orbit_search(const RootSystem& rs, const QVec& lambda,
                                    const std::function<bool(const QVec&)>& predicate,
                                    std::size_t cap = 200000);

// Every group element as a permutation of root indices. Guarded: the group
// is only ever materialized for small ranks (|W(F4)| = 1152 is the largest
// that qualifies).
std::vector<std::vector<int>> enumerate_weyl_permutations(const RootSystem& rs,
                                                          int max_rank = 4);

} // namespace resroot

#endif
