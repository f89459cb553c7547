#ifndef RESROOT_ROOT_SYSTEM_HPP
#define RESROOT_ROOT_SYSTEM_HPP

#include "resroot/linalg.hpp"
#include "resroot/vec.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace resroot {

// Irreducible restricted root systems, realized exactly in rational
// coordinates. The BC family is the only non-reduced one: there a short
// root and its double both occur, and they are merged into one coarse
// class for codimension counting.

enum class Family { A, B, C, D, BC, E6, E7, E8, F4, G2 };

std::string family_name(Family f);
// Parses "A".."G2" family labels; throws std::invalid_argument on others.
Family parse_family(const std::string& s);

struct RootSystemType {
    Family family;
    int rank;
};

// Throws std::invalid_argument with the family's legal rank range.
void validate_type(RootSystemType t);

struct Root {
    QVec v;               // ambient coordinates
    std::vector<long> pi; // integer coefficients over the stored base
    long height;          // sum of the pi coefficients
};

// One positive-proportionality class: a single root index, or in BC the
// pair {beta, 2 beta}.
struct CoarseClass {
    std::vector<int> roots; // root indices, shortest member first
};

class RootSystem {
  public:
    RootSystemType type;
    int ambient_dim = 0;

    // Roots in canonical order: ascending height, then lexicographic pi
    // coefficients. Negatives come first, positives second.
    std::vector<Root> roots;

    // Indices of the simple roots, distinguished node first (see
    // build_root_system for how that node is picked), remaining nodes in
    // Bourbaki order.
    std::vector<int> base;

    std::vector<int> neg_of;                  // index of -root
    std::vector<std::vector<int32_t>> sum_of; // [i][j] = index of v_i + v_j, or -1
    std::vector<int> class_of;                // root index -> coarse class id
    std::vector<CoarseClass> classes;

    int highest = -1;        // unique root of maximal height
    int second_highest = -1; // unique root of height(highest) - 1, or -1
    int distinguished_bourbaki = -1; // which Bourbaki node became base[0]

    int rank() const { return static_cast<int>(base.size()); }
    int n_roots() const { return static_cast<int>(roots.size()); }
    int n_classes() const { return static_cast<int>(classes.size()); }
    bool is_positive(int i) const { return roots[i].height > 0; }

    const Root& simple(int k) const { return roots[base[k]]; } // k in 0..rank-1

    // Root lookup by ambient vector; -1 when absent.
    int find_root(const QVec& v) const;
    // Root lookup by pi coefficient vector; -1 when absent.
    int find_root_pi(const std::vector<long>& pi) const;

    std::vector<QVec> base_vectors() const;
    // Simple roots excluding base[0]; the span they generate is the wall
    // the averaging machinery moves exponents away from.
    std::vector<QVec> nondistinguished_base_vectors() const;

    // Orthogonal projection onto span(base). Functionals are canonicalized
    // through this so that ambient inputs act on the Cartan subspace only.
    QVec canonicalize_functional(const QVec& ambient) const;

    // Lookup table keyed on doubled integer coordinates; populated by the
    // builder, read through find_root.
    std::unordered_map<std::string, int> index_by_key;
};

RootSystem build_root_system(RootSystemType t);

// Unique maximal root in the height order.
const Root& highest_root(const RootSystem& rs);

// Unique root one step below the highest. Type A has two candidates and
// throws; callers that need this root never ask for it there.
class AmbiguityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
const Root& second_highest_root(const RootSystem& rs);

// Addition closure of a set of root indices, using the precomputed sum
// table. Input and output are sorted index lists.
std::vector<int> closure_roots(const RootSystem& rs, std::vector<int> seed);

// The coarse classes meeting any of the given roots.
std::vector<int> classes_of_roots(const RootSystem& rs, const std::vector<int>& roots);
// All root indices belonging to the given classes.
std::vector<int> roots_of_classes(const RootSystem& rs, const std::vector<int>& class_ids);

} // namespace resroot

#endif
