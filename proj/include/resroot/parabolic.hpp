#ifndef RESROOT_PARABOLIC_HPP
#define RESROOT_PARABOLIC_HPP

#include "resroot/root_system.hpp"
#include "resroot/weyl.hpp"

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace resroot {

// Combinatorial model of a Lie subalgebra containing the Cartan part and
// saturated by coarse root spaces: just the set of coarse class ids. The
// Cartan part is implicit. Partial inclusion of a class cannot be
// expressed, which is exactly the saturation the BC family needs.
struct SaturatedSubalgebra {
    std::set<int> classes;
};

// Standard parabolic built from a subset of the base: all positive root
// spaces plus the negative ones spanned by the excluded simple roots.
struct ParabolicSubalgebra {
    std::vector<int> excluded; // base positions (0-based)
    std::set<int> root_set;    // root indices
};

ParabolicSubalgebra standard_parabolic(const RootSystem& rs,
                                       const std::vector<int>& excluded);

SaturatedSubalgebra saturated_from_roots(const RootSystem& rs,
                                         const std::vector<int>& root_ids);

bool is_addition_closed(const RootSystem& rs, const SaturatedSubalgebra& h);

// Addition closure at class granularity: a class joins as a whole as soon
// as any member root is a sum of included roots. Distinct from the
// root-level closure_roots, which can strand half of a short-long pair.
SaturatedSubalgebra close_classes(const RootSystem& rs, const std::set<int>& seed);

// Number of coarse classes whose root space is not contained in the
// subalgebra.
int resonant_codimension(const RootSystem& rs, const SaturatedSubalgebra& h);
int resonant_codimension(const RootSystem& rs, const ParabolicSubalgebra& q);

// r(g): the minimum resonant codimension over the maximal standard
// parabolics. Monotonicity makes minimizing over those sufficient.
int minimal_resonant_codimension(const RootSystem& rs);

// Per-vertex table: (j, resonant codimension of the maximal parabolic
// dropping the j-th simple root), j 1-based. The minimum sits at j = 1
// under the stored base orientation.
std::vector<std::pair<int, int>> maximal_parabolic_table(const RootSystem& rs);

enum class ParabolicityRoute {
    Auto,            // base enumeration when rank <= 3, else half-space
    BaseEnumeration, // exhaustive Weyl-image bases; CapabilityError above rank 3
    HalfSpace,       // addition closure + a strict separating functional
};

// Is h the standard-form parabolic of some base (some Weyl image of the
// stored one)? The two routes are independent implementations and are
// property-tested against each other at small rank.
bool is_parabolic_for_some_base(const RootSystem& rs, const SaturatedSubalgebra& h,
                                ParabolicityRoute route = ParabolicityRoute::Auto);

struct CriterionReport {
    std::uint64_t examined = 0;   // subsets scanned
    std::uint64_t closed = 0;     // addition-closed among them
    std::uint64_t candidates = 0; // closed with codimension <= r(g)
    std::uint64_t confirmed = 0;  // candidates verified parabolic
    std::vector<std::uint32_t> failures; // class masks of counterexamples
    bool ok() const { return failures.empty() && confirmed == candidates; }
};

// Exhaustively checks, over every coarse-class subset of a rank <= 3
// system, that addition-closed subsets with resonant codimension at most
// r(g) are parabolic for some base. The claim is a theorem, so failures
// indicate an implementation bug. The parallel driver partitions the mask
// space across threads; the serial twin is the reference the tests compare
// against.
CriterionReport verify_parabolicity_criterion(const RootSystem& rs);
CriterionReport verify_parabolicity_criterion_serial(const RootSystem& rs);

} // namespace resroot

#endif
