#ifndef RESROOT_DIMS_HPP
#define RESROOT_DIMS_HPP

#include "resroot/averaging.hpp"
#include "resroot/root_system.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace resroot {

// A semisimple group modeled by the restricted root systems of its simple
// ideals. Compact ideals contribute nothing beyond their presence.
struct GroupFactor {
    RootSystemType type{};
    bool compact = false;
};

struct GroupSpec {
    std::vector<GroupFactor> factors;
};

// Grammar: comma-separated factors, each a family name with a rank and an
// optional trailing '*' for compact, e.g. "A3,A1*" or "BC2,G2". Families
// of fixed rank may omit the rank digit ("E6" and "E66" both work).
GroupSpec parse_group_spec(const std::string& text);
std::string group_spec_str(const GroupSpec& spec);

// Asking for a quantity the configuration does not define, e.g. the
// critical codimension of an everywhere-compact group.
class UndefinedQuantityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// The dimension tables cover exactly the families and parameter ranges
// with stated values; nothing is extrapolated.
class OutOfTableError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Minimum of the critical codimension over the non-compact factors.
// Rank-1 factors contribute 1.
int r_of(const GroupSpec& spec);

// Minimal root-count codimension of a maximal standard parabolic. For
// split groups this equals the real codimension v. The non-reduced family
// is rejected: it never appears as the system of a split group.
int v_of_split(RootSystemType type);

// Least k with k(k+1)/2 >= d_tilde.
int d_prime_of(long d_tilde);

enum class KnownFamily { SLnR, Sp2nR, SOnn, SOnn1 };

std::string known_family_name(KnownFamily f);
KnownFamily parse_known_family(const std::string& s);

// Critical dimensions with per-field provenance: "table" entries are
// stated values, "computed" ones come out of the root-system machinery
// here. Absent optionals mean the source material states no value.
struct DimensionReport {
    KnownFamily family{};
    int parameter = 0;
    int r = 0;
    std::optional<int> v;
    std::optional<int> n;
    std::optional<int> d;
    std::optional<int> d_prime;
    std::string r_source, v_source, n_source, d_source, d_prime_source;
};

// Table-driven report for the four named matrix families. Every table r
// is cross-checked against the computed critical codimension of the
// matching restricted root system; disagreement would mean a table typo
// or a computation bug, and throws.
DimensionReport known_dims(KnownFamily family, int parameter);

struct HypothesisVerdict {
    int clause = 0; // 1: strict inequality, 2: equality with volume, 0: neither
    int r = 0;
    bool rank_one_factor = false; // a non-compact rank-1 ideal is present
};

HypothesisVerdict theorem_hypothesis(const GroupSpec& spec, int dim_m,
                                     bool volume_preserving);

// Per-factor averaging runs for a product group. Compact ideals are
// skipped; a non-compact rank-1 ideal cannot run the pipeline and is an
// error. lambdas pair up with factors positionally.
struct FactorRun {
    GroupFactor factor{};
    bool skipped_compact = false;
    AveragingTrace trace; // meaningful only when not skipped
};

std::vector<FactorRun> run_averaging_product(const GroupSpec& spec,
                                             const std::vector<QVec>& lambdas);

} // namespace resroot

#endif
