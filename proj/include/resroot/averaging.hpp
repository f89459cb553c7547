#ifndef RESROOT_AVERAGING_HPP
#define RESROOT_AVERAGING_HPP

#include "resroot/root_system.hpp"
#include "resroot/weyl.hpp"

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace resroot {

// The five closure rules the derivation is allowed to invoke. Each models
// one measure-theoretic fact as a pure operation on root data.
enum class Rule {
    AverageOverU,        // push the measure forward along a unipotent subgroup
    AverageOverA,        // average along the diagonal flow
    RatnerNegation,      // A-invariance upgrades each class to its negative
    AdditionClosure,     // pass to the group the invariance directions generate
    CommutationTransfer, // retain invariances that commute with the averaged subgroup
};

std::string rule_name(Rule r);
Rule parse_rule(const std::string& s);

// Literature anchor for the fact a rule models, recorded in traces.
std::string rule_citation(Rule r);

// What is currently known about the (symbolic) measure: which coarse root
// spaces leave it invariant and whether diagonal invariance holds.
struct InvarianceSet {
    std::set<int> classes;
    bool a_invariant = false;

    bool operator==(const InvarianceSet&) const = default;
};

struct AveragingStep {
    Rule rule = Rule::AverageOverA;
    std::vector<int> subgroup_roots; // roots averaged over or transferred; empty for A rules
    QVec witness;                    // s with lambda_prime(s) > 0
    InvarianceSet after;
};

struct AveragingTrace {
    RootSystemType type{};
    QVec lambda;                  // input functional, ambient coordinates
    std::vector<int> word;        // base positions, applied left to right
    QVec lambda_prime;            // image of lambda under the word
    int beta_hat = -1;            // pivot root
    int beta_prime = -1;          // second-stage pivot, beta_hat or the first simple root
    std::vector<int> string_path; // roots from the first simple root up to beta_hat
    std::vector<AveragingStep> steps;
    InvarianceSet final_state;
};

// A rule was invoked with its side conditions violated. Aborts the trace.
class SideConditionError : public std::runtime_error {
  public:
    SideConditionError(int step, Rule rule, const std::string& what);
    int step;
    Rule rule;
};

// select_s2 was handed a functional proportional to its pivot and has no
// kernel direction with positive pairing to offer.
class InfeasibleSelectionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Weyl element moving lambda out of the span of the non-distinguished
// simple roots. Identity whenever lambda already qualifies. Zero lambda
// (after projection to the span of the base) is rejected.
WeylElement choose_base(const RootSystem& rs, const QVec& lambda);

// The pivot root: the highest root for A, B, D, E6, E7 and the unique
// second-highest for C, BC, E8, F4, G2. Asserts the two properties the
// pipeline relies on: the pivot plus any non-distinguished simple root is
// not a root, and a root string connects the first simple root to it.
int select_beta_hat(const RootSystem& rs);

// Shortest chain from one root to another where each link adds a single
// non-distinguished simple root and stays inside the system.
std::vector<int> root_string(const RootSystem& rs, int from, int to);

// s1: spans the line killed by every non-distinguished simple root, sign
// fixed so lambda(s1) > 0. Primitive integer coordinates.
QVec select_s1(const RootSystem& rs, const QVec& lambda);

// The second-stage pivot: beta_hat unless the functional is proportional
// to it, in which case the first simple root. At most one of the two can
// be proportional, so the choice always exists.
int choose_beta_prime(const RootSystem& rs, const QVec& lambda);

// s2: inside the kernel of the pivot with lambda2(s2) > 0.
QVec select_s2(const RootSystem& rs, int beta_prime, const QVec& lambda2);

// The full derivation for one irreducible system of rank >= 2: move
// lambda off the wall, average over the subgroup generated by the
// non-distinguished simple root spaces, upgrade through diagonal
// averaging and negation, re-average over the pivot's root space keeping
// whatever commutes with it, and close up. The final state provably
// covers the whole system; anything less throws.
AveragingTrace run_averaging(const RootSystem& rs, const QVec& lambda);

struct ReplayReport {
    bool ok = true;
    int failing_step = 0; // 1-based step number; -1 for header, steps+1 for final
    std::string detail;
};

// Validates a trace without trusting it: header consistency, each step's
// side conditions and recorded state transition, and the final state.
// Never throws; forged witnesses and dropped classes come back as a
// report naming the first bad step.
ReplayReport replay(const RootSystem& rs, const AveragingTrace& trace);
ReplayReport replay(const AveragingTrace& trace);

// Property sweep: `trials` random nonzero rational functionals per type,
// each run end to end and replayed. Counters are totals across the grid,
// aggregated order-independently so the parallel and serial drivers agree
// exactly. Seeds derive from (seed, type index, trial), never from thread
// identity.
struct SweepResult {
    std::uint64_t runs = 0;
    std::uint64_t full = 0;      // traces whose final state covers the system
    std::uint64_t replay_ok = 0; // traces that replay clean
    std::uint64_t witness_ok = 0; // steps' witnesses all strictly positive

    bool operator==(const SweepResult&) const = default;
};

QVec random_lambda(const RootSystem& rs, std::uint64_t seed, int type_index, int trial);

SweepResult averaging_sweep(const std::vector<RootSystemType>& types, int trials,
                            std::uint64_t seed);
SweepResult averaging_sweep_serial(const std::vector<RootSystemType>& types, int trials,
                                   std::uint64_t seed);

} // namespace resroot

#endif
