#ifndef RESROOT_RESONANCE_HPP
#define RESROOT_RESONANCE_HPP

#include "resroot/parabolic.hpp"
#include "resroot/root_system.hpp"

#include <string>
#include <vector>

namespace resroot {

// Symbolic stand-in for the Lyapunov data of an invariant measure: one
// functional per coarse exponent, in ambient coordinates, plus the
// dimension bound the hypothesis supplies. volume selects the equality
// clause of the hypothesis.
struct ExponentSet {
    std::vector<QVec> exponents;
    int dim_m = 0;
    bool volume = false;
};

enum class Verdict { FullyInvariant, VolumeContradiction, Inconclusive };

std::string verdict_name(Verdict v);

struct OutcomeReport {
    Verdict verdict = Verdict::Inconclusive;
    int r = 0;                           // critical codimension of the system
    std::vector<int> resonant_classes;   // classes some exponent aligns with
    std::vector<int> invariant_classes;  // closure of the non-resonant classes
    std::vector<int> excluded_classes;   // complement of that closure
    QVec witness;                        // strictly negative on every excluded
                                         // root; only set for the volume verdict
    std::vector<int> proportional_exponents; // exponent id per excluded class
};

// A functional resonates with a root when it is positively proportional
// to it after projection onto the span of the base. Positivity matters:
// the exponent of a contracted direction does not align with the
// expanded one.
std::vector<int> resonant_roots(const RootSystem& rs, const QVec& exponent);
std::vector<int> resonant_classes(const RootSystem& rs, const std::vector<QVec>& exponents);

// Classes no exponent resonates with, closed up under addition at class
// granularity: a class enters as a whole as soon as any member root is a
// sum of included roots. That granularity is what keeps the BC family
// honest, where e and 2e live in one class.
SaturatedSubalgebra nonresonant_subalgebra(const RootSystem& rs,
                                           const std::vector<QVec>& exponents);

// Decision chain for one exponent set. Below the critical dimension the
// closure provably exhausts the system; at it, with the volume flag, a
// proper closure forces the parabolic shape and a separating witness.
// Anything outside the hypothesis comes back Inconclusive rather than as
// an error.
OutcomeReport classify_outcome(const RootSystem& rs, const ExponentSet& exps);

} // namespace resroot

#endif
