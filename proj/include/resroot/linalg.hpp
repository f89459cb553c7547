#ifndef RESROOT_LINALG_HPP
#define RESROOT_LINALG_HPP

#include "resroot/vec.hpp"

#include <optional>
#include <vector>

namespace resroot {

// Exact rational linear algebra over ambient coordinates. Everything here
// is plain Gaussian elimination or Fourier-Motzkin elimination; no floating
// point, no pivoting-for-stability concerns.

// Rank of the row span.
int rank_of(std::vector<QVec> rows);

// Is v in the linear span of the given vectors?
bool span_contains(const std::vector<QVec>& spanning, const QVec& v);

// Solves sum_k x_k * basis[k] = v exactly. Empty result when v is outside
// the span. The basis must be linearly independent.
std::optional<QVec> coordinates_in_basis(const std::vector<QVec>& basis, const QVec& v);

// Orthogonal projection of v onto span(basis), via the Gram system.
// The basis must be linearly independent.
QVec project_onto_span(const std::vector<QVec>& basis, const QVec& v);

// Canonical basis of { x : rows * x = 0 } (reduced echelon form, free
// variables set to 1 one at a time). nvars is the length of x.
std::vector<QVec> nullspace(std::vector<QVec> rows, std::size_t nvars);

// One strict or exact linear condition f(s) REL 0 on a Cartan element s.
enum class Rel { Neg, Zero, Pos };

struct Constraint {
    QVec f; // ambient functional coordinates
    Rel rel;
};

struct Feasibility {
    bool feasible = false;
    QVec witness; // ambient coordinates, only meaningful when feasible
};

// Decides whether some s in span(basis) satisfies every constraint, with
// f(s) evaluated as the ambient dot product. Homogeneous strict systems
// only, which is all the callers need; the witness (when any) is returned
// in ambient coordinates and validates by substitution.
//
// Method: equalities are eliminated first by exact substitution, then
// Fourier-Motzkin elimination runs on the strict inequalities with
// primitive-row normalization, duplicate dropping, and a cheapest-variable
// heuristic to curb intermediate blowup.
Feasibility strict_feasibility(const std::vector<Constraint>& constraints,
                               const std::vector<QVec>& basis);

} // namespace resroot

#endif
