#include "resroot/resonance.hpp"

#include "resroot/linalg.hpp"

#include <set>
#include <stdexcept>

namespace resroot {

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::FullyInvariant: return "fully-invariant";
    case Verdict::VolumeContradiction: return "volume-contradiction";
    case Verdict::Inconclusive: return "inconclusive";
    }
    throw std::logic_error("verdict_name: bad enum value");
}

std::vector<int> resonant_roots(const RootSystem& rs, const QVec& exponent) {
    QVec f = rs.canonicalize_functional(exponent);
    std::vector<int> out;
    for (int i = 0; i < rs.n_roots(); ++i) {
        if (positively_proportional(f, rs.roots[i].v)) out.push_back(i);
    }
    return out;
}

std::vector<int> resonant_classes(const RootSystem& rs, const std::vector<QVec>& exponents) {
    std::set<int> cls;
    for (const QVec& e : exponents) {
        for (int i : resonant_roots(rs, e)) cls.insert(rs.class_of[i]);
    }
    return {cls.begin(), cls.end()};
}

SaturatedSubalgebra nonresonant_subalgebra(const RootSystem& rs,
                                           const std::vector<QVec>& exponents) {
    std::vector<char> resonant(rs.n_classes(), 0);
    for (int c : resonant_classes(rs, exponents)) resonant[c] = 1;
    std::set<int> seed;
    for (int c = 0; c < rs.n_classes(); ++c) {
        if (!resonant[c]) seed.insert(c);
    }
    return close_classes(rs, seed);
}

OutcomeReport classify_outcome(const RootSystem& rs, const ExponentSet& exps) {
    if (exps.dim_m < 0) throw std::invalid_argument("classify_outcome: negative dimension");
    for (const QVec& e : exps.exponents) {
        if (static_cast<int>(e.size()) != rs.ambient_dim)
            throw std::invalid_argument("classify_outcome: exponent dimension mismatch");
    }
    if (static_cast<int>(exps.exponents.size()) > exps.dim_m)
        throw std::invalid_argument(
            "classify_outcome: more exponents than the dimension bound admits");

    OutcomeReport rep;
    rep.r = minimal_resonant_codimension(rs);
    rep.resonant_classes = resonant_classes(rs, exps.exponents);
    SaturatedSubalgebra h = nonresonant_subalgebra(rs, exps.exponents);
    rep.invariant_classes.assign(h.classes.begin(), h.classes.end());
    for (int c = 0; c < rs.n_classes(); ++c) {
        if (!h.classes.count(c)) rep.excluded_classes.push_back(c);
    }

    const bool hypothesis =
        exps.dim_m < rep.r || (exps.dim_m == rep.r && exps.volume);
    if (!hypothesis) {
        rep.verdict = Verdict::Inconclusive;
        return rep;
    }

    if (rep.excluded_classes.empty()) {
        rep.verdict = Verdict::FullyInvariant;
        return rep;
    }

    // Below the critical dimension fewer than r classes are resonant, the
    // closure is addition-closed with codimension under r, and the only
    // parabolic that small is the whole algebra. Reaching this line with
    // dim_m < r therefore means a bug, not a property of the input.
    if (exps.dim_m < rep.r)
        throw std::logic_error(
            "classify_outcome: proper closure below the critical dimension");

    if (!is_addition_closed(rs, h))
        throw std::logic_error("classify_outcome: closure is not addition-closed");
    if (rep.excluded_classes.size() != exps.exponents.size())
        throw std::logic_error(
            "classify_outcome: excluded class count drifted from the exponent count");

    std::vector<Constraint> constraints;
    for (int i : roots_of_classes(rs, rep.excluded_classes))
        constraints.push_back({rs.roots[i].v, Rel::Neg});
    Feasibility feas = strict_feasibility(constraints, rs.base_vectors());
    if (!feas.feasible)
        throw std::logic_error("classify_outcome: invariance set fails the half-space test");
    rep.witness = feas.witness;

    for (int c : rep.excluded_classes) {
        const QVec& beta = rs.roots[rs.classes[c].roots.front()].v;
        int found = -1;
        for (std::size_t i = 0; i < exps.exponents.size(); ++i) {
            if (positively_proportional(rs.canonicalize_functional(exps.exponents[i]), beta)) {
                found = static_cast<int>(i);
                break;
            }
        }
        if (found < 0)
            throw std::logic_error("classify_outcome: excluded class has no aligned exponent");
        rep.proportional_exponents.push_back(found);
    }

    rep.verdict = Verdict::VolumeContradiction;
    return rep;
}

} // namespace resroot
