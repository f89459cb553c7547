#include "resroot/parabolic.hpp"

#include "resroot/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace resroot {

namespace {

bool support_inside(const Root& root, const std::vector<char>& allowed) {
    for (std::size_t k = 0; k < root.pi.size(); ++k) {
        if (root.pi[k] != 0 && !allowed[k]) return false;
    }
    return true;
}

} // namespace

ParabolicSubalgebra standard_parabolic(const RootSystem& rs,
                                       const std::vector<int>& excluded) {
    std::vector<char> allowed(rs.rank(), 0);
    for (int p : excluded) {
        if (p < 0 || p >= rs.rank())
            throw std::invalid_argument("standard_parabolic: base position out of range");
        allowed[p] = 1;
    }
    ParabolicSubalgebra q;
    q.excluded.assign(excluded.begin(), excluded.end());
    std::sort(q.excluded.begin(), q.excluded.end());
    q.excluded.erase(std::unique(q.excluded.begin(), q.excluded.end()), q.excluded.end());
    for (int i = 0; i < rs.n_roots(); ++i) {
        if (rs.is_positive(i) || support_inside(rs.roots[i], allowed)) q.root_set.insert(i);
    }
    return q;
}

SaturatedSubalgebra saturated_from_roots(const RootSystem& rs,
                                         const std::vector<int>& root_ids) {
    SaturatedSubalgebra h;
    for (int i : root_ids) {
        if (i < 0 || i >= rs.n_roots())
            throw std::invalid_argument("saturated_from_roots: root index out of range");
        h.classes.insert(rs.class_of[i]);
    }
    return h;
}

bool is_addition_closed(const RootSystem& rs, const SaturatedSubalgebra& h) {
    std::vector<int> ids = roots_of_classes(
        rs, std::vector<int>(h.classes.begin(), h.classes.end()));
    std::vector<char> in(rs.n_roots(), 0);
    for (int i : ids) in[i] = 1;
    for (int a : ids) {
        for (int b : ids) {
            int s = rs.sum_of[a][b];
            if (s >= 0 && !in[s]) return false;
        }
    }
    return true;
}

SaturatedSubalgebra close_classes(const RootSystem& rs, const std::set<int>& seed) {
    std::vector<char> in_cls(rs.n_classes(), 0);
    for (int c : seed) {
        if (c < 0 || c >= rs.n_classes())
            throw std::invalid_argument("close_classes: class id out of range");
        in_cls[c] = 1;
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> ids;
        for (int c = 0; c < rs.n_classes(); ++c) {
            if (!in_cls[c]) continue;
            for (int i : rs.classes[c].roots) ids.push_back(i);
        }
        for (int a : ids) {
            for (int b : ids) {
                int s = rs.sum_of[a][b];
                if (s >= 0 && !in_cls[rs.class_of[s]]) {
                    in_cls[rs.class_of[s]] = 1;
                    grew = true;
                }
            }
        }
    }
    SaturatedSubalgebra h;
    for (int c = 0; c < rs.n_classes(); ++c) {
        if (in_cls[c]) h.classes.insert(c);
    }
    return h;
}

int resonant_codimension(const RootSystem& rs, const SaturatedSubalgebra& h) {
    for (int c : h.classes) {
        if (c < 0 || c >= rs.n_classes())
            throw std::invalid_argument("resonant_codimension: class id out of range");
    }
    return rs.n_classes() - static_cast<int>(h.classes.size());
}

int resonant_codimension(const RootSystem& rs, const ParabolicSubalgebra& q) {
    int out = 0;
    for (const CoarseClass& c : rs.classes) {
        bool full = true;
        for (int i : c.roots) {
            if (!q.root_set.count(i)) {
                full = false;
                break;
            }
        }
        if (!full) ++out;
    }
    return out;
}

std::vector<std::pair<int, int>> maximal_parabolic_table(const RootSystem& rs) {
    std::vector<std::pair<int, int>> table;
    for (int j = 0; j < rs.rank(); ++j) {
        std::vector<int> excluded;
        for (int k = 0; k < rs.rank(); ++k) {
            if (k != j) excluded.push_back(k);
        }
        table.emplace_back(j + 1, resonant_codimension(rs, standard_parabolic(rs, excluded)));
    }
    return table;
}

int minimal_resonant_codimension(const RootSystem& rs) {
    int best = -1;
    for (auto [j, codim] : maximal_parabolic_table(rs)) {
        if (best < 0 || codim < best) best = codim;
    }
    return best;
}

namespace {

// One Weyl image of the stored base, reduced to coarse-class bitmasks so
// the subset scan is branch-light. span_mask[S] collects the classes lying
// in the span of the base roots indexed by S.
struct BaseImage {
    std::uint32_t pos_mask = 0;
    std::vector<int> neg_class;
    std::vector<std::uint32_t> span_mask;
};

struct CriterionContext {
    int n_cls = 0;
    int r = 0;
    std::vector<std::vector<std::uint32_t>> req; // class sums forced by closure
    std::vector<BaseImage> bases;
};

CriterionContext build_criterion_context(const RootSystem& rs) {
    if (rs.n_classes() > 22)
        throw CapabilityError("class subset scan: too many coarse classes");
    CriterionContext ctx;
    ctx.n_cls = rs.n_classes();
    ctx.r = minimal_resonant_codimension(rs);

    ctx.req.assign(ctx.n_cls, std::vector<std::uint32_t>(ctx.n_cls, 0));
    for (int i = 0; i < ctx.n_cls; ++i) {
        for (int j = i; j < ctx.n_cls; ++j) {
            std::uint32_t bits = 0;
            for (int a : rs.classes[i].roots) {
                for (int b : rs.classes[j].roots) {
                    int s = rs.sum_of[a][b];
                    if (s >= 0) bits |= 1u << rs.class_of[s];
                }
            }
            ctx.req[i][j] = bits;
            ctx.req[j][i] = bits;
        }
    }

    const int rank = rs.rank();
    for (const std::vector<int>& perm : enumerate_weyl_permutations(rs, 3)) {
        BaseImage img;
        std::vector<QVec> basis;
        basis.reserve(rank);
        for (int b : rs.base) {
            int ib = perm[b];
            basis.push_back(rs.roots[ib].v);
            img.neg_class.push_back(rs.class_of[rs.neg_of[ib]]);
        }
        std::vector<std::uint32_t> support(rs.n_roots(), 0);
        for (int i = 0; i < rs.n_roots(); ++i) {
            auto coords = coordinates_in_basis(basis, rs.roots[i].v);
            if (!coords)
                throw std::logic_error("weyl image of the base failed to span a root");
            bool nonneg = true;
            for (int k = 0; k < rank; ++k) {
                if (sign_of((*coords)[k]) < 0) nonneg = false;
                if (sign_of((*coords)[k]) != 0) support[i] |= 1u << k;
            }
            if (nonneg) img.pos_mask |= 1u << rs.class_of[i];
        }
        img.span_mask.assign(std::size_t{1} << rank, 0);
        for (std::uint32_t sub = 0; sub < img.span_mask.size(); ++sub) {
            for (int i = 0; i < rs.n_roots(); ++i) {
                if ((support[i] & ~sub) == 0) img.span_mask[sub] |= 1u << rs.class_of[i];
            }
        }
        ctx.bases.push_back(std::move(img));
    }
    return ctx;
}

bool mask_is_closed(std::uint32_t m, const CriterionContext& ctx) {
    for (std::uint32_t mi = m; mi; mi &= mi - 1) {
        int i = std::countr_zero(mi);
        for (std::uint32_t mj = mi; mj; mj &= mj - 1) {
            if (ctx.req[i][std::countr_zero(mj)] & ~m) return false;
        }
    }
    return true;
}

bool mask_is_parabolic(std::uint32_t m, const CriterionContext& ctx) {
    for (const BaseImage& img : ctx.bases) {
        std::uint32_t prime = 0;
        for (std::size_t k = 0; k < img.neg_class.size(); ++k) {
            if (m >> img.neg_class[k] & 1u) prime |= 1u << k;
        }
        if ((img.pos_mask | img.span_mask[prime]) == m) return true;
    }
    return false;
}

// Shared loop body. Counter updates go to the caller's accumulators so the
// parallel driver can keep them thread-local.
inline void scan_mask(std::uint32_t m, const CriterionContext& ctx, std::uint64_t& closed,
                      std::uint64_t& candidates, std::uint64_t& confirmed,
                      std::vector<std::uint32_t>& failures) {
    if (!mask_is_closed(m, ctx)) return;
    ++closed;
    if (ctx.n_cls - std::popcount(m) > ctx.r) return;
    ++candidates;
    if (mask_is_parabolic(m, ctx))
        ++confirmed;
    else
        failures.push_back(m);
}

CriterionReport finish_report(std::uint64_t examined, std::uint64_t closed,
                              std::uint64_t candidates, std::uint64_t confirmed,
                              std::vector<std::uint32_t> failures) {
    CriterionReport rep;
    rep.examined = examined;
    rep.closed = closed;
    rep.candidates = candidates;
    rep.confirmed = confirmed;
    std::sort(failures.begin(), failures.end());
    rep.failures = std::move(failures);
    return rep;
}

} // namespace

CriterionReport verify_parabolicity_criterion_serial(const RootSystem& rs) {
    CriterionContext ctx = build_criterion_context(rs);
    const std::uint64_t total = std::uint64_t{1} << ctx.n_cls;
    std::uint64_t closed = 0, candidates = 0, confirmed = 0;
    std::vector<std::uint32_t> failures;
    for (std::uint64_t m = 0; m < total; ++m) {
        scan_mask(static_cast<std::uint32_t>(m), ctx, closed, candidates, confirmed, failures);
    }
    return finish_report(total, closed, candidates, confirmed, std::move(failures));
}

CriterionReport verify_parabolicity_criterion(const RootSystem& rs) {
    CriterionContext ctx = build_criterion_context(rs);
    const std::int64_t total = std::int64_t{1} << ctx.n_cls;
    std::uint64_t closed = 0, candidates = 0, confirmed = 0;
    std::vector<std::uint32_t> failures;
#pragma omp parallel
    {
        std::uint64_t t_closed = 0, t_candidates = 0, t_confirmed = 0;
        std::vector<std::uint32_t> t_failures;
#pragma omp for schedule(static)
        for (std::int64_t m = 0; m < total; ++m) {
            scan_mask(static_cast<std::uint32_t>(m), ctx, t_closed, t_candidates,
                      t_confirmed, t_failures);
        }
#pragma omp critical
        {
            closed += t_closed;
            candidates += t_candidates;
            confirmed += t_confirmed;
            failures.insert(failures.end(), t_failures.begin(), t_failures.end());
        }
    }
    return finish_report(static_cast<std::uint64_t>(total), closed, candidates, confirmed,
                         std::move(failures));
}

bool is_parabolic_for_some_base(const RootSystem& rs, const SaturatedSubalgebra& h,
                                ParabolicityRoute route) {
    if (route == ParabolicityRoute::Auto) {
        route = rs.rank() <= 3 ? ParabolicityRoute::BaseEnumeration
                               : ParabolicityRoute::HalfSpace;
    }
    for (int c : h.classes) {
        if (c < 0 || c >= rs.n_classes())
            throw std::invalid_argument("is_parabolic_for_some_base: class id out of range");
    }

    if (route == ParabolicityRoute::BaseEnumeration) {
        if (rs.rank() > 3)
            throw CapabilityError("base enumeration route is limited to rank <= 3");
        CriterionContext ctx = build_criterion_context(rs);
        std::uint32_t m = 0;
        for (int c : h.classes) m |= 1u << c;
        return mask_is_parabolic(m, ctx);
    }

    // Half-space route: h is parabolic exactly when it is addition-closed
    // and some functional is strictly negative on every excluded root.
    // Such a functional pins a positive system inside h.
    if (!is_addition_closed(rs, h)) return false;
    std::vector<char> in(rs.n_roots(), 0);
    for (int i : roots_of_classes(rs, std::vector<int>(h.classes.begin(), h.classes.end())))
        in[i] = 1;
    std::vector<Constraint> constraints;
    for (int i = 0; i < rs.n_roots(); ++i) {
        if (!in[i]) constraints.push_back({rs.roots[i].v, Rel::Neg});
    }
    return strict_feasibility(constraints, rs.base_vectors()).feasible;
}

} // namespace resroot
