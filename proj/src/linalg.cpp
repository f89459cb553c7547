#include "resroot/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace resroot {

namespace {

// In-place forward elimination to row echelon form. Returns the rank.
int echelonize(std::vector<QVec>& rows) {
    if (rows.empty())
        return 0;
    const std::size_t ncols = rows[0].size();
    std::size_t lead = 0;
    int rank = 0;
    for (std::size_t col = 0; col < ncols && lead < rows.size(); ++col) {
        std::size_t piv = lead;
        while (piv < rows.size() && rows[piv][col] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[lead], rows[piv]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead || rows[r][col] == 0)
                continue;
            Rat factor = rows[r][col] / rows[lead][col];
            for (std::size_t c = col; c < ncols; ++c)
                rows[r][c] -= factor * rows[lead][c];
        }
        ++lead;
        ++rank;
    }
    return rank;
}

} // namespace

int rank_of(std::vector<QVec> rows) { return echelonize(rows); }

bool span_contains(const std::vector<QVec>& spanning, const QVec& v) {
    if (is_zero(v))
        return true;
    std::vector<QVec> rows = spanning;
    int r0 = echelonize(rows);
    rows.push_back(v);
    return echelonize(rows) == r0;
}

std::optional<QVec> coordinates_in_basis(const std::vector<QVec>& basis, const QVec& v) {
    // Augmented system over the ambient dimension: columns are basis
    // vectors, right-hand side is v.
    const std::size_t m = basis.size();
    const std::size_t dim = v.size();
    std::vector<QVec> aug(dim, QVec(m + 1, Rat(0)));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t k = 0; k < m; ++k)
            aug[i][k] = basis[k][i];
        aug[i][m] = v[i];
    }
    // Gauss-Jordan on the first m columns.
    std::size_t lead = 0;
    std::vector<int> pivot_col_of_row(dim, -1);
    for (std::size_t col = 0; col < m && lead < dim; ++col) {
        std::size_t piv = lead;
        while (piv < dim && aug[piv][col] == 0)
            ++piv;
        if (piv == dim)
            return std::nullopt; // dependent basis; callers guarantee otherwise
        std::swap(aug[lead], aug[piv]);
        Rat inv = Rat(1) / aug[lead][col];
        for (std::size_t c = col; c <= m; ++c)
            aug[lead][c] *= inv;
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == lead || aug[r][col] == 0)
                continue;
            Rat f = aug[r][col];
            for (std::size_t c = col; c <= m; ++c)
                aug[r][c] -= f * aug[lead][c];
        }
        pivot_col_of_row[lead] = static_cast<int>(col);
        ++lead;
    }
    // Consistency: rows below the pivots must have zero RHS.
    for (std::size_t r = lead; r < dim; ++r)
        if (aug[r][m] != 0)
            return std::nullopt;
    QVec x(m, Rat(0));
    for (std::size_t r = 0; r < lead; ++r)
        x[pivot_col_of_row[r]] = aug[r][m];
    return x;
}

QVec project_onto_span(const std::vector<QVec>& basis, const QVec& v) {
    const std::size_t m = basis.size();
    // Solve the Gram system G c = (v . basis_i).
    std::vector<QVec> gram_rows(m, QVec(m, Rat(0)));
    QVec rhs_vec(m, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            gram_rows[i][j] = dot(basis[i], basis[j]);
        rhs_vec[i] = dot(v, basis[i]);
    }
    // Reuse coordinates_in_basis on the Gram columns (square, invertible
    // for an independent basis).
    std::vector<QVec> cols(m, QVec(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            cols[j][i] = gram_rows[i][j];
    auto c = coordinates_in_basis(cols, rhs_vec);
    if (!c)
        throw std::logic_error("project_onto_span: dependent basis");
    QVec out(v.size(), Rat(0));
    for (std::size_t k = 0; k < m; ++k)
        out = add(out, scaled(basis[k], (*c)[k]));
    return out;
}

std::vector<QVec> nullspace(std::vector<QVec> rows, std::size_t nvars) {
    // Reduced row echelon form, then one basis vector per free variable.
    std::size_t lead = 0;
    std::vector<int> pivot_of_col(nvars, -1);
    for (std::size_t col = 0; col < nvars && lead < rows.size(); ++col) {
        std::size_t piv = lead;
        while (piv < rows.size() && rows[piv][col] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[lead], rows[piv]);
        Rat inv = Rat(1) / rows[lead][col];
        for (std::size_t c = 0; c < nvars; ++c)
            rows[lead][c] *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead || rows[r][col] == 0)
                continue;
            Rat f = rows[r][col];
            for (std::size_t c = 0; c < nvars; ++c)
                rows[r][c] -= f * rows[lead][c];
        }
        pivot_of_col[col] = static_cast<int>(lead);
        ++lead;
    }
    std::vector<QVec> basis;
    for (std::size_t col = 0; col < nvars; ++col) {
        if (pivot_of_col[col] >= 0)
            continue;
        QVec b(nvars, Rat(0));
        b[col] = 1;
        for (std::size_t c = 0; c < nvars; ++c) {
            if (pivot_of_col[c] >= 0)
                b[c] = -rows[pivot_of_col[c]][col];
        }
        basis.push_back(std::move(b));
    }
    return basis;
}

namespace {

// Internal Fourier-Motzkin row: a . x < 0 over the reduced variables.
struct FMRow {
    QVec a;
};

QVec primitive_row(const QVec& a) { return primitive_scale(a); }

struct QVecLess {
    bool operator()(const QVec& x, const QVec& y) const { return lex_cmp(x, y) < 0; }
};

// Eliminates duplicate rows after normalization. Returns false (infeasible)
// if a row reduced to 0 < 0.
bool normalize_rows(std::vector<FMRow>& rows) {
    std::set<QVec, QVecLess> seen;
    std::vector<FMRow> out;
    for (FMRow& r : rows) {
        if (is_zero(r.a))
            return false; // 0 < 0
        QVec p = primitive_row(r.a);
        if (seen.insert(p).second)
            out.push_back(FMRow{std::move(p)});
    }
    rows = std::move(out);
    return true;
}

} // namespace

Feasibility strict_feasibility(const std::vector<Constraint>& constraints,
                               const std::vector<QVec>& basis) {
    const std::size_t n = basis.size();

    // Rewrite each constraint over the basis coordinates x: f(sum x_k b_k)
    // = sum x_k (f . b_k).
    std::vector<QVec> eqs;
    std::vector<FMRow> ineqs;
    for (const Constraint& c : constraints) {
        QVec row(n);
        for (std::size_t k = 0; k < n; ++k)
            row[k] = dot(c.f, basis[k]);
        switch (c.rel) {
        case Rel::Zero:
            if (!is_zero(row))
                eqs.push_back(std::move(row));
            break;
        case Rel::Neg:
            ineqs.push_back(FMRow{std::move(row)});
            break;
        case Rel::Pos:
            ineqs.push_back(FMRow{negated(row)});
            break;
        }
    }

    // Substitute equalities away. Records (var, expression rows) so the
    // witness can be reconstructed afterwards.
    struct EqStep {
        std::size_t var;
        QVec expr; // x_var = expr . x (expr[var] == 0)
    };
    std::vector<EqStep> eq_steps;
    std::vector<bool> eliminated(n, false);
    for (QVec& e : eqs) {
        // Apply earlier substitutions.
        for (const EqStep& st : eq_steps) {
            if (e[st.var] != 0) {
                Rat f = e[st.var];
                e[st.var] = 0;
                for (std::size_t k = 0; k < n; ++k)
                    e[k] += f * st.expr[k];
            }
        }
        std::size_t p = 0;
        while (p < n && e[p] == 0)
            ++p;
        if (p == n)
            continue; // redundant equality
        QVec expr(n, Rat(0));
        Rat d = e[p];
        for (std::size_t k = 0; k < n; ++k)
            if (k != p)
                expr[k] = -e[k] / d;
        eliminated[p] = true;
        eq_steps.push_back(EqStep{p, std::move(expr)});
    }
    for (FMRow& r : ineqs) {
        for (const EqStep& st : eq_steps) {
            if (r.a[st.var] != 0) {
                Rat f = r.a[st.var];
                r.a[st.var] = 0;
                for (std::size_t k = 0; k < n; ++k)
                    r.a[k] += f * st.expr[k];
            }
        }
    }

    if (!normalize_rows(ineqs))
        return {};

    // Fourier-Motzkin proper. Each elimination remembers the rows bounding
    // the removed variable so back-substitution can pick a value inside the
    // interval they carve out.
    struct FMStep {
        std::size_t var;
        std::vector<QVec> pos; // rows with a[var] > 0 (upper bounds)
        std::vector<QVec> neg; // rows with a[var] < 0 (lower bounds)
    };
    std::vector<FMStep> fm_steps;

    auto occurs = [&](std::size_t v) {
        if (eliminated[v])
            return false;
        for (const FMRow& r : ineqs)
            if (r.a[v] != 0)
                return true;
        return false;
    };

    while (!ineqs.empty()) {
        // Pick the active variable with the cheapest pos*neg product.
        std::size_t best = n;
        long best_cost = -1;
        for (std::size_t v = 0; v < n; ++v) {
            if (!occurs(v))
                continue;
            long np = 0, nn = 0;
            for (const FMRow& r : ineqs) {
                int s = sgn(r.a[v]);
                if (s > 0)
                    ++np;
                else if (s < 0)
                    ++nn;
            }
            long cost = np * nn;
            if (best == n || cost < best_cost) {
                best = v;
                best_cost = cost;
            }
        }
        if (best == n) {
            // Rows remain but mention no variable: normalize_rows would have
            // caught zero rows, so this cannot happen.
            throw std::logic_error("strict_feasibility: stuck elimination");
        }

        FMStep step;
        step.var = best;
        std::vector<FMRow> rest;
        for (FMRow& r : ineqs) {
            int s = sgn(r.a[best]);
            if (s > 0)
                step.pos.push_back(r.a);
            else if (s < 0)
                step.neg.push_back(r.a);
            else
                rest.push_back(std::move(r));
        }
        for (const QVec& p : step.pos) {
            for (const QVec& q : step.neg) {
                // (-q[best]) * p + p[best] * q has a zero coefficient at
                // `best` and stays strictly negative.
                QVec combo = add(scaled(p, -q[best]), scaled(q, p[best]));
                rest.push_back(FMRow{std::move(combo)});
            }
        }
        eliminated[best] = true;
        fm_steps.push_back(std::move(step));
        ineqs = std::move(rest);
        if (!normalize_rows(ineqs))
            return {};
    }

    // Feasible: reconstruct a witness. Variables never touched default to 0.
    QVec x(n, Rat(0));
    for (auto it = fm_steps.rbegin(); it != fm_steps.rend(); ++it) {
        // pos rows:  a[var] x_var < -rest  =>  x_var < (-rest)/a[var]
        // neg rows:  x_var > (-rest)/a[var]
        bool have_low = false, have_high = false;
        Rat low = 0, high = 0;
        auto rest_of = [&](const QVec& a) {
            Rat acc = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (k != it->var)
                    acc += a[k] * x[k];
            return acc;
        };
        for (const QVec& a : it->pos) {
            Rat bound = -rest_of(a) / a[it->var];
            if (!have_high || bound < high) {
                high = bound;
                have_high = true;
            }
        }
        for (const QVec& a : it->neg) {
            Rat bound = -rest_of(a) / a[it->var];
            if (!have_low || bound > low) {
                low = bound;
                have_low = true;
            }
        }
        if (have_low && have_high) {
            assert(low < high);
            x[it->var] = (low + high) / 2;
        } else if (have_high) {
            x[it->var] = high - 1;
        } else if (have_low) {
            x[it->var] = low + 1;
        }
    }
    for (auto it = eq_steps.rbegin(); it != eq_steps.rend(); ++it) {
        Rat acc = 0;
        for (std::size_t k = 0; k < n; ++k)
            acc += it->expr[k] * x[k];
        x[it->var] = acc;
    }

    Feasibility out;
    out.feasible = true;
    out.witness = QVec(basis.empty() ? 0 : basis[0].size(), Rat(0));
    for (std::size_t k = 0; k < n; ++k)
        out.witness = add(out.witness, scaled(basis[k], x[k]));

    // Exact substitution check; a failure here is an implementation bug.
    for (const Constraint& c : constraints) {
        Rat val = dot(c.f, out.witness);
        bool ok = (c.rel == Rel::Neg && val < 0) || (c.rel == Rel::Zero && val == 0) ||
                  (c.rel == Rel::Pos && val > 0);
        if (!ok)
            throw std::logic_error("strict_feasibility: witness failed substitution");
    }
    return out;
}

} // namespace resroot
