#include "resroot/averaging.hpp"

#include "resroot/linalg.hpp"
#include "resroot/parabolic.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

namespace resroot {

std::string rule_name(Rule r) {
    switch (r) {
    case Rule::AverageOverU: return "average-over-u";
    case Rule::AverageOverA: return "average-over-a";
    case Rule::RatnerNegation: return "ratner-negation";
    case Rule::AdditionClosure: return "addition-closure";
    case Rule::CommutationTransfer: return "commutation-transfer";
    }
    throw std::logic_error("rule_name: bad enum value");
}

Rule parse_rule(const std::string& s) {
    if (s == "average-over-u") return Rule::AverageOverU;
    if (s == "average-over-a") return Rule::AverageOverA;
    if (s == "ratner-negation") return Rule::RatnerNegation;
    if (s == "addition-closure") return Rule::AdditionClosure;
    if (s == "commutation-transfer") return Rule::CommutationTransfer;
    throw std::invalid_argument("unknown rule: " + s);
}

std::string rule_citation(Rule r) {
    switch (r) {
    case Rule::AverageOverU: return "folner-unipotent-averaging";
    case Rule::AverageOverA: return "diagonal-flow-averaging";
    case Rule::RatnerNegation: return "unipotent-measure-classification";
    case Rule::AdditionClosure: return "generated-subgroup-closure";
    case Rule::CommutationTransfer: return "centralizer-commutation";
    }
    throw std::logic_error("rule_citation: bad enum value");
}

SideConditionError::SideConditionError(int step_, Rule rule_, const std::string& what_)
    : std::runtime_error("step " + std::to_string(step_) + " (" + rule_name(rule_) +
                         "): " + what_ + " [" + rule_citation(rule_) + "]"),
      step(step_), rule(rule_) {}

WeylElement choose_base(const RootSystem& rs, const QVec& lambda) {
    QVec f = rs.canonicalize_functional(lambda);
    if (is_zero(f))
        throw std::invalid_argument(
            "choose_base: functional vanishes on the span of the base");
    std::vector<QVec> wall = rs.nondistinguished_base_vectors();
    auto off_wall = [&wall](const QVec& v) { return !span_contains(wall, v); };
    return weyl_orbit_search(rs, f, off_wall).element;
}

int select_beta_hat(const RootSystem& rs) {
    if (rs.rank() < 2)
        throw CapabilityError("select_beta_hat: needs rank >= 2");
    int picked;
    switch (rs.type.family) {
    case Family::A:
    case Family::B:
    case Family::D:
    case Family::E6:
    case Family::E7:
        picked = rs.highest;
        break;
    default:
        second_highest_root(rs); // throws when the height is not uniquely attained
        picked = rs.second_highest;
        break;
    }
    for (int j = 1; j < rs.rank(); ++j) {
        if (rs.sum_of[picked][rs.base[j]] >= 0)
            throw std::logic_error(
                "select_beta_hat: pivot fails to commute with a simple root space; "
                "base orientation bug");
    }
    root_string(rs, rs.base[0], picked); // throws if no string exists
    return picked;
}

std::vector<int> root_string(const RootSystem& rs, int from, int to) {
    if (from < 0 || from >= rs.n_roots() || to < 0 || to >= rs.n_roots())
        throw std::invalid_argument("root_string: root index out of range");
    std::vector<int> parent(rs.n_roots(), -2);
    std::queue<int> q;
    parent[from] = -1;
    q.push(from);
    while (!q.empty() && parent[to] == -2) {
        int cur = q.front();
        q.pop();
        for (int j = 1; j < rs.rank(); ++j) {
            int nxt = rs.sum_of[cur][rs.base[j]];
            if (nxt >= 0 && parent[nxt] == -2) {
                parent[nxt] = cur;
                q.push(nxt);
            }
        }
    }
    if (parent[to] == -2)
        throw std::logic_error("root_string: no chain of simple increments; "
                               "base orientation bug");
    std::vector<int> path;
    for (int cur = to; cur != -1; cur = parent[cur]) path.push_back(cur);
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

// Solve for an element of the base span on which every row functional
// vanishes. Rows and the result are ambient; the computation runs in base
// coordinates where the system is square.
std::vector<QVec> span_kernel(const RootSystem& rs, const std::vector<QVec>& functionals) {
    std::vector<QVec> basis = rs.base_vectors();
    std::vector<QVec> rows;
    for (const QVec& f : functionals) {
        QVec row(basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) row[k] = dot(f, basis[k]);
        rows.push_back(std::move(row));
    }
    std::vector<QVec> out;
    for (const QVec& x : nullspace(rows, basis.size())) {
        QVec s(rs.ambient_dim, Rat(0));
        for (std::size_t k = 0; k < basis.size(); ++k) s = add(s, scaled(basis[k], x[k]));
        out.push_back(primitive_scale(s));
    }
    return out;
}

bool proportional_either_sign(const QVec& a, const QVec& b) {
    return positively_proportional(a, b) || positively_proportional(a, negated(b));
}

} // namespace

QVec select_s1(const RootSystem& rs, const QVec& lambda) {
    QVec f = rs.canonicalize_functional(lambda);
    std::vector<QVec> walls;
    for (int j = 1; j < rs.rank(); ++j) walls.push_back(rs.roots[rs.base[j]].v);
    std::vector<QVec> kernel = span_kernel(rs, walls);
    if (kernel.size() != 1)
        throw std::logic_error("select_s1: kernel of the wall functionals is not a line");
    QVec s = kernel.front();
    int sg = sign_of(dot(f, s));
    if (sg == 0)
        throw std::invalid_argument(
            "select_s1: functional lies in the span of the non-distinguished simples; "
            "call choose_base first");
    if (sg < 0) s = negated(s);
    return s;
}

int choose_beta_prime(const RootSystem& rs, const QVec& lambda) {
    QVec f = rs.canonicalize_functional(lambda);
    int beta_hat = select_beta_hat(rs);
    if (!proportional_either_sign(f, rs.roots[beta_hat].v)) return beta_hat;
    int alpha1 = rs.base[0];
    if (!proportional_either_sign(f, rs.roots[alpha1].v)) return alpha1;
    throw std::logic_error(
        "choose_beta_prime: functional proportional to both pivots, which are "
        "not proportional to each other");
}

QVec select_s2(const RootSystem& rs, int beta_prime, const QVec& lambda2) {
    if (beta_prime < 0 || beta_prime >= rs.n_roots())
        throw std::invalid_argument("select_s2: root index out of range");
    QVec f = rs.canonicalize_functional(lambda2);
    if (proportional_either_sign(f, rs.roots[beta_prime].v))
        throw InfeasibleSelectionError(
            "select_s2: functional proportional to the pivot; its kernel carries "
            "no positive direction");
    std::vector<QVec> kernel = span_kernel(rs, {rs.roots[beta_prime].v});
    for (const QVec& s : kernel) {
        int sg = sign_of(dot(f, s));
        if (sg != 0) return sg > 0 ? s : negated(s);
    }
    throw std::logic_error("select_s2: functional vanishes on the pivot kernel "
                           "yet is not proportional to the pivot");
}

namespace {

std::set<int> class_set_of_roots(const RootSystem& rs, const std::vector<int>& ids) {
    std::set<int> out;
    for (int i : ids) out.insert(rs.class_of[i]);
    return out;
}

std::set<int> negated_classes(const RootSystem& rs, const std::set<int>& cls) {
    std::set<int> out = cls;
    for (int c : cls) out.insert(rs.class_of[rs.neg_of[rs.classes[c].roots.front()]]);
    return out;
}

// True when no member of the class sums with any of the given roots to a
// root or to zero, i.e. the two root spaces commute at the group level.
// The zero case matters: beta and -beta bracket into the Cartan part.
bool class_commutes(const RootSystem& rs, int cls, const std::vector<int>& with) {
    for (int x : rs.classes[cls].roots) {
        for (int b : with) {
            if (rs.sum_of[x][b] >= 0 || rs.neg_of[x] == b) return false;
        }
    }
    return true;
}

} // namespace

AveragingTrace run_averaging(const RootSystem& rs, const QVec& lambda) {
    if (rs.rank() < 2)
        throw CapabilityError("run_averaging: needs rank >= 2");

    AveragingTrace tr;
    tr.type = rs.type;
    tr.lambda = lambda;

    WeylElement w = choose_base(rs, lambda);
    tr.word = w.word;
    tr.lambda_prime = apply_word(rs, w.word, rs.canonicalize_functional(lambda));
    tr.beta_hat = select_beta_hat(rs);
    tr.string_path = root_string(rs, rs.base[0], tr.beta_hat);

    auto push = [&tr](Rule rule, std::vector<int> roots, QVec witness, InvarianceSet st) {
        tr.steps.push_back({rule, std::move(roots), std::move(witness), std::move(st)});
    };

    // Stage one: average over the subgroup the non-distinguished simple
    // root spaces generate, then upgrade through the diagonal.
    QVec s1 = select_s1(rs, tr.lambda_prime);
    if (sign_of(dot(tr.lambda_prime, s1)) <= 0)
        throw SideConditionError(1, Rule::AverageOverU, "witness not strictly positive");
    std::set<int> u_seed;
    for (int j = 1; j < rs.rank(); ++j) u_seed.insert(rs.class_of[rs.base[j]]);
    SaturatedSubalgebra u = close_classes(rs, u_seed);
    std::vector<int> u_roots =
        roots_of_classes(rs, std::vector<int>(u.classes.begin(), u.classes.end()));

    InvarianceSet state{u.classes, false};
    push(Rule::AverageOverU, u_roots, s1, state);

    state.a_invariant = true;
    push(Rule::AverageOverA, {}, s1, state);

    if (!state.a_invariant)
        throw SideConditionError(3, Rule::RatnerNegation, "diagonal invariance missing");
    state.classes = negated_classes(rs, state.classes);
    push(Rule::RatnerNegation, {}, s1, state);

    // Stage two: re-average over the pivot's root space. Everything from
    // stage one that commutes with it survives the push-forward.
    std::set<int> pool = state.classes;
    tr.beta_prime = choose_beta_prime(rs, tr.lambda_prime);
    QVec s2 = select_s2(rs, tr.beta_prime, tr.lambda_prime);
    if (sign_of(dot(tr.lambda_prime, s2)) <= 0)
        throw SideConditionError(4, Rule::AverageOverU, "witness not strictly positive");

    int bp_class = rs.class_of[tr.beta_prime];
    std::vector<int> bp_roots = rs.classes[bp_class].roots;
    std::sort(bp_roots.begin(), bp_roots.end());
    state = InvarianceSet{{bp_class}, false};
    push(Rule::AverageOverU, bp_roots, s2, state);

    std::vector<int> transferred_roots;
    for (int c : pool) {
        if (c != bp_class && class_commutes(rs, c, bp_roots)) {
            state.classes.insert(c);
            for (int i : rs.classes[c].roots) transferred_roots.push_back(i);
        }
    }
    std::sort(transferred_roots.begin(), transferred_roots.end());
    push(Rule::CommutationTransfer, transferred_roots, s2, state);

    state.a_invariant = true;
    push(Rule::AverageOverA, {}, s2, state);

    state.classes = negated_classes(rs, state.classes);
    push(Rule::RatnerNegation, {}, s2, state);

    state.classes = close_classes(rs, state.classes).classes;
    push(Rule::AdditionClosure, {}, s2, state);

    tr.final_state = state;
    if (static_cast<int>(state.classes.size()) != rs.n_classes())
        throw SideConditionError(8, Rule::AdditionClosure,
                                 "falsification: closure does not cover the system");
    return tr;
}

namespace {

struct ReplayFailure {
    int step;
    std::string detail;
};

void check_header(const RootSystem& rs, const AveragingTrace& tr) {
    auto fail = [](const std::string& d) { throw ReplayFailure{-1, d}; };
    if (tr.type.family != rs.type.family || tr.type.rank != rs.type.rank)
        fail("trace type does not match the system");
    if (static_cast<int>(tr.lambda.size()) != rs.ambient_dim)
        fail("lambda has the wrong dimension");
    QVec f = rs.canonicalize_functional(tr.lambda);
    if (is_zero(f)) fail("lambda vanishes on the span of the base");
    for (int p : tr.word) {
        if (p < 0 || p >= rs.rank()) fail("word entry out of range");
    }
    if (static_cast<int>(tr.lambda_prime.size()) != rs.ambient_dim)
        fail("transformed functional has the wrong dimension");
    QVec image = apply_word(rs, tr.word, f);
    if (image != tr.lambda_prime) fail("transformed functional does not match the word");
    if (span_contains(rs.nondistinguished_base_vectors(), tr.lambda_prime))
        fail("transformed functional still lies on the wall");
    if (tr.beta_hat != select_beta_hat(rs)) fail("pivot is not the one this family uses");
    if (tr.string_path.empty() || tr.string_path.front() != rs.base[0] ||
        tr.string_path.back() != tr.beta_hat)
        fail("root string endpoints are wrong");
    for (std::size_t k = 1; k < tr.string_path.size(); ++k) {
        int prev = tr.string_path[k - 1], cur = tr.string_path[k];
        if (prev < 0 || cur < 0 || prev >= rs.n_roots() || cur >= rs.n_roots())
            fail("root string index out of range");
        bool linked = false;
        for (int j = 1; j < rs.rank() && !linked; ++j)
            linked = rs.sum_of[prev][rs.base[j]] == cur;
        if (!linked) fail("root string link is not a simple increment");
    }
    if (tr.beta_prime != tr.beta_hat && tr.beta_prime != rs.base[0])
        fail("second pivot is neither the first pivot nor the first simple root");
    QVec fp = rs.canonicalize_functional(tr.lambda_prime);
    if (proportional_either_sign(fp, rs.roots[tr.beta_prime].v))
        fail("second pivot is proportional to the functional");
}

void check_u_average(const RootSystem& rs, const AveragingStep& st, int num) {
    auto fail = [num](const std::string& d) { throw ReplayFailure{num, d}; };
    if (st.subgroup_roots.empty()) fail("no subgroup recorded");
    std::vector<char> in(rs.n_roots(), 0);
    for (int i : st.subgroup_roots) {
        if (i < 0 || i >= rs.n_roots()) fail("subgroup root out of range");
        in[i] = 1;
    }
    for (int i : st.subgroup_roots) {
        if (in[rs.neg_of[i]]) fail("subgroup contains an opposite pair, so is not unipotent");
        for (int m : rs.classes[rs.class_of[i]].roots) {
            if (!in[m]) fail("subgroup splits a coarse class");
        }
        for (int j : st.subgroup_roots) {
            int s = rs.sum_of[i][j];
            if (s >= 0 && !in[s]) fail("subgroup is not addition-closed");
        }
        if (sign_of(dot(rs.roots[i].v, st.witness)) != 0)
            fail("witness is not in the subgroup's centralizer");
    }
}

} // namespace

ReplayReport replay(const RootSystem& rs, const AveragingTrace& tr) {
    ReplayReport rep;
    try {
        check_header(rs, tr);
        QVec fp = rs.canonicalize_functional(tr.lambda_prime);

        InvarianceSet state; // nothing known before the first step
        std::set<int> pool;  // invariances predating the latest U-average
        std::vector<int> last_u;
        for (std::size_t k = 0; k < tr.steps.size(); ++k) {
            const AveragingStep& st = tr.steps[k];
            const int num = static_cast<int>(k) + 1;
            auto fail = [num](const std::string& d) { throw ReplayFailure{num, d}; };

            if (static_cast<int>(st.witness.size()) != rs.ambient_dim)
                fail("witness has the wrong dimension");
            if (sign_of(dot(fp, st.witness)) <= 0)
                fail("exponent witness not strictly positive");

            switch (st.rule) {
            case Rule::AverageOverU:
                check_u_average(rs, st, num);
                pool = state.classes;
                last_u = st.subgroup_roots;
                state.classes = class_set_of_roots(rs, st.subgroup_roots);
                state.a_invariant = false;
                break;
            case Rule::AverageOverA:
                state.a_invariant = true;
                break;
            case Rule::RatnerNegation:
                if (!state.a_invariant) fail("negation without diagonal invariance");
                state.classes = negated_classes(rs, state.classes);
                break;
            case Rule::CommutationTransfer: {
                if (last_u.empty()) fail("transfer with no preceding subgroup average");
                for (int i : st.subgroup_roots) {
                    if (i < 0 || i >= rs.n_roots()) fail("transferred root out of range");
                }
                std::set<int> moved = class_set_of_roots(rs, st.subgroup_roots);
                for (int c : moved) {
                    if (!pool.count(c)) fail("transferred class was not previously invariant");
                    if (!class_commutes(rs, c, last_u))
                        fail("transferred class does not commute with the averaged subgroup");
                    state.classes.insert(c);
                }
                break;
            }
            case Rule::AdditionClosure:
                state.classes = close_classes(rs, state.classes).classes;
                break;
            }

            if (!(state == st.after)) fail("recorded state does not match the rule's effect");
        }
        if (!(state == tr.final_state))
            throw ReplayFailure{static_cast<int>(tr.steps.size()) + 1,
                                "final state does not match the replayed one"};
    } catch (const ReplayFailure& f) {
        rep.ok = false;
        rep.failing_step = f.step;
        rep.detail = f.detail;
    } catch (const std::exception& e) {
        rep.ok = false;
        rep.failing_step = -1;
        rep.detail = e.what();
    }
    return rep;
}

ReplayReport replay(const AveragingTrace& tr) {
    try {
        validate_type(tr.type);
    } catch (const std::exception& e) {
        return {false, -1, e.what()};
    }
    return replay(build_root_system(tr.type), tr);
}

QVec random_lambda(const RootSystem& rs, std::uint64_t seed, int type_index, int trial) {
    for (std::uint32_t salt = 0; salt < 64; ++salt) {
        std::uint32_t mix = static_cast<std::uint32_t>(seed) ^
                            (0x9e3779b9u * static_cast<std::uint32_t>(type_index + 1)) ^
                            (0x85ebca6bu * static_cast<std::uint32_t>(trial + 1)) ^ salt;
        std::mt19937 rng(mix);
        QVec v(rs.ambient_dim);
        for (int k = 0; k < rs.ambient_dim; ++k) {
            long num = static_cast<long>(rng() % 25) - 12;
            long den = 1 + static_cast<long>(rng() % 3);
            v[k] = Rat(num, den);
            v[k].canonicalize(); // mpq does not reduce p/q on its own
        }
        if (!is_zero(rs.canonicalize_functional(v))) return v;
    }
    throw std::logic_error("random_lambda: could not find a usable functional");
}

namespace {

void sweep_trial(const RootSystem& rs, int type_index, int trial, std::uint64_t seed,
                 SweepResult& acc) {
    QVec lambda = random_lambda(rs, seed, type_index, trial);
    AveragingTrace tr = run_averaging(rs, lambda);
    ++acc.runs;
    if (static_cast<int>(tr.final_state.classes.size()) == rs.n_classes() &&
        tr.final_state.a_invariant)
        ++acc.full;
    if (replay(rs, tr).ok) ++acc.replay_ok;
    bool positive = true;
    QVec fp = rs.canonicalize_functional(tr.lambda_prime);
    for (const AveragingStep& st : tr.steps) {
        if (sign_of(dot(fp, st.witness)) <= 0) positive = false;
    }
    if (positive) ++acc.witness_ok;
}

} // namespace

SweepResult averaging_sweep_serial(const std::vector<RootSystemType>& types, int trials,
                                   std::uint64_t seed) {
    std::vector<RootSystem> systems;
    systems.reserve(types.size());
    for (const RootSystemType& t : types) systems.push_back(build_root_system(t));
    SweepResult acc;
    for (std::size_t t = 0; t < systems.size(); ++t) {
        for (int k = 0; k < trials; ++k)
            sweep_trial(systems[t], static_cast<int>(t), k, seed, acc);
    }
    return acc;
}

SweepResult averaging_sweep(const std::vector<RootSystemType>& types, int trials,
                            std::uint64_t seed) {
    std::vector<RootSystem> systems;
    systems.reserve(types.size());
    for (const RootSystemType& t : types) systems.push_back(build_root_system(t));
    const std::int64_t total = static_cast<std::int64_t>(systems.size()) * trials;
    SweepResult acc;
#pragma omp parallel
    {
        SweepResult local;
#pragma omp for schedule(dynamic, 8)
        for (std::int64_t i = 0; i < total; ++i) {
            sweep_trial(systems[i / trials], static_cast<int>(i / trials),
                        static_cast<int>(i % trials), seed, local);
        }
#pragma omp critical
        {
            acc.runs += local.runs;
            acc.full += local.full;
            acc.replay_ok += local.replay_ok;
            acc.witness_ok += local.witness_ok;
        }
    }
    return acc;
}

} // namespace resroot
