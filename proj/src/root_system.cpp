#include "resroot/root_system.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace resroot {

std::string family_name(Family f) {
    switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::BC: return "BC";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
    case Family::F4: return "F4";
    case Family::G2: return "G2";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    static const std::map<std::string, Family> names = {
        {"A", Family::A},   {"B", Family::B},   {"C", Family::C},   {"D", Family::D},
        {"BC", Family::BC}, {"E6", Family::E6}, {"E7", Family::E7}, {"E8", Family::E8},
        {"F4", Family::F4}, {"G2", Family::G2}};
    auto it = names.find(s);
    if (it == names.end())
        throw std::invalid_argument("unknown family: " + s);
    return it->second;
}

void validate_type(RootSystemType t) {
    auto need_fixed = [&](int r) {
        if (t.rank != r)
            throw std::invalid_argument("family " + family_name(t.family) +
                                        " has fixed rank " + std::to_string(r));
    };
    auto need_min = [&](int r) {
        if (t.rank < r)
            throw std::invalid_argument("family " + family_name(t.family) +
                                        " requires rank >= " + std::to_string(r));
    };
    switch (t.family) {
    case Family::A: need_min(1); break;
    case Family::B: need_min(2); break;
    case Family::C: need_min(2); break;
    case Family::D: need_min(4); break;
    case Family::BC: need_min(1); break;
    case Family::E6: need_fixed(6); break;
    case Family::E7: need_fixed(7); break;
    case Family::E8: need_fixed(8); break;
    case Family::F4: need_fixed(4); break;
    case Family::G2: need_fixed(2); break;
    }
}

namespace {

QVec unit(int dim, int i, const Rat& c = Rat(1)) {
    QVec v(dim, Rat(0));
    v[i] = c;
    return v;
}

// Hash key: coordinates doubled so that half-integer realizations (E8, F4)
// become integers. Vectors off the half-integer lattice cannot be roots and
// get an empty key.
std::string key_of(const QVec& v) {
    std::string s;
    for (const Rat& x : v) {
        Rat d = x * 2;
        if (d.get_den() != 1)
            return std::string();
        s += d.get_num().get_str();
        s += ',';
    }
    return s;
}

struct RawSystem {
    std::vector<QVec> roots;
    std::vector<QVec> base; // Bourbaki order
    int dim = 0;
};

RawSystem enumerate_classical(RootSystemType t) {
    RawSystem raw;
    const int l = t.rank;
    switch (t.family) {
    case Family::A: {
        raw.dim = l + 1;
        for (int i = 0; i <= l; ++i)
            for (int j = 0; j <= l; ++j)
                if (i != j)
                    raw.roots.push_back(sub(unit(raw.dim, i), unit(raw.dim, j)));
        for (int i = 0; i < l; ++i)
            raw.base.push_back(sub(unit(raw.dim, i), unit(raw.dim, i + 1)));
        break;
    }
    case Family::B:
    case Family::C:
    case Family::D:
    case Family::BC: {
        raw.dim = l;
        for (int i = 0; i < l; ++i)
            for (int j = i + 1; j < l; ++j)
                for (int si : {1, -1})
                    for (int sj : {1, -1}) {
                        QVec v(raw.dim, Rat(0));
                        v[i] = si;
                        v[j] = sj;
                        raw.roots.push_back(v);
                    }
        const bool shorts = t.family == Family::B || t.family == Family::BC;
        const bool longs = t.family == Family::C || t.family == Family::BC;
        for (int i = 0; i < l; ++i) {
            if (shorts) {
                raw.roots.push_back(unit(raw.dim, i));
                raw.roots.push_back(unit(raw.dim, i, Rat(-1)));
            }
            if (longs) {
                raw.roots.push_back(unit(raw.dim, i, Rat(2)));
                raw.roots.push_back(unit(raw.dim, i, Rat(-2)));
            }
        }
        for (int i = 0; i + 1 < l; ++i)
            raw.base.push_back(sub(unit(raw.dim, i), unit(raw.dim, i + 1)));
        if (t.family == Family::B || t.family == Family::BC)
            raw.base.push_back(unit(raw.dim, l - 1));
        else if (t.family == Family::C)
            raw.base.push_back(unit(raw.dim, l - 1, Rat(2)));
        else
            raw.base.push_back(add(unit(raw.dim, l - 2), unit(raw.dim, l - 1)));
        break;
    }
    default:
        throw std::logic_error("enumerate_classical: not a classical family");
    }
    return raw;
}

RawSystem enumerate_g2() {
    RawSystem raw;
    raw.dim = 3;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j)
                raw.roots.push_back(sub(unit(3, i), unit(3, j)));
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        QVec v(3, Rat(0));
        v[i] = 2;
        v[j] = -1;
        v[k] = -1;
        raw.roots.push_back(v);
        raw.roots.push_back(negated(v));
    }
    // Deduplicate the long roots emitted twice by the loop above.
    std::set<std::string> seen;
    std::vector<QVec> uniq;
    for (const QVec& v : raw.roots)
        if (seen.insert(key_of(v)).second)
            uniq.push_back(v);
    raw.roots = std::move(uniq);
    raw.base.push_back(sub(unit(3, 0), unit(3, 1)));
    QVec a2(3, Rat(0));
    a2[0] = -2;
    a2[1] = 1;
    a2[2] = 1;
    raw.base.push_back(a2);
    return raw;
}

RawSystem enumerate_f4() {
    RawSystem raw;
    raw.dim = 4;
    for (int i = 0; i < 4; ++i) {
        raw.roots.push_back(unit(4, i));
        raw.roots.push_back(unit(4, i, Rat(-1)));
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int si : {1, -1})
                for (int sj : {1, -1}) {
                    QVec v(4, Rat(0));
                    v[i] = si;
                    v[j] = sj;
                    raw.roots.push_back(v);
                }
    for (int mask = 0; mask < 16; ++mask) {
        QVec v(4);
        for (int i = 0; i < 4; ++i)
            v[i] = Rat((mask >> i) & 1 ? -1 : 1, 2);
        raw.roots.push_back(v);
    }
    raw.base.push_back(sub(unit(4, 1), unit(4, 2)));
    raw.base.push_back(sub(unit(4, 2), unit(4, 3)));
    raw.base.push_back(unit(4, 3));
    QVec a4(4);
    a4[0] = Rat(1, 2);
    a4[1] = Rat(-1, 2);
    a4[2] = Rat(-1, 2);
    a4[3] = Rat(-1, 2);
    raw.base.push_back(a4);
    return raw;
}

RawSystem enumerate_e8() {
    RawSystem raw;
    raw.dim = 8;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            for (int si : {1, -1})
                for (int sj : {1, -1}) {
                    QVec v(8, Rat(0));
                    v[i] = si;
                    v[j] = sj;
                    raw.roots.push_back(v);
                }
    for (int mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(mask) % 2 != 0)
            continue; // even number of minus signs
        QVec v(8);
        for (int i = 0; i < 8; ++i)
            v[i] = Rat((mask >> i) & 1 ? -1 : 1, 2);
        raw.roots.push_back(v);
    }
    QVec a1(8, Rat(-1, 2));
    a1[0] = Rat(1, 2);
    a1[7] = Rat(1, 2);
    raw.base.push_back(a1);
    raw.base.push_back(add(unit(8, 0), unit(8, 1)));
    raw.base.push_back(sub(unit(8, 1), unit(8, 0)));
    for (int i = 2; i <= 6; ++i)
        raw.base.push_back(sub(unit(8, i), unit(8, i - 1)));
    return raw;
}

// E7 and E6 are carved out of E8: the roots whose coefficients vanish on
// the trailing Bourbaki nodes.
RawSystem enumerate_e67(int keep) {
    RawSystem e8 = enumerate_e8();
    RawSystem raw;
    raw.dim = 8;
    raw.base.assign(e8.base.begin(), e8.base.begin() + keep);
    for (const QVec& v : e8.roots) {
        auto c = coordinates_in_basis(e8.base, v);
        if (!c)
            throw std::logic_error("E8 root outside its own base span");
        bool inside = true;
        for (int k = keep; k < 8; ++k)
            if ((*c)[k] != 0)
                inside = false;
        if (inside)
            raw.roots.push_back(v);
    }
    return raw;
}

RawSystem enumerate_family(RootSystemType t) {
    switch (t.family) {
    case Family::A:
    case Family::B:
    case Family::C:
    case Family::D:
    case Family::BC:
        return enumerate_classical(t);
    case Family::G2:
        return enumerate_g2();
    case Family::F4:
        return enumerate_f4();
    case Family::E8:
        return enumerate_e8();
    case Family::E7:
        return enumerate_e67(7);
    case Family::E6:
        return enumerate_e67(6);
    }
    throw std::logic_error("unreachable");
}

// Assembles the full datum for a fixed base ordering: integer coefficients,
// canonical root order, lookup tables, coarse classes, extremal roots.
RootSystem finalize(RootSystemType t, const std::vector<QVec>& vectors,
                    const std::vector<QVec>& base_vecs, int dist_bourbaki) {
    RootSystem rs;
    rs.type = t;
    rs.ambient_dim = static_cast<int>(vectors[0].size());
    rs.distinguished_bourbaki = dist_bourbaki;

    for (const QVec& v : vectors) {
        auto c = coordinates_in_basis(base_vecs, v);
        if (!c)
            throw std::logic_error("root outside base span");
        Root r;
        r.v = v;
        r.height = 0;
        int pos = 0, neg = 0;
        for (const Rat& x : *c) {
            if (x.get_den() != 1)
                throw std::logic_error("non-integer base coefficient");
            long xi = x.get_num().get_si();
            r.pi.push_back(xi);
            r.height += xi;
            if (xi > 0)
                ++pos;
            if (xi < 0)
                ++neg;
        }
        if ((pos && neg) || (!pos && !neg))
            throw std::logic_error("mixed-sign base coefficients");
        rs.roots.push_back(std::move(r));
    }

    std::sort(rs.roots.begin(), rs.roots.end(), [](const Root& x, const Root& y) {
        if (x.height != y.height)
            return x.height < y.height;
        return x.pi < y.pi;
    });

    const int n = rs.n_roots();
    for (int i = 0; i < n; ++i)
        rs.index_by_key[key_of(rs.roots[i].v)] = i;
    for (const QVec& b : base_vecs)
        rs.base.push_back(rs.find_root(b));

    rs.neg_of.resize(n);
    rs.sum_of.assign(n, std::vector<int32_t>(n, -1));
    // The n^2 sum table is the construction hot spot. All roots live on the
    // half-integer lattice, so doubling once turns the pair sums into plain
    // machine integers, and the height bound prunes most pairs before any
    // hash lookup. Keys match key_of digit for digit.
    std::vector<std::vector<long>> doubled(n);
    for (int i = 0; i < n; ++i) {
        doubled[i].reserve(rs.ambient_dim);
        for (const Rat& x : rs.roots[i].v) {
            Rat d = x * 2;
            if (d.get_den() != 1)
                throw std::logic_error("root off the half-integer lattice");
            doubled[i].push_back(d.get_num().get_si());
        }
    }
    const long top_height = rs.roots[n - 1].height;
    std::string key;
    std::vector<long> pair_sum(rs.ambient_dim);
    for (int i = 0; i < n; ++i) {
        rs.neg_of[i] = rs.find_root(negated(rs.roots[i].v));
        for (int j = 0; j < n; ++j) {
            long h = rs.roots[i].height + rs.roots[j].height;
            if (h == 0 || h > top_height || h < -top_height) continue;
            for (int c = 0; c < rs.ambient_dim; ++c)
                pair_sum[c] = doubled[i][c] + doubled[j][c];
            key.clear();
            for (long c : pair_sum) {
                key += std::to_string(c);
                key += ',';
            }
            auto it = rs.index_by_key.find(key);
            if (it != rs.index_by_key.end()) rs.sum_of[i][j] = it->second;
        }
    }

    rs.class_of.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (rs.class_of[i] >= 0)
            continue;
        if (rs.find_root(scaled(rs.roots[i].v, Rat(1, 2))) >= 0)
            continue; // handled from its half
        CoarseClass cls;
        cls.roots.push_back(i);
        int dbl = rs.find_root(scaled(rs.roots[i].v, Rat(2)));
        if (dbl >= 0) {
            if (t.family != Family::BC)
                throw std::logic_error("divisible root outside BC");
            cls.roots.push_back(dbl);
        }
        int id = rs.n_classes();
        for (int r : cls.roots)
            rs.class_of[r] = id;
        rs.classes.push_back(std::move(cls));
    }
    for (int i = 0; i < n; ++i)
        if (rs.class_of[i] < 0)
            throw std::logic_error("root missed by class partition");

    long hmax = rs.roots[n - 1].height;
    std::vector<int> at_max, at_next;
    for (int i = 0; i < n; ++i) {
        if (rs.roots[i].height == hmax)
            at_max.push_back(i);
        if (rs.roots[i].height == hmax - 1)
            at_next.push_back(i);
    }
    if (at_max.size() != 1)
        throw std::logic_error("highest root not unique");
    rs.highest = at_max[0];
    rs.second_highest = at_next.size() == 1 ? at_next[0] : -1;
    return rs;
}

bool uses_highest(Family f) {
    return f == Family::A || f == Family::B || f == Family::D || f == Family::E6 ||
           f == Family::E7;
}

// Breadth-first climb from `from` to `target` adding one simple root per
// step, never the one at base position `avoid`.
bool string_reachable(const RootSystem& rs, int from, int target, int avoid) {
    if (from == target)
        return true;
    std::vector<char> seen(rs.n_roots(), 0);
    std::queue<int> q;
    q.push(from);
    seen[from] = 1;
    while (!q.empty()) {
        int cur = q.front();
        q.pop();
        for (int k = 0; k < rs.rank(); ++k) {
            if (k == avoid)
                continue;
            int nxt = rs.sum_of[cur][rs.base[k]];
            if (nxt < 0 || seen[nxt])
                continue;
            if (nxt == target)
                return true;
            seen[nxt] = 1;
            q.push(nxt);
        }
    }
    return false;
}

// The distinguished node: the base position whose pairing (alpha_1, beta_hat)
// satisfies both the commutation property and the root-string property.
// Ties go to the least Bourbaki index.
int pick_distinguished(const RootSystem& rs) {
    int beta_hat;
    if (uses_highest(rs.type.family)) {
        beta_hat = rs.highest;
    } else {
        if (rs.second_highest < 0)
            throw std::logic_error("second-highest root not unique where required");
        beta_hat = rs.second_highest;
    }
    for (int c = 0; c < rs.rank(); ++c) {
        bool commutes = true;
        for (int j = 0; j < rs.rank() && commutes; ++j)
            if (j != c && rs.sum_of[beta_hat][rs.base[j]] >= 0)
                commutes = false;
        if (!commutes)
            continue;
        if (string_reachable(rs, rs.base[c], beta_hat, c))
            return c;
    }
    throw std::logic_error("no base orientation satisfies the pairing properties");
}

} // namespace

int RootSystem::find_root(const QVec& v) const {
    std::string k = key_of(v);
    if (k.empty())
        return -1;
    auto it = index_by_key.find(k);
    return it == index_by_key.end() ? -1 : it->second;
}

int RootSystem::find_root_pi(const std::vector<long>& pi) const {
    QVec v(ambient_dim, Rat(0));
    for (int k = 0; k < rank(); ++k)
        v = add(v, scaled(roots[base[k]].v, Rat(pi[k])));
    return find_root(v);
}

std::vector<QVec> RootSystem::base_vectors() const {
    std::vector<QVec> out;
    for (int b : base)
        out.push_back(roots[b].v);
    return out;
}

std::vector<QVec> RootSystem::nondistinguished_base_vectors() const {
    std::vector<QVec> out;
    for (std::size_t k = 1; k < base.size(); ++k)
        out.push_back(roots[base[k]].v);
    return out;
}

QVec RootSystem::canonicalize_functional(const QVec& ambient) const {
    if (static_cast<int>(ambient.size()) != ambient_dim)
        throw std::invalid_argument("functional has wrong ambient dimension");
    return project_onto_span(base_vectors(), ambient);
}

RootSystem build_root_system(RootSystemType t) {
    validate_type(t);
    RawSystem raw = enumerate_family(t);
    RootSystem pre = finalize(t, raw.roots, raw.base, -1);
    int c = pick_distinguished(pre);
    std::vector<QVec> reordered;
    reordered.push_back(raw.base[c]);
    for (int j = 0; j < static_cast<int>(raw.base.size()); ++j)
        if (j != c)
            reordered.push_back(raw.base[j]);
    return finalize(t, raw.roots, reordered, c);
}

const Root& highest_root(const RootSystem& rs) { return rs.roots[rs.highest]; }

const Root& second_highest_root(const RootSystem& rs) {
    if (rs.second_highest < 0)
        throw AmbiguityError("second-highest root is not unique for type " +
                             family_name(rs.type.family) + std::to_string(rs.type.rank));
    return rs.roots[rs.second_highest];
}

std::vector<int> closure_roots(const RootSystem& rs, std::vector<int> seed) {
    std::vector<char> in(rs.n_roots(), 0);
    for (int i : seed)
        in[i] = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int i = 0; i < rs.n_roots(); ++i) {
            if (!in[i])
                continue;
            for (int j = i; j < rs.n_roots(); ++j) {
                if (!in[j])
                    continue;
                int s = rs.sum_of[i][j];
                if (s >= 0 && !in[s]) {
                    in[s] = 1;
                    grew = true;
                }
            }
        }
    }
    std::vector<int> out;
    for (int i = 0; i < rs.n_roots(); ++i)
        if (in[i])
            out.push_back(i);
    return out;
}

std::vector<int> classes_of_roots(const RootSystem& rs, const std::vector<int>& roots) {
    std::set<int> ids;
    for (int r : roots)
        ids.insert(rs.class_of[r]);
    return std::vector<int>(ids.begin(), ids.end());
}

std::vector<int> roots_of_classes(const RootSystem& rs, const std::vector<int>& class_ids) {
    std::vector<int> out;
    for (int c : class_ids)
        for (int r : rs.classes[c].roots)
            out.push_back(r);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace resroot
