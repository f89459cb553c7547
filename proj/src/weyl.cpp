#include "resroot/weyl.hpp"

#include <queue>
#include <set>

namespace resroot {

QVec reflect(const RootSystem& rs, int k, const QVec& v) {
    const QVec& a = rs.simple(k).v;
    Rat c = 2 * dot(v, a) / dot(a, a);
    return sub(v, scaled(a, c));
}

QVec apply_word(const RootSystem& rs, const std::vector<int>& word, const QVec& v) {
    QVec cur = v;
    for (int k : word)
        cur = reflect(rs, k, cur);
    return cur;
}

QVec apply_inverse_word(const RootSystem& rs, const std::vector<int>& word, const QVec& v) {
    QVec cur = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        cur = reflect(rs, *it, cur);
    return cur;
}

std::vector<QVec> identity_matrix(int dim) {
    std::vector<QVec> m(dim, QVec(dim, Rat(0)));
    for (int i = 0; i < dim; ++i)
        m[i][i] = 1;
    return m;
}

QVec apply_matrix(const std::vector<QVec>& m, const QVec& v) {
    QVec out(m.size(), Rat(0));
    for (std::size_t i = 0; i < m.size(); ++i)
        out[i] = dot(m[i], v);
    return out;
}

WeylElement make_weyl(const RootSystem& rs, std::vector<int> word) {
    WeylElement w;
    w.word = std::move(word);
    // Column-by-column: the matrix sends e_i to the word applied to e_i.
    const int d = rs.ambient_dim;
    w.matrix.assign(d, QVec(d, Rat(0)));
    for (int i = 0; i < d; ++i) {
        QVec e(d, Rat(0));
        e[i] = 1;
        QVec img = apply_word(rs, w.word, e);
        for (int r = 0; r < d; ++r)
            w.matrix[r][i] = img[r];
    }
    return w;
}

OrbitSearchResult weyl_orbit_search(const RootSystem& rs, const QVec& lambda,
                                    const std::function<bool(const QVec&)>& predicate,
                                    std::size_t cap) {
    struct Node {
        QVec v;
        std::vector<int> word;
    };
    auto key = [](const QVec& v) { return vec_str(v); };
    std::set<std::string> seen;
    std::queue<Node> q;
    q.push(Node{lambda, {}});
    seen.insert(key(lambda));
    while (!q.empty()) {
        Node cur = std::move(q.front());
        q.pop();
        if (predicate(cur.v)) {
            OrbitSearchResult res;
            res.element = make_weyl(rs, cur.word);
            res.image = cur.v;
            return res;
        }
        if (seen.size() > cap)
            throw SearchExhausted("weyl_orbit_search: cap reached without a match");
        for (int k = 0; k < rs.rank(); ++k) {
            QVec nxt = reflect(rs, k, cur.v);
            if (seen.insert(key(nxt)).second) {
                std::vector<int> w = cur.word;
                w.push_back(k);
                q.push(Node{std::move(nxt), std::move(w)});
            }
        }
    }
    throw SearchExhausted("weyl_orbit_search: orbit exhausted without a match");
}

std::vector<std::vector<int>> enumerate_weyl_permutations(const RootSystem& rs,
                                                          int max_rank) {
    if (rs.rank() > max_rank)
        throw CapabilityError("Weyl group enumeration is limited to rank " +
                              std::to_string(max_rank));
    const int n = rs.n_roots();
    std::vector<std::vector<int>> gens;
    for (int k = 0; k < rs.rank(); ++k) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) {
            int img = rs.find_root(reflect(rs, k, rs.roots[i].v));
            if (img < 0)
                throw std::logic_error("reflection left the root set");
            p[i] = img;
        }
        gens.push_back(std::move(p));
    }
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i)
        id[i] = i;
    std::set<std::vector<int>> seen{id};
    std::queue<std::vector<int>> q;
    q.push(id);
    while (!q.empty()) {
        std::vector<int> cur = std::move(q.front());
        q.pop();
        for (const auto& g : gens) {
            std::vector<int> nxt(n);
            for (int i = 0; i < n; ++i)
                nxt[i] = g[cur[i]];
            if (seen.insert(nxt).second)
                q.push(std::move(nxt));
        }
    }
    return std::vector<std::vector<int>>(seen.begin(), seen.end());
}

} // namespace resroot
