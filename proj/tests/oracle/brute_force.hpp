#pragma once

// Reference implementation for cross-checking the engine. Shares no code with
// the library: its own tables, its own bracketings, unpruned evaluation over
// every substitution and dense Gaussian elimination over Q.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using Vec = std::vector<long>;

struct Table {
    std::vector<std::string> labels;
    // prod[i][j] is the dense coordinate vector of e_i e_j
    std::vector<std::vector<Vec>> prod;

    std::size_t dim() const { return labels.size(); }

    void init(std::vector<std::string> names) {
        labels = std::move(names);
        prod.assign(dim(), std::vector<Vec>(dim(), Vec(dim(), 0)));
    }
    int index(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return static_cast<int>(i);
        return -1;
    }
};

inline std::string zname(int level, int pos) { return "z[" + std::to_string(level) + "," + std::to_string(pos) + "]"; }

inline Table bt(int T, int cap) {
    std::vector<std::string> names{"a", "b"};
    for (int i = 1; i <= cap; ++i)
        for (int j = 1; j <= T; ++j) names.push_back(zname(i, j));
    Table t;
    t.init(names);
    const int a = 0, b = 1;
    for (int i = 1; i <= cap; ++i)
        for (int j = 1; j <= T; ++j) {
            const int z = t.index(zname(i, j));
            if (j < T) t.prod[z][a][t.index(zname(i, j + 1))] = 1;
            if (j == T && i < cap) t.prod[z][b][t.index(zname(i + 1, 1))] = 1;
        }
    return t;
}

inline Table qn(int N) {
    std::vector<std::string> names;
    for (int s = 1; s <= N; ++s) names.push_back("th[" + std::to_string(s) + "]");
    Table t;
    t.init(names);
    for (int s = 1; s <= N; ++s)
        for (int u = 1; s + u <= N; ++u) t.prod[s - 1][u - 1][s + u - 1] = 1;
    return t;
}

inline Table tensor(const Table& x, const Table& y) {
    std::vector<std::string> names;
    for (const auto& u : x.labels)
        for (const auto& v : y.labels) names.push_back("<" + u + "," + v + ">");
    Table t;
    t.init(names);
    const std::size_t m = y.dim();
    for (std::size_t i1 = 0; i1 < x.dim(); ++i1)
        for (std::size_t j1 = 0; j1 < m; ++j1)
            for (std::size_t i2 = 0; i2 < x.dim(); ++i2)
                for (std::size_t j2 = 0; j2 < m; ++j2)
                    for (std::size_t k1 = 0; k1 < x.dim(); ++k1)
                        for (std::size_t k2 = 0; k2 < m; ++k2)
                            t.prod[i1 * m + j1][i2 * m + j2][k1 * m + k2] =
                                x.prod[i1][i2][k1] * y.prod[j1][j2][k2];
    return t;
}

inline Table direct_sum(const std::vector<Table>& parts) {
    std::vector<std::string> names;
    std::vector<std::size_t> offset;
    for (std::size_t p = 0; p < parts.size(); ++p) {
        offset.push_back(names.size());
        for (const auto& l : parts[p].labels) names.push_back(std::to_string(p + 1) + ":" + l);
    }
    Table t;
    t.init(names);
    for (std::size_t p = 0; p < parts.size(); ++p) {
        const auto& s = parts[p];
        for (std::size_t i = 0; i < s.dim(); ++i)
            for (std::size_t j = 0; j < s.dim(); ++j)
                for (std::size_t k = 0; k < s.dim(); ++k)
                    t.prod[offset[p] + i][offset[p] + j][offset[p] + k] = s.prod[i][j][k];
    }
    return t;
}

inline Table unitalize(const Table& x) {
    std::vector<std::string> names = x.labels;
    names.push_back("e");
    Table t;
    t.init(names);
    const std::size_t e = x.dim();
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < x.dim(); ++j)
            for (std::size_t k = 0; k < x.dim(); ++k) t.prod[i][j][k] = x.prod[i][j][k];
    for (std::size_t i = 0; i <= x.dim(); ++i) {
        t.prod[e][i][i] = 1;
        t.prod[i][e][i] = 1;
    }
    return t;
}

// ------------------------------------------------------------- bracketings

// Binary tree over leaves 0..n-1 in left-to-right order.
struct Tree {
    int leaf = -1;
    std::vector<Tree> kids;  // empty or exactly two
};

inline std::vector<Tree> trees(int first, int count) {
    if (count == 1) return {Tree{first, {}}};
    std::vector<Tree> out;
    for (int left = 1; left < count; ++left)
        for (const auto& l : trees(first, left))
            for (const auto& r : trees(first + left, count - left)) out.push_back(Tree{-1, {l, r}});
    return out;
}

inline Tree left_comb(int n) {
    Tree t{0, {}};
    for (int i = 1; i < n; ++i) t = Tree{-1, {t, Tree{i, {}}}};
    return t;
}

inline Vec multiply(const Table& t, const Vec& x, const Vec& y) {
    Vec out(t.dim(), 0);
    for (std::size_t i = 0; i < t.dim(); ++i) {
        if (!x[i]) continue;
        for (std::size_t j = 0; j < t.dim(); ++j) {
            if (!y[j]) continue;
            const long s = x[i] * y[j];
            for (std::size_t k = 0; k < t.dim(); ++k) out[k] += s * t.prod[i][j][k];
        }
    }
    return out;
}

inline bool is_zero(const Vec& v) {
    for (auto c : v)
        if (c) return false;
    return true;
}

// Value of the tree with leaf p replaced by basis vector tuple[p].
inline Vec eval_tree(const Table& t, const Tree& tr, const std::vector<int>& tuple) {
    if (tr.kids.empty()) {
        Vec v(t.dim(), 0);
        v[tuple[tr.leaf]] = 1;
        return v;
    }
    Vec l = eval_tree(t, tr.kids[0], tuple);
    if (is_zero(l)) return l;
    Vec r = eval_tree(t, tr.kids[1], tuple);
    if (is_zero(r)) return r;
    return multiply(t, l, r);
}

// ------------------------------------------------------------------ rank

// Incremental dense elimination over Q; keeps an echelon basis of the rows seen.
class RowSpace {
public:
    explicit RowSpace(std::size_t cols) : cols_(cols) {}

    bool insert(std::vector<mpq_class> row) {
        for (const auto& [pivot, basis] : rows_) {
            if (row[pivot] == 0) continue;
            const mpq_class f = row[pivot];
            for (std::size_t c = pivot; c < cols_; ++c)
                if (basis[c] != 0) row[c] -= f * basis[c];
        }
        std::size_t p = 0;
        while (p < cols_ && row[p] == 0) ++p;
        if (p == cols_) return false;
        const mpq_class inv = 1 / row[p];
        for (std::size_t c = p; c < cols_; ++c) row[c] *= inv;
        // back-substitute so every pivot column stays a unit column
        for (auto& [q, basis] : rows_)
            if (basis[p] != 0) {
                const mpq_class f = basis[p];
                for (std::size_t c = p; c < cols_; ++c) basis[c] -= f * row[c];
            }
        rows_.emplace(p, std::move(row));
        return true;
    }
    std::size_t rank() const { return rows_.size(); }

private:
    std::size_t cols_;
    std::map<std::size_t, std::vector<mpq_class>> rows_;
};

inline std::vector<std::vector<int>> permutations(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Calls visit(row) for every (substitution, coordinate) row of the evaluation
// matrix; row[c] is coordinate `coord` of column c at the substitution.
inline void for_each_row(const Table& t, int n, bool left_normed_only,
                         const std::function<void(const std::vector<long>&)>& visit) {
    std::vector<Tree> shapes = left_normed_only ? std::vector<Tree>{left_comb(n)} : trees(0, n);
    const auto perms = permutations(n);
    const std::size_t d = t.dim();
    std::size_t tuples = 1;
    for (int i = 0; i < n; ++i) tuples *= d;

    // value[s][tuple index] for every shape on every ordered tuple of basis vectors
    std::vector<std::vector<Vec>> value(shapes.size(), std::vector<Vec>(tuples));
    std::vector<int> tuple(n);
    for (std::size_t code = 0; code < tuples; ++code) {
        std::size_t c = code;
        for (int p = n - 1; p >= 0; --p) {
            tuple[p] = static_cast<int>(c % d);
            c /= d;
        }
        for (std::size_t s = 0; s < shapes.size(); ++s) {
            Vec v = eval_tree(t, shapes[s], tuple);
            if (!is_zero(v)) value[s][code] = std::move(v);
        }
    }

    const std::size_t cols = shapes.size() * perms.size();
    std::vector<int> subst(n);
    std::vector<long> row(cols);
    for (std::size_t code = 0; code < tuples; ++code) {
        std::size_t c = code;
        for (int v = n - 1; v >= 0; --v) {
            subst[v] = static_cast<int>(c % d);
            c /= d;
        }
        for (std::size_t coord = 0; coord < d; ++coord) {
            bool any = false;
            for (std::size_t s = 0; s < shapes.size(); ++s)
                for (std::size_t q = 0; q < perms.size(); ++q) {
                    std::size_t leaf_code = 0;
                    for (int p = 0; p < n; ++p) leaf_code = leaf_code * d + subst[perms[q][p]];
                    const auto& v = value[s][leaf_code];
                    long x = v.empty() ? 0 : v[coord];
                    row[s * perms.size() + q] = x;
                    any = any || x != 0;
                }
            if (any) visit(row);
        }
    }
}

inline std::size_t codim(const Table& t, int n, bool left_normed_only) {
    const std::size_t cols = (left_normed_only ? 1 : trees(0, n).size()) * permutations(n).size();
    std::set<std::vector<long>> seen;
    RowSpace space(cols);
    for_each_row(t, n, left_normed_only, [&](const std::vector<long>& r) {
        if (space.rank() == cols || !seen.insert(r).second) return;
        std::vector<mpq_class> q(r.begin(), r.end());
        space.insert(std::move(q));
    });
    return space.rank();
}

// Preorder code: '1' internal node, '0' leaf.
inline Tree tree_from_code(const std::string& code) {
    std::size_t pos = 0;
    int next_leaf = 0;
    std::function<Tree()> parse = [&]() -> Tree {
        if (pos >= code.size()) throw std::invalid_argument("truncated shape code");
        if (code[pos++] == '0') return Tree{next_leaf++, {}};
        Tree l = parse();
        Tree r = parse();
        return Tree{-1, {l, r}};
    };
    Tree t = parse();
    if (pos != code.size()) throw std::invalid_argument("trailing shape code");
    return t;
}

struct Term {
    Tree shape;
    std::vector<int> perm;  // perm[p] is the variable on leaf p
    mpq_class coeff;
};

struct Poly {
    int n = 0;
    std::vector<Term> terms;
};

inline bool is_identity(const Table& t, const Poly& f) {
    std::vector<int> subst(f.n);
    const std::size_t d = t.dim();
    std::size_t tuples = 1;
    for (int i = 0; i < f.n; ++i) tuples *= d;
    for (std::size_t code = 0; code < tuples; ++code) {
        std::size_t c = code;
        for (int v = f.n - 1; v >= 0; --v) {
            subst[v] = static_cast<int>(c % d);
            c /= d;
        }
        std::vector<mpq_class> total(d, 0);
        for (const auto& term : f.terms) {
            std::vector<int> leaves(f.n);
            for (int p = 0; p < f.n; ++p) leaves[p] = subst[term.perm[p]];
            Vec v = eval_tree(t, term.shape, leaves);
            for (std::size_t k = 0; k < d; ++k)
                if (v[k]) total[k] += term.coeff * v[k];
        }
        for (const auto& x : total)
            if (x != 0) return false;
    }
    return true;
}

}  // namespace oracle
