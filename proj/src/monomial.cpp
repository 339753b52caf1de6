#include "picodim/monomial.hpp"

#include "picodim/errors.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace picodim {

std::string to_string(MonomialMode mode) {
    return mode == MonomialMode::LeftNormed ? "leftnormed" : "full";
}

namespace {

// Returns the end of the subtree starting at pos, or npos if malformed.
std::size_t subtree_end(const std::string& code, std::size_t pos) {
    std::size_t need = 1;
    while (pos < code.size()) {
        if (code[pos] == '1')
            ++need;
        else if (code[pos] == '0')
            --need;
        else
            return std::string::npos;
        ++pos;
        if (need == 0) return pos;
    }
    return std::string::npos;
}

constexpr int kMaxShapeLeaves = 14;

}  // namespace

bool is_valid_shape(const std::string& code) {
    return !code.empty() && subtree_end(code, 0) == code.size();
}

int shape_leaves(const std::string& code) {
    return static_cast<int>(std::count(code.begin(), code.end(), '0'));
}

std::string left_comb(int leaves) {
    if (leaves < 1) return {};
    return std::string(static_cast<std::size_t>(leaves - 1), '1') + std::string(static_cast<std::size_t>(leaves), '0');
}

bool is_left_comb(const std::string& code) {
    return !code.empty() && code == left_comb(shape_leaves(code));
}

const std::vector<std::string>& shapes(int leaves) {
    if (leaves < 1) throw InvalidParameter("shapes: need at least one leaf");
    if (leaves > kMaxShapeLeaves)
        throw ResourceLimit("shapes: more than " + std::to_string(kMaxShapeLeaves) + " leaves");
    static std::mutex mutex;
    static std::map<int, std::vector<std::string>> cache;
    std::lock_guard lock(mutex);
    for (int n = 1; n <= leaves; ++n) {
        if (cache.count(n)) continue;
        std::vector<std::string> out;
        if (n == 1) {
            out.push_back("0");
        } else {
            for (int k = 1; k < n; ++k)
                for (const auto& l : cache[k])
                    for (const auto& r : cache[n - k]) out.push_back("1" + l + r);
        }
        std::sort(out.begin(), out.end(), std::greater<>());
        cache[n] = std::move(out);
    }
    return cache[leaves];
}

bool MonomialLess::operator()(const Monomial& x, const Monomial& y) const {
    if (x.perm.size() != y.perm.size()) return x.perm.size() < y.perm.size();
    if (x.shape != y.shape) return x.shape > y.shape;
    return x.perm < y.perm;
}

std::uint64_t dim_pn(int n, MonomialMode mode) {
    if (n < 1) return 1;
    if (n > 20) throw ResourceLimit("dim P_n: degree too large");
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    if (mode == MonomialMode::LeftNormed) return f;
    std::uint64_t c = catalan(n - 1);
    if (c > UINT64_MAX / f) throw ResourceLimit("dim P_n: overflow");
    return c * f;
}

std::uint64_t perm_rank(std::span<const int> perm) {
    const std::size_t n = perm.size();
    std::uint64_t rank = 0;
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t smaller = 0;
        for (int v = 0; v < perm[i]; ++v)
            if (!used[static_cast<std::size_t>(v)]) ++smaller;
        used[static_cast<std::size_t>(perm[i])] = true;
        rank = rank * (n - i) + smaller;
    }
    return rank;
}

std::vector<Monomial> enumerate_monomials(int n, MonomialMode mode, const MonomialCaps& caps) {
    if (n < 1) throw InvalidParameter("enumerate_monomials: degree must be at least 1");
    const int cap = mode == MonomialMode::LeftNormed ? caps.left_normed : caps.full;
    if (n > cap)
        throw ResourceLimit("degree " + std::to_string(n) + " exceeds the " + to_string(mode) +
                            " cap of " + std::to_string(cap) +
                            (mode == MonomialMode::Full ? "; use left-normed mode for right-nilpotent algebras"
                                                        : "; raise the cap explicitly if memory allows"));
    std::vector<std::string> shape_list =
        mode == MonomialMode::LeftNormed ? std::vector<std::string>{left_comb(n)} : shapes(n);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::vector<Monomial> out;
    out.reserve(shape_list.size() * dim_pn(n, MonomialMode::LeftNormed));
    for (const auto& s : shape_list) {
        std::iota(perm.begin(), perm.end(), 0);
        do out.push_back({s, perm});
        while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

// ------------------------------------------------------------ MultilinearPoly

MultilinearPoly MultilinearPoly::constant(const Rational& c) {
    MultilinearPoly p(0);
    if (c != 0) p.terms_[Monomial{}] = c;
    return p;
}

MultilinearPoly MultilinearPoly::monomial(Monomial m, const Rational& c) {
    MultilinearPoly p(m.degree());
    p.add_term(m, c);
    return p;
}

Rational MultilinearPoly::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultilinearPoly::add_term(const Monomial& m, const Rational& c) {
    if (m.degree() != degree_) throw InvalidParameter("monomial degree does not match polynomial degree");
    if (degree_ > 0) {
        if (!is_valid_shape(m.shape) || shape_leaves(m.shape) != degree_)
            throw InvalidParameter("monomial shape does not match its degree");
        std::vector<bool> seen(static_cast<std::size_t>(degree_), false);
        for (int v : m.perm) {
            if (v < 0 || v >= degree_ || seen[static_cast<std::size_t>(v)])
                throw InvalidParameter("monomial is not multilinear");
            seen[static_cast<std::size_t>(v)] = true;
        }
    } else if (!m.shape.empty()) {
        throw InvalidParameter("degree-0 monomial must have an empty shape");
    }
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultilinearPoly& MultilinearPoly::add(const MultilinearPoly& other, const Rational& scale) {
    if (other.degree_ != degree_) {
        if (other.is_zero()) return *this;
        if (is_zero())
            degree_ = other.degree_;
        else
            throw InvalidParameter("adding polynomials of different degrees");
    }
    for (const auto& [m, c] : other.terms_) add_term(m, c * scale);
    return *this;
}

// ----------------------------------------------------------------- evaluate

namespace {

Element eval_tree(const AlgebraSpec& algebra, const std::string& code, std::size_t& pos, std::size_t& leaf,
                  std::span<const int> perm, std::span<const std::uint32_t> subst) {
    if (code[pos++] == '0') {
        return Element::basis(subst[static_cast<std::size_t>(perm[leaf++])]);
    }
    Element l = eval_tree(algebra, code, pos, leaf, perm, subst);
    if (l.is_zero()) {
        std::size_t end = subtree_end(code, pos);
        leaf += static_cast<std::size_t>(std::count(code.begin() + static_cast<std::ptrdiff_t>(pos),
                                                    code.begin() + static_cast<std::ptrdiff_t>(end), '0'));
        pos = end;
        return l;
    }
    Element r = eval_tree(algebra, code, pos, leaf, perm, subst);
    return multiply(algebra, l, r);
}

}  // namespace

Element evaluate(const AlgebraSpec& algebra, const Monomial& m, std::span<const std::uint32_t> subst) {
    if (m.degree() == 0) throw InvalidParameter("evaluate: degree-0 monomial has no value in a non-unital algebra");
    if (subst.size() != m.perm.size()) throw InvalidParameter("evaluate: substitution length mismatch");
    for (auto i : subst)
        if (i >= algebra.dim()) throw InvalidParameter("evaluate: substitution index out of range");
    std::size_t pos = 0;
    std::size_t leaf = 0;
    return eval_tree(algebra, m.shape, pos, leaf, m.perm, subst);
}

Element evaluate(const AlgebraSpec& algebra, const MultilinearPoly& f, std::span<const std::uint32_t> subst) {
    Element acc;
    for (const auto& [m, c] : f.terms()) acc.add(evaluate(algebra, m, subst), c);
    return acc;
}

// ------------------------------------------------------------ expand_unital

namespace {

struct Absorbed {
    bool unit = false;
    std::string code;
    std::vector<int> leaves;
};

Absorbed absorb(const std::string& code, std::size_t& pos, std::size_t& leaf, std::span<const int> perm,
                const std::vector<bool>& keep) {
    if (code[pos++] == '0') {
        int v = perm[leaf++];
        if (!keep[static_cast<std::size_t>(v)]) return {true, {}, {}};
        return {false, "0", {v}};
    }
    Absorbed l = absorb(code, pos, leaf, perm, keep);
    Absorbed r = absorb(code, pos, leaf, perm, keep);
    if (l.unit) return r;
    if (r.unit) return l;
    l.code = "1" + l.code + r.code;
    l.leaves.insert(l.leaves.end(), r.leaves.begin(), r.leaves.end());
    return l;
}

}  // namespace

std::map<std::vector<int>, MultilinearPoly> expand_unital(const MultilinearPoly& f) {
    const int n = f.degree();
    if (n > 20) throw ResourceLimit("expand_unital: degree too large");
    std::map<std::vector<int>, MultilinearPoly> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<bool> keep(static_cast<std::size_t>(n));
        std::vector<int> subset;
        std::vector<int> rank(static_cast<std::size_t>(n), -1);
        for (int v = 0; v < n; ++v) {
            if (mask & (1u << v)) {
                keep[static_cast<std::size_t>(v)] = true;
                rank[static_cast<std::size_t>(v)] = static_cast<int>(subset.size());
                subset.push_back(v + 1);
            }
        }
        MultilinearPoly component(static_cast<int>(subset.size()));
        for (const auto& [m, c] : f.terms()) {
            std::size_t pos = 0;
            std::size_t leaf = 0;
            Absorbed a = m.shape.empty() ? Absorbed{true, {}, {}} : absorb(m.shape, pos, leaf, m.perm, keep);
            Monomial reduced;
            if (!a.unit) {
                reduced.shape = std::move(a.code);
                for (int v : a.leaves) reduced.perm.push_back(rank[static_cast<std::size_t>(v)]);
            }
            component.add_term(reduced, c);
        }
        if (!component.is_zero()) out.emplace(std::move(subset), std::move(component));
    }
    return out;
}

}  // namespace picodim
