#include "picodim/engine.hpp"

#include "picodim/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <thread>

namespace picodim {

namespace {

// Nonzero values of one bracketing shape: tuple u of basis indices (one per
// leaf, left to right) -> product of the e_{u[p]} in that bracketing.
struct ShapeTable {
    std::size_t leaves = 0;
    std::vector<std::uint32_t> tuples;
    std::vector<Element> values;

    std::size_t size() const noexcept { return values.size(); }
    std::span<const std::uint32_t> tuple(std::size_t i) const {
        return {tuples.data() + i * leaves, leaves};
    }
};

template <class F>
void parallel_chunks(std::size_t count, int threads, F&& body) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count));
    if (workers <= 1) {
        body(0, std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t step = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = std::min(count, w * step);
        const std::size_t hi = std::min(count, lo + step);
        pool.emplace_back([&, w, lo, hi] {
            try {
                body(w, lo, hi);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::size_t subtree_end(const std::string& code, std::size_t pos) {
    std::size_t need = 1;
    while (need > 0) need += code[pos++] == '1' ? 1 : -1;
    return pos;
}

class TableCache {
public:
    TableCache(const AlgebraSpec& algebra, const EngineConfig& config) : algebra_(algebra), config_(config) {}

    std::shared_ptr<const ShapeTable> get(const std::string& code) {
        auto it = memo_.find(code);
        if (it != memo_.end()) return it->second;
        auto table = std::make_shared<ShapeTable>();
        if (code == "0") {
            table->leaves = 1;
            for (std::uint32_t i = 0; i < algebra_.dim(); ++i) {
                table->tuples.push_back(i);
                table->values.push_back(Element::basis(i));
            }
        } else {
            const std::size_t mid = subtree_end(code, 1);
            auto left = get(code.substr(1, mid - 1));
            auto right = get(code.substr(mid));
            join(*left, *right, *table);
        }
        memo_[code] = table;
        return table;
    }

private:
    void join(const ShapeTable& l, const ShapeTable& r, ShapeTable& out) {
        out.leaves = l.leaves + r.leaves;
        const int workers = std::max(1, config_.threads);
        std::vector<ShapeTable> parts(static_cast<std::size_t>(workers));
        parallel_chunks(l.size(), workers, [&](std::size_t w, std::size_t lo, std::size_t hi) {
            ShapeTable& part = parts[w];
            for (std::size_t i = lo; i < hi; ++i) {
                for (std::size_t j = 0; j < r.size(); ++j) {
                    Element v = multiply(algebra_, l.values[i], r.values[j]);
                    if (v.is_zero()) continue;
                    auto lt = l.tuple(i);
                    auto rt = r.tuple(j);
                    part.tuples.insert(part.tuples.end(), lt.begin(), lt.end());
                    part.tuples.insert(part.tuples.end(), rt.begin(), rt.end());
                    part.values.push_back(std::move(v));
                    if (part.values.size() > config_.max_support)
                        throw ResourceLimit("nonzero partial products exceed the support limit of " +
                                            std::to_string(config_.max_support));
                }
            }
        });
        for (auto& part : parts) {
            out.tuples.insert(out.tuples.end(), part.tuples.begin(), part.tuples.end());
            std::move(part.values.begin(), part.values.end(), std::back_inserter(out.values));
        }
        if (out.values.size() > config_.max_support)
            throw ResourceLimit("nonzero partial products exceed the support limit of " +
                                std::to_string(config_.max_support));
    }

    const AlgebraSpec& algebra_;
    const EngineConfig& config_;
    std::map<std::string, std::shared_ptr<const ShapeTable>> memo_;
};

std::vector<std::vector<int>> all_perms(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

void check_degree(int n, MonomialMode mode, const MonomialCaps& caps) {
    if (n < 1) throw InvalidParameter("degree must be at least 1");
    const int cap = mode == MonomialMode::LeftNormed ? caps.left_normed : caps.full;
    if (n > cap)
        throw ResourceLimit("degree " + std::to_string(n) + " exceeds the " + to_string(mode) + " cap of " +
                            std::to_string(cap));
}

bool row_less(const IntRow& x, const IntRow& y) {
    const std::size_t m = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < m; ++i) {
        if (x[i].first != y[i].first) return x[i].first < y[i].first;
        int c = cmp(x[i].second, y[i].second);
        if (c != 0) return c < 0;
    }
    return x.size() < y.size();
}

// One (substitution, target) row contribution.
struct Contributions {
    std::size_t stride = 0;
    std::vector<std::uint32_t> keys;
    std::vector<std::uint32_t> cols;
    std::vector<Rational> coeffs;
};

std::vector<IntRow> rows_from_contributions(std::vector<Contributions>& parts, std::size_t& raw_rows) {
    Contributions all;
    for (auto& p : parts) {
        all.stride = p.stride;
        all.keys.insert(all.keys.end(), p.keys.begin(), p.keys.end());
        all.cols.insert(all.cols.end(), p.cols.begin(), p.cols.end());
        std::move(p.coeffs.begin(), p.coeffs.end(), std::back_inserter(all.coeffs));
        p = Contributions{};
    }
    const std::size_t stride = all.stride;
    std::vector<std::uint32_t> order(all.cols.size());
    std::iota(order.begin(), order.end(), 0u);
    auto key_cmp = [&](std::uint32_t a, std::uint32_t b) {
        for (std::size_t t = 0; t < stride; ++t) {
            auto x = all.keys[a * stride + t];
            auto y = all.keys[b * stride + t];
            if (x != y) return x < y ? -1 : 1;
        }
        return 0;
    };
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        int c = key_cmp(a, b);
        if (c != 0) return c < 0;
        return all.cols[a] < all.cols[b];
    });

    std::vector<IntRow> rows;
    std::vector<std::pair<std::uint32_t, Rational>> current;
    raw_rows = 0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        current.clear();
        while (j < order.size() && key_cmp(order[i], order[j]) == 0) {
            const std::uint32_t col = all.cols[order[j]];
            Rational sum = 0;
            while (j < order.size() && key_cmp(order[i], order[j]) == 0 && all.cols[order[j]] == col) {
                sum += all.coeffs[order[j]];
                ++j;
            }
            if (sum != 0) current.emplace_back(col, std::move(sum));
        }
        ++raw_rows;
        IntRow row = primitive_row(current);
        if (!row.empty()) rows.push_back(std::move(row));
        i = j;
    }
    std::sort(rows.begin(), rows.end(), row_less);
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return rows;
}

}  // namespace

MonomialMode resolve_mode(const AlgebraSpec& algebra, std::optional<MonomialMode> requested) {
    if (requested) return *requested;
    return algebra.right_nilpotent() ? MonomialMode::LeftNormed : MonomialMode::Full;
}

EvalMatrix eval_matrix(const AlgebraSpec& algebra, int n, MonomialMode mode, const EngineConfig& config) {
    check_degree(n, mode, config.caps);
    if (mode == MonomialMode::LeftNormed && !algebra.right_nilpotent())
        throw InvalidParameter("left-normed mode refused: x1(x2x3) = 0 does not hold in this algebra");

    const std::vector<std::string> shape_list =
        mode == MonomialMode::LeftNormed ? std::vector<std::string>{left_comb(n)} : shapes(n);
    const auto perms = all_perms(n);
    const auto nperm = static_cast<std::uint32_t>(perms.size());

    TableCache cache(algebra, config);
    EvalMatrix out;
    out.n = n;
    out.mode = mode;
    out.matrix.cols = shape_list.size() * perms.size();

    const int workers = std::max(1, config.threads);
    std::vector<Contributions> parts(static_cast<std::size_t>(workers));
    for (auto& p : parts) p.stride = static_cast<std::size_t>(n) + 1;
    for (std::size_t si = 0; si < shape_list.size(); ++si) {
        auto table = cache.get(shape_list[si]);
        parallel_chunks(table->size(), workers, [&](std::size_t w, std::size_t lo, std::size_t hi) {
            Contributions& part = parts[w];
            std::vector<std::uint32_t> s(static_cast<std::size_t>(n));
            for (std::size_t e = lo; e < hi; ++e) {
                auto u = table->tuple(e);
                const Element& value = table->values[e];
                for (std::uint32_t r = 0; r < nperm; ++r) {
                    const auto& sigma = perms[r];
                    for (std::size_t p = 0; p < u.size(); ++p) s[static_cast<std::size_t>(sigma[p])] = u[p];
                    const std::uint32_t col = static_cast<std::uint32_t>(si) * nperm + r;
                    for (const auto& [k, c] : value.terms()) {
                        part.keys.insert(part.keys.end(), s.begin(), s.end());
                        part.keys.push_back(k);
                        part.cols.push_back(col);
                        part.coeffs.push_back(c);
                    }
                }
            }
        });
    }
    out.matrix.rows = rows_from_contributions(parts, out.raw_rows);
    return out;
}

CodimResult codim(const AlgebraSpec& algebra, int n, std::optional<MonomialMode> mode, const EngineConfig& config) {
    const MonomialMode m = resolve_mode(algebra, mode);
    EvalMatrix em = eval_matrix(algebra, n, m, config);
    CodimResult res;
    res.n = n;
    res.mode = m;
    res.dim_pn = dim_pn(n, m);
    res.rows = em.matrix.rows.size();
    res.cols = em.matrix.cols;
    res.nnz = em.matrix.nnz();
    res.info = compute_rank(em.matrix, config.rank);
    res.rank = res.info.rank;
    return res;
}

std::uint64_t identity_space_dim(const AlgebraSpec& algebra, int n, std::optional<MonomialMode> mode,
                                 const EngineConfig& config) {
    CodimResult r = codim(algebra, n, mode, config);
    return r.dim_pn - r.rank;
}

IdentityResult is_identity(const AlgebraSpec& algebra, const MultilinearPoly& f, const EngineConfig& config) {
    IdentityResult res;
    const int n = f.degree();
    if (n == 0) {
        res.holds = f.constant_term() == 0;
        return res;
    }
    std::map<std::string, std::vector<std::pair<const Monomial*, const Rational*>>> by_shape;
    bool all_left = true;
    for (const auto& [m, c] : f.terms()) {
        by_shape[m.shape].emplace_back(&m, &c);
        all_left = all_left && m.left_normed();
    }
    check_degree(n, all_left ? MonomialMode::LeftNormed : MonomialMode::Full, config.caps);

    TableCache cache(algebra, config);
    std::map<std::vector<std::uint32_t>, Element> values;
    std::vector<std::uint32_t> s(static_cast<std::size_t>(n));
    for (const auto& [shape, monos] : by_shape) {
        auto table = cache.get(shape);
        for (std::size_t e = 0; e < table->size(); ++e) {
            auto u = table->tuple(e);
            for (const auto& [m, c] : monos) {
                for (std::size_t p = 0; p < u.size(); ++p) s[static_cast<std::size_t>(m->perm[p])] = u[p];
                values[s].add(table->values[e], *c);
            }
        }
    }
    for (auto& [subst, v] : values) {
        if (!v.is_zero()) {
            res.holds = false;
            res.witness = subst;
            res.value = v;
            break;
        }
    }
    return res;
}

ContainmentResult identity_containment(const AlgebraSpec& a, const AlgebraSpec& b, int n,
                                       std::optional<MonomialMode> mode, const EngineConfig& config) {
    ContainmentResult res;
    res.mode = mode ? *mode
                    : (a.right_nilpotent() && b.right_nilpotent() ? MonomialMode::LeftNormed : MonomialMode::Full);
    EvalMatrix ma = eval_matrix(a, n, res.mode, config);
    EvalMatrix mb = eval_matrix(b, n, res.mode, config);
    RankResult ra = compute_rank(ma.matrix, config.rank);
    IntMatrix stacked;
    stacked.cols = ma.matrix.cols;
    stacked.rows = std::move(ma.matrix.rows);
    std::move(mb.matrix.rows.begin(), mb.matrix.rows.end(), std::back_inserter(stacked.rows));
    std::sort(stacked.rows.begin(), stacked.rows.end(), row_less);
    stacked.rows.erase(std::unique(stacked.rows.begin(), stacked.rows.end()), stacked.rows.end());
    RankResult rs = compute_rank(stacked, config.rank);
    res.rank_a = ra.rank;
    res.rank_stacked = rs.rank;
    res.holds = ra.rank == rs.rank;
    res.certification = ra.certification == Certification::Probabilistic ? ra.certification : rs.certification;
    return res;
}

std::vector<MultilinearPoly> identity_space_basis(const AlgebraSpec& algebra, int n, MonomialMode mode,
                                                  const EngineConfig& config) {
    EvalMatrix em = eval_matrix(algebra, n, mode, config);
    const auto monomials = enumerate_monomials(n, mode, config.caps);
    std::vector<MultilinearPoly> out;
    for (const auto& v : nullspace_basis(em.matrix)) {
        MultilinearPoly f(n);
        for (std::size_t c = 0; c < v.size(); ++c)
            if (v[c] != 0) f.add_term(monomials[c], v[c]);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace picodim
