#include "picodim/rank.hpp"

#include "picodim/errors.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace picodim {

std::size_t IntMatrix::nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.size();
    return n;
}

std::string to_string(FieldStrategy s) {
    switch (s) {
    case FieldStrategy::Auto: return "auto";
    case FieldStrategy::Rational: return "rational";
    case FieldStrategy::Modular: return "modular";
    }
    return "?";
}

std::string to_string(Certification c) {
    switch (c) {
    case Certification::Exact: return "exact";
    case Certification::ModularCertified: return "modular-certified";
    case Certification::Probabilistic: return "probabilistic";
    }
    return "?";
}

IntRow primitive_row(const std::vector<std::pair<std::uint32_t, Rational>>& row) {
    BigInt lcm = 1;
    for (const auto& [c, v] : row)
        if (v != 0) lcm = ::lcm(lcm, BigInt(v.get_den()));
    IntRow out;
    BigInt g = 0;
    for (const auto& [c, v] : row) {
        if (v == 0) continue;
        BigInt x = v.get_num() * (lcm / v.get_den());
        g = gcd(g, x);
        out.emplace_back(c, std::move(x));
    }
    if (out.empty()) return out;
    if (out.front().second < 0) g = -g;
    if (g != 1)
        for (auto& e : out) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
    return out;
}

// ------------------------------------------------------------------- exact

namespace {

void make_primitive(IntRow& r) {
    BigInt g = 0;
    for (const auto& e : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
        if (g == 1) break;
    }
    if (r.front().second < 0) g = -g;
    if (g != 1)
        for (auto& e : r) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

// r <- a*r - b*p, where a = p's leading entry and b = r's (both divided by
// their gcd); the leading column cancels.
void eliminate(IntRow& r, const IntRow& p) {
    BigInt a = p.front().second;
    BigInt b = r.front().second;
    BigInt g = gcd(a, b);
    a /= g;
    b /= g;
    IntRow out;
    out.reserve(r.size() + p.size());
    auto i = r.begin() + 1;
    auto j = p.begin() + 1;
    BigInt t;
    while (i != r.end() || j != p.end()) {
        if (j == p.end() || (i != r.end() && i->first < j->first)) {
            out.emplace_back(i->first, a * i->second);
            ++i;
        } else if (i == r.end() || j->first < i->first) {
            out.emplace_back(j->first, -b * j->second);
            ++j;
        } else {
            t = a * i->second - b * j->second;
            if (t != 0) out.emplace_back(i->first, t);
            ++i;
            ++j;
        }
    }
    r = std::move(out);
}

class ExactEchelon {
public:
    explicit ExactEchelon(std::size_t cols) : pivot_of_(cols, -1) {}

    bool insert(IntRow r) {
        while (!r.empty()) {
            auto slot = pivot_of_[r.front().first];
            if (slot < 0) {
                make_primitive(r);
                pivot_of_[r.front().first] = static_cast<std::int64_t>(pivots_.size());
                pivots_.push_back(std::move(r));
                return true;
            }
            eliminate(r, pivots_[static_cast<std::size_t>(slot)]);
            if (!r.empty()) make_primitive(r);
        }
        return false;
    }

    std::size_t rank() const noexcept { return pivots_.size(); }
    const std::vector<IntRow>& pivots() const noexcept { return pivots_; }

private:
    std::vector<std::int64_t> pivot_of_;
    std::vector<IntRow> pivots_;
};

}  // namespace

std::size_t exact_rank(const IntMatrix& m) {
    ExactEchelon ech(m.cols);
    for (const auto& r : m.rows) {
        if (ech.rank() == m.cols) break;
        ech.insert(r);
    }
    return ech.rank();
}

// ----------------------------------------------------------------- modular

namespace {

using ModRow = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

}  // namespace

std::size_t modular_rank(const IntMatrix& m, std::uint64_t p) {
    if (p < 2 || p >= (1ULL << 63)) throw InvalidParameter("modular_rank: prime out of range");
    std::vector<std::int64_t> pivot_of(m.cols, -1);
    std::vector<ModRow> pivots;
    static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long required");
    for (const auto& row : m.rows) {
        if (pivots.size() == m.cols) break;
        ModRow r;
        r.reserve(row.size());
        for (const auto& [c, v] : row) {
            std::uint64_t x = mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p));
            if (x) r.emplace_back(c, x);
        }
        while (!r.empty()) {
            auto slot = pivot_of[r.front().first];
            if (slot < 0) {
                std::uint64_t inv = powmod(r.front().second, p - 2, p);
                for (auto& e : r) e.second = mulmod(e.second, inv, p);
                pivot_of[r.front().first] = static_cast<std::int64_t>(pivots.size());
                pivots.push_back(std::move(r));
                break;
            }
            const ModRow& q = pivots[static_cast<std::size_t>(slot)];
            const std::uint64_t f = r.front().second;
            ModRow out;
            out.reserve(r.size() + q.size());
            auto i = r.begin() + 1;
            auto j = q.begin() + 1;
            while (i != r.end() || j != q.end()) {
                if (j == q.end() || (i != r.end() && i->first < j->first)) {
                    out.push_back(*i++);
                } else {
                    std::uint64_t sub = mulmod(f, j->second, p);
                    if (i == r.end() || j->first < i->first) {
                        out.emplace_back(j->first, (p - sub) % p);
                        ++j;
                    } else {
                        std::uint64_t v = i->second >= sub ? i->second - sub : i->second + (p - sub);
                        if (v) out.emplace_back(i->first, v);
                        ++i;
                        ++j;
                    }
                }
            }
            r = std::move(out);
        }
    }
    return pivots.size();
}

std::vector<std::uint64_t> pick_primes(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> out;
    std::set<std::uint64_t> seen;
    BigInt z;
    while (static_cast<int>(out.size()) < count) {
        std::uint64_t c = (rng() >> 2) | (1ULL << 61) | 1ULL;
        z = BigInt(std::to_string(c));
        mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
        std::uint64_t q = std::stoull(z.get_str());
        if (q >= (1ULL << 62)) continue;
        if (seen.insert(q).second) out.push_back(q);
    }
    return out;
}

RankResult compute_rank(const IntMatrix& m, const RankOptions& options) {
    const std::size_t nnz = m.nnz();
    RankResult res;
    if (options.field == FieldStrategy::Rational ||
        (options.field == FieldStrategy::Auto && nnz <= options.exact_budget)) {
        res.rank = exact_rank(m);
        return res;
    }
    if (options.primes < 1) throw InvalidParameter("compute_rank: need at least one prime");
    res.field = FieldStrategy::Modular;
    std::vector<std::size_t> ranks;
    for (auto p : pick_primes(options.primes, options.seed)) ranks.push_back(modular_rank(m, p));
    res.rank = *std::max_element(ranks.begin(), ranks.end());
    res.agreeing_primes = static_cast<int>(std::count(ranks.begin(), ranks.end(), res.rank));
    res.certification = Certification::Probabilistic;
    if (options.field == FieldStrategy::Modular && nnz <= options.exact_budget) {
        std::size_t exact = exact_rank(m);
        if (exact == res.rank) {
            res.certification = Certification::ModularCertified;
        } else {
            res.rank = exact;
            res.field = FieldStrategy::Rational;
            res.certification = Certification::Exact;
            res.agreeing_primes = 0;
        }
    }
    return res;
}

// ---------------------------------------------------------- echelon / kernel

std::vector<std::vector<std::pair<std::uint32_t, Rational>>> row_echelon(const IntMatrix& m) {
    ExactEchelon ech(m.cols);
    for (const auto& r : m.rows) {
        if (ech.rank() == m.cols) break;
        ech.insert(r);
    }
    using QRow = std::vector<std::pair<std::uint32_t, Rational>>;
    std::vector<QRow> rows;
    for (const auto& p : ech.pivots()) {
        QRow q;
        Rational lead(p.front().second);
        for (const auto& [c, v] : p) q.emplace_back(c, Rational(v) / lead);
        rows.push_back(std::move(q));
    }
    std::sort(rows.begin(), rows.end(), [](const QRow& x, const QRow& y) { return x.front().first < y.front().first; });
    for (std::size_t i = rows.size(); i-- > 0;) {
        const std::uint32_t col = rows[i].front().first;
        for (std::size_t j = 0; j < i; ++j) {
            auto it = std::lower_bound(rows[j].begin(), rows[j].end(), col,
                                       [](const auto& e, std::uint32_t c) { return e.first < c; });
            if (it == rows[j].end() || it->first != col) continue;
            Rational f = it->second;
            QRow out;
            auto a = rows[j].begin();
            auto b = rows[i].begin();
            while (a != rows[j].end() || b != rows[i].end()) {
                if (b == rows[i].end() || (a != rows[j].end() && a->first < b->first)) {
                    out.push_back(*a++);
                } else if (a == rows[j].end() || b->first < a->first) {
                    out.emplace_back(b->first, -f * b->second);
                    ++b;
                } else {
                    Rational v = a->second - f * b->second;
                    if (v != 0) out.emplace_back(a->first, v);
                    ++a;
                    ++b;
                }
            }
            rows[j] = std::move(out);
        }
    }
    return rows;
}

std::vector<std::vector<Rational>> nullspace_basis(const IntMatrix& m) {
    auto rref = row_echelon(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (const auto& r : rref) is_pivot[r.front().first] = true;
    std::vector<std::vector<Rational>> out;
    for (std::uint32_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols, Rational(0));
        v[f] = 1;
        for (const auto& r : rref) {
            auto it = std::lower_bound(r.begin(), r.end(), f, [](const auto& e, std::uint32_t c) { return e.first < c; });
            if (it != r.end() && it->first == f) v[r.front().first] = -it->second;
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace picodim
