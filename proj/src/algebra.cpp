#include "picodim/algebra.hpp"

#include "picodim/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace picodim {

// ---------------------------------------------------------------- BasisLabel

BasisLabel BasisLabel::a() {
    BasisLabel l;
    l.kind_ = Kind::A;
    return l;
}

BasisLabel BasisLabel::b() {
    BasisLabel l;
    l.kind_ = Kind::B;
    return l;
}

BasisLabel BasisLabel::z(int level, int position) {
    BasisLabel l;
    l.kind_ = Kind::Z;
    l.first_ = level;
    l.second_ = position;
    return l;
}

BasisLabel BasisLabel::theta(int power) {
    BasisLabel l;
    l.kind_ = Kind::Theta;
    l.first_ = power;
    return l;
}

BasisLabel BasisLabel::unit() {
    BasisLabel l;
    l.kind_ = Kind::Unit;
    return l;
}

BasisLabel BasisLabel::pair(BasisLabel left, BasisLabel right) {
    BasisLabel l;
    l.kind_ = Kind::Pair;
    l.children_.push_back(std::move(left));
    l.children_.push_back(std::move(right));
    return l;
}

BasisLabel BasisLabel::summand(int index, BasisLabel inner) {
    BasisLabel l;
    l.kind_ = Kind::Summand;
    l.first_ = index;
    l.children_.push_back(std::move(inner));
    return l;
}

BasisLabel BasisLabel::named(std::string name) {
    BasisLabel l;
    l.kind_ = Kind::Named;
    l.name_ = std::move(name);
    return l;
}

std::string BasisLabel::str() const {
    switch (kind_) {
    case Kind::A: return "a";
    case Kind::B: return "b";
    case Kind::Z: return "z[" + std::to_string(first_) + "," + std::to_string(second_) + "]";
    case Kind::Theta: return "th[" + std::to_string(first_) + "]";
    case Kind::Unit: return "e";
    case Kind::Pair: return "<" + left().str() + "," + right().str() + ">";
    case Kind::Summand: return std::to_string(first_) + ":" + inner().str();
    case Kind::Named: return name_;
    }
    return name_;
}

bool operator==(const BasisLabel& x, const BasisLabel& y) {
    return x.kind_ == y.kind_ && x.first_ == y.first_ && x.second_ == y.second_ &&
           x.children_ == y.children_ && x.name_ == y.name_;
}

namespace {

class LabelParser {
public:
    explicit LabelParser(std::string_view text) : text_(text) {}

    std::optional<BasisLabel> parse_all() {
        auto l = label(0);
        if (!l || pos_ != text_.size()) return std::nullopt;
        return l;
    }

private:
    std::optional<BasisLabel> label(int depth) {
        if (depth > 64 || pos_ >= text_.size()) return std::nullopt;
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto k = integer();
            if (!k || !eat(':')) return std::nullopt;
            auto inner = label(depth + 1);
            if (!inner) return std::nullopt;
            return BasisLabel::summand(*k, std::move(*inner));
        }
        if (c == '<') {
            ++pos_;
            auto l = label(depth + 1);
            if (!l || !eat(',')) return std::nullopt;
            auto r = label(depth + 1);
            if (!r || !eat('>')) return std::nullopt;
            return BasisLabel::pair(std::move(*l), std::move(*r));
        }
        if (text_.substr(pos_, 3) == "th[") {
            pos_ += 3;
            auto s = integer();
            if (!s || !eat(']')) return std::nullopt;
            return BasisLabel::theta(*s);
        }
        if (text_.substr(pos_, 2) == "z[") {
            pos_ += 2;
            auto i = integer();
            if (!i || !eat(',')) return std::nullopt;
            auto j = integer();
            if (!j || !eat(']')) return std::nullopt;
            return BasisLabel::z(*i, *j);
        }
        ++pos_;
        if (c == 'a') return BasisLabel::a();
        if (c == 'b') return BasisLabel::b();
        if (c == 'e') return BasisLabel::unit();
        return std::nullopt;
    }

    std::optional<int> integer() {
        std::size_t start = pos_;
        long long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1'000'000'000) return std::nullopt;
            ++pos_;
        }
        if (pos_ == start) return std::nullopt;
        return static_cast<int>(v);
    }

    bool eat(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

BasisLabel BasisLabel::parse(std::string_view text) {
    if (auto l = LabelParser(text).parse_all()) return *l;
    return named(std::string(text));
}

// --------------------------------------------------------------- AlgebraSpec

namespace {

constexpr std::size_t kDenseSlotLimit = 2048;

std::uint64_t slot_key(std::uint32_t i, std::uint32_t j) {
    return (static_cast<std::uint64_t>(i) << 32) | j;
}

}  // namespace

AlgebraSpec::AlgebraSpec(std::vector<BasisLabel> basis, std::vector<ProductEntry> products,
                         std::optional<int> nilpotency_index)
    : basis_(std::move(basis)), nilpotency_index_(nilpotency_index) {
    const std::size_t n = basis_.size();
    if (n > 0xffffffffu) throw InvalidParameter("basis too large");
    {
        std::set<std::string> seen;
        for (const auto& l : basis_) {
            if (!seen.insert(l.str()).second)
                throw InvalidParameter("duplicate basis label " + l.str());
        }
    }

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::map<std::uint32_t, Rational>> merged;
    for (auto& entry : products) {
        if (entry.left >= n || entry.right >= n)
            throw InvalidParameter("product entry references basis index out of range");
        auto& slot = merged[{entry.left, entry.right}];
        for (auto& t : entry.terms) {
            if (t.index >= n) throw InvalidParameter("product term references basis index out of range");
            slot[t.index] += t.coeff;
        }
    }
    for (auto& [key, terms] : merged) {
        ProductEntry e{key.first, key.second, {}};
        for (auto& [k, c] : terms) {
            if (c != 0) {
                if (c.get_den() != 1) integral_ = false;
                e.terms.push_back({k, c});
            }
        }
        if (!e.terms.empty()) products_.push_back(std::move(e));
    }

    if (n <= kDenseSlotLimit) {
        dense_slot_.assign(n * n, -1);
        for (std::size_t s = 0; s < products_.size(); ++s)
            dense_slot_[products_[s].left * n + products_[s].right] = static_cast<std::int32_t>(s);
    } else {
        for (std::size_t s = 0; s < products_.size(); ++s)
            sparse_slot_[slot_key(products_[s].left, products_[s].right)] = static_cast<std::uint32_t>(s);
    }

    // x1 (x2 x3) = 0 on basis triples: left multiplication by every basis
    // vector must kill every nonzero product.
    right_nilpotent_ = true;
    for (const auto& entry : products_) {
        Element p;
        for (const auto& t : entry.terms) p.add(Element::basis(t.index, t.coeff));
        for (std::uint32_t i = 0; i < n && right_nilpotent_; ++i) {
            if (!multiply(*this, Element::basis(i), p).is_zero()) right_nilpotent_ = false;
        }
        if (!right_nilpotent_) break;
    }
}

std::span<const ProductTerm> AlgebraSpec::product(std::uint32_t i, std::uint32_t j) const {
    const std::size_t n = basis_.size();
    if (!dense_slot_.empty() || n <= kDenseSlotLimit) {
        if (i >= n || j >= n) return {};
        auto s = dense_slot_[i * n + j];
        if (s < 0) return {};
        return products_[static_cast<std::size_t>(s)].terms;
    }
    auto it = sparse_slot_.find(slot_key(i, j));
    if (it == sparse_slot_.end()) return {};
    return products_[it->second].terms;
}

std::optional<std::uint32_t> AlgebraSpec::find(const BasisLabel& label) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i] == label) return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

bool AlgebraSpec::has_unit() const {
    return std::any_of(basis_.begin(), basis_.end(),
                       [](const BasisLabel& l) { return l.kind() == BasisLabel::Kind::Unit; });
}

// ------------------------------------------------------------------- Element

Element Element::basis(std::uint32_t index, const Rational& coeff) {
    Element e;
    if (coeff != 0) e.terms_.emplace_back(index, coeff);
    return e;
}

Rational Element::coeff(std::uint32_t index) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                               [](const Term& t, std::uint32_t k) { return t.first < k; });
    if (it != terms_.end() && it->first == index) return it->second;
    return 0;
}

Element Element::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    Element e;
    for (auto& t : terms) {
        if (!e.terms_.empty() && e.terms_.back().first == t.first) {
            e.terms_.back().second += t.second;
        } else {
            e.terms_.push_back(std::move(t));
        }
    }
    std::erase_if(e.terms_, [](const Term& t) { return t.second == 0; });
    return e;
}

Element& Element::add(const Element& other, const Rational& scale) {
    if (scale == 0 || other.is_zero()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + other.terms_.size());
    auto i = terms_.begin();
    auto j = other.terms_.begin();
    while (i != terms_.end() || j != other.terms_.end()) {
        if (j == other.terms_.end() || (i != terms_.end() && i->first < j->first)) {
            out.push_back(std::move(*i++));
        } else if (i == terms_.end() || j->first < i->first) {
            out.emplace_back(j->first, j->second * scale);
            ++j;
        } else {
            Rational c = i->second + j->second * scale;
            if (c != 0) out.emplace_back(i->first, std::move(c));
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Element Element::scaled(const Rational& scale) const {
    Element e;
    if (scale == 0) return e;
    e.terms_ = terms_;
    for (auto& t : e.terms_) t.second *= scale;
    return e;
}

Element multiply(const AlgebraSpec& algebra, const Element& x, const Element& y) {
    if (x.is_zero() || y.is_zero()) return {};
    if (x.size() == 1 && y.size() == 1) {
        const auto& [i, ci] = x.terms().front();
        const auto& [j, cj] = y.terms().front();
        auto p = algebra.product(i, j);
        if (p.empty()) return {};
        if (p.size() == 1) return Element::basis(p.front().index, ci * cj * p.front().coeff);
    }
    std::vector<Element::Term> acc;
    for (const auto& [i, ci] : x.terms()) {
        for (const auto& [j, cj] : y.terms()) {
            auto p = algebra.product(i, j);
            if (p.empty()) continue;
            Rational c = ci * cj;
            for (const auto& t : p) acc.emplace_back(t.index, c * t.coeff);
        }
    }
    return Element::from_terms(std::move(acc));
}

// -------------------------------------------------------------- constructors

int sufficient_level_cap(int T, int n) {
    if (T < 2) throw InvalidParameter("T must be at least 2");
    if (n <= 1) return 1;
    return (n - 2) / T + 2;
}

AlgebraSpec make_bt(int T, int level_cap) {
    if (T < 2) throw InvalidParameter("make_bt: T must be at least 2");
    if (level_cap < 1) throw InvalidParameter("make_bt: level_cap must be at least 1");
    std::vector<BasisLabel> basis{BasisLabel::a(), BasisLabel::b()};
    auto index = [T](int level, int position) {
        return static_cast<std::uint32_t>(2 + (level - 1) * T + (position - 1));
    };
    for (int i = 1; i <= level_cap; ++i)
        for (int j = 1; j <= T; ++j) basis.push_back(BasisLabel::z(i, j));

    std::vector<ProductEntry> products;
    for (int i = 1; i <= level_cap; ++i) {
        for (int j = 1; j < T; ++j) products.push_back({index(i, j), 0, {{index(i, j + 1), 1}}});
        if (i < level_cap) products.push_back({index(i, T), 1, {{index(i + 1, 1), 1}}});
    }
    return AlgebraSpec(std::move(basis), std::move(products));
}

AlgebraSpec make_qn(int N) {
    if (N < 1) throw InvalidParameter("make_qn: N must be at least 1");
    std::vector<BasisLabel> basis;
    for (int s = 1; s <= N; ++s) basis.push_back(BasisLabel::theta(s));
    std::vector<ProductEntry> products;
    for (int s = 1; s <= N; ++s)
        for (int t = 1; s + t <= N; ++t)
            products.push_back({static_cast<std::uint32_t>(s - 1), static_cast<std::uint32_t>(t - 1),
                                {{static_cast<std::uint32_t>(s + t - 1), 1}}});
    return AlgebraSpec(std::move(basis), std::move(products), N + 1);
}

AlgebraSpec tensor(const AlgebraSpec& left, const AlgebraSpec& right) {
    const auto dr = static_cast<std::uint32_t>(right.dim());
    std::vector<BasisLabel> basis;
    basis.reserve(left.dim() * right.dim());
    for (const auto& u : left.basis())
        for (const auto& v : right.basis()) basis.push_back(BasisLabel::pair(u, v));

    std::vector<ProductEntry> products;
    for (const auto& pl : left.products()) {
        for (const auto& pr : right.products()) {
            ProductEntry e{pl.left * dr + pr.left, pl.right * dr + pr.right, {}};
            for (const auto& tl : pl.terms)
                for (const auto& tr : pr.terms) e.terms.push_back({tl.index * dr + tr.index, tl.coeff * tr.coeff});
            products.push_back(std::move(e));
        }
    }
    std::optional<int> nil;
    if (left.nilpotency_index() && right.nilpotency_index())
        nil = std::min(*left.nilpotency_index(), *right.nilpotency_index());
    else if (left.nilpotency_index())
        nil = left.nilpotency_index();
    else
        nil = right.nilpotency_index();
    return AlgebraSpec(std::move(basis), std::move(products), nil);
}

AlgebraSpec direct_sum(std::span<const AlgebraSpec> summands) {
    std::vector<BasisLabel> basis;
    std::vector<ProductEntry> products;
    std::optional<int> nil = summands.empty() ? std::nullopt : std::optional<int>(1);
    std::uint32_t offset = 0;
    for (std::size_t k = 0; k < summands.size(); ++k) {
        const auto& s = summands[k];
        for (const auto& l : s.basis()) basis.push_back(BasisLabel::summand(static_cast<int>(k + 1), l));
        for (const auto& p : s.products()) {
            ProductEntry e{p.left + offset, p.right + offset, p.terms};
            for (auto& t : e.terms) t.index += offset;
            products.push_back(std::move(e));
        }
        if (nil && s.nilpotency_index())
            nil = std::max(*nil, *s.nilpotency_index());
        else
            nil.reset();
        offset += static_cast<std::uint32_t>(s.dim());
    }
    return AlgebraSpec(std::move(basis), std::move(products), nil);
}

AlgebraSpec direct_sum(const AlgebraSpec& first, const AlgebraSpec& second) {
    std::vector<AlgebraSpec> parts{first, second};
    return direct_sum(parts);
}

AlgebraSpec unitalize(const AlgebraSpec& algebra) {
    if (algebra.has_unit()) throw InvalidParameter("unitalize: algebra already has an adjoined unit");
    auto basis = algebra.basis();
    const auto e = static_cast<std::uint32_t>(basis.size());
    basis.push_back(BasisLabel::unit());
    std::vector<ProductEntry> products = algebra.products();
    for (std::uint32_t x = 0; x < e; ++x) {
        products.push_back({e, x, {{x, 1}}});
        products.push_back({x, e, {{x, 1}}});
    }
    products.push_back({e, e, {{e, 1}}});
    return AlgebraSpec(std::move(basis), std::move(products));
}

AlgebraSpec make_btn(int T, int N) {
    if (T < 2) throw InvalidParameter("make_btn: T must be at least 2");
    if (N < 1) throw InvalidParameter("make_btn: N must be at least 1");
    return tensor(make_bt(T, sufficient_level_cap(T, N)), make_qn(N));
}

AlgebraSpec make_r(std::span<const Stage> stages, int degree_cap) {
    if (stages.empty()) throw InvalidParameter("make_r: at least one stage required");
    int previous = 0;
    for (const auto& s : stages) {
        if (s.T < 2) throw InvalidParameter("make_r: T must be at least 2");
        if (!(previous < s.T && s.T < s.N))
            throw InvalidParameter("make_r: stages must satisfy T_1 < N_1 < T_2 < N_2 < ...");
        previous = s.N;
    }
    std::vector<AlgebraSpec> parts;
    for (const auto& s : stages) {
        parts.push_back(make_btn(s.T, s.N));
        if (s.T > degree_cap) break;
    }
    return direct_sum(parts);
}

AlgebraSpec make_zero(int dim) {
    if (dim < 0) throw InvalidParameter("make_zero: negative dimension");
    std::vector<BasisLabel> basis;
    for (int i = 1; i <= dim; ++i) basis.push_back(BasisLabel::named("u" + std::to_string(i)));
    return AlgebraSpec(std::move(basis), {}, 2);
}

AlgebraSpec with_product(const AlgebraSpec& algebra, std::uint32_t i, std::uint32_t j,
                         std::vector<ProductTerm> terms) {
    std::vector<ProductEntry> products;
    for (const auto& p : algebra.products())
        if (!(p.left == i && p.right == j)) products.push_back(p);
    products.push_back({i, j, std::move(terms)});
    return AlgebraSpec(algebra.basis(), std::move(products));
}

}  // namespace picodim
