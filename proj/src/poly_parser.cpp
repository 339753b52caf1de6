#include "picodim/poly_parser.hpp"

#include "picodim/errors.hpp"

#include <algorithm>
#include <cctype>

namespace picodim {

namespace {

struct RawTerm {
    std::string code;
    std::vector<int> leaves;  // 1-based variable numbers
    Rational coeff;
};

using RawPoly = std::vector<RawTerm>;

class PolyParser {
public:
    PolyParser(std::string_view text, const PolyParseLimits& limits) : text_(text), limits_(limits) {}

    MultilinearPoly parse() {
        skip_ws();
        if (text_.substr(pos_) == "0" ||
            (pos_ < text_.size() && text_[pos_] == '0' && rest_is_ws(pos_ + 1)))
            return MultilinearPoly(0);
        std::vector<std::pair<std::size_t, RawPoly>> terms = top_level();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character");
        return finish(terms);
    }

private:
    [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
    [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
        throw ParseError("polynomial: " + what, at);
    }

    bool rest_is_ws(std::size_t from) const {
        for (std::size_t i = from; i < text_.size(); ++i)
            if (!std::isspace(static_cast<unsigned char>(text_[i]))) return false;
        return true;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    // Top-level sum, keeping the start offset of every term for diagnostics.
    std::vector<std::pair<std::size_t, RawPoly>> top_level() {
        std::vector<std::pair<std::size_t, RawPoly>> out;
        bool negative = false;
        char c = peek();
        if (c == '+' || c == '-') {
            negative = c == '-';
            ++pos_;
        }
        for (;;) {
            skip_ws();
            std::size_t start = pos_;
            RawPoly t = term(0);
            if (negative)
                for (auto& r : t) r.coeff = -r.coeff;
            out.emplace_back(start, std::move(t));
            c = peek();
            if (c != '+' && c != '-') break;
            negative = c == '-';
            ++pos_;
        }
        return out;
    }

    RawPoly expr(int depth) {
        RawPoly out;
        bool negative = false;
        char c = peek();
        if (c == '+' || c == '-') {
            negative = c == '-';
            ++pos_;
        }
        for (;;) {
            RawPoly t = term(depth);
            for (auto& r : t) {
                if (negative) r.coeff = -r.coeff;
                out.push_back(std::move(r));
            }
            check_size(out.size());
            c = peek();
            if (c != '+' && c != '-') break;
            negative = c == '-';
            ++pos_;
        }
        return out;
    }

    RawPoly term(int depth) {
        Rational coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = rational();
            if (peek() != '*') fail("expected '*' after coefficient");
            ++pos_;
        }
        RawPoly acc = factor(depth);
        for (;;) {
            char c = peek();
            if (c != 'x' && c != '(') break;
            RawPoly rhs = factor(depth);
            acc = product(acc, rhs);
        }
        for (auto& r : acc) r.coeff *= coeff;
        return acc;
    }

    RawPoly factor(int depth) {
        char c = peek();
        if (c == 'x') {
            std::size_t at = pos_;
            ++pos_;
            std::size_t start = pos_;
            long long v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                v = v * 10 + (text_[pos_] - '0');
                if (v > limits_.max_variables) fail_at("variable index exceeds limit", at);
                ++pos_;
            }
            if (pos_ == start) fail("expected digits after 'x'");
            if (v < 1) fail_at("variables are numbered from x1", at);
            return {RawTerm{"0", {static_cast<int>(v)}, Rational(1)}};
        }
        if (c == '(') {
            if (depth + 1 > limits_.max_depth) fail("nesting too deep");
            ++pos_;
            RawPoly inner = expr(depth + 1);
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
    }

    Rational rational() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string s(text_.substr(start, pos_ - start));
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::size_t dstart = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == dstart) fail("expected denominator");
            std::string d(text_.substr(dstart, pos_ - dstart));
            if (std::all_of(d.begin(), d.end(), [](char ch) { return ch == '0'; }))
                fail_at("zero denominator", dstart);
            s += "/" + d;
        }
        if (s.size() > 4096) fail_at("coefficient too long", start);
        return parse_rational(s);
    }

    RawPoly product(const RawPoly& l, const RawPoly& r) {
        check_size(l.size() * r.size());
        RawPoly out;
        out.reserve(l.size() * r.size());
        for (const auto& a : l) {
            for (const auto& b : r) {
                if (a.leaves.size() + b.leaves.size() > static_cast<std::size_t>(limits_.max_variables))
                    fail("monomial has more factors than the variable limit");
                RawTerm t{"1" + a.code + b.code, a.leaves, a.coeff * b.coeff};
                t.leaves.insert(t.leaves.end(), b.leaves.begin(), b.leaves.end());
                out.push_back(std::move(t));
            }
        }
        return out;
    }

    void check_size(std::size_t n) const {
        if (n > limits_.max_terms) fail("expansion exceeds " + std::to_string(limits_.max_terms) + " terms");
    }

    MultilinearPoly finish(const std::vector<std::pair<std::size_t, RawPoly>>& terms) {
        int degree = -1;
        for (const auto& [at, raw] : terms) {
            for (const auto& r : raw) {
                const int d = static_cast<int>(r.leaves.size());
                if (degree < 0) degree = d;
                if (d != degree)
                    fail_at("term has degree " + std::to_string(d) + ", expected " + std::to_string(degree), at);
                std::vector<bool> seen(static_cast<std::size_t>(d) + 1, false);
                for (int v : r.leaves) {
                    if (v > d)
                        fail_at("degree-" + std::to_string(d) + " monomial uses x" + std::to_string(v) +
                                    "; variables must be x1..x" + std::to_string(d),
                                at);
                    if (seen[static_cast<std::size_t>(v)])
                        fail_at("not multilinear: x" + std::to_string(v) + " repeated", at);
                    seen[static_cast<std::size_t>(v)] = true;
                }
            }
        }
        MultilinearPoly out(std::max(degree, 0));
        for (const auto& [at, raw] : terms) {
            for (const auto& r : raw) {
                Monomial m{r.code, {}};
                for (int v : r.leaves) m.perm.push_back(v - 1);
                out.add_term(m, r.coeff);
            }
        }
        return out;
    }

    std::string_view text_;
    PolyParseLimits limits_;
    std::size_t pos_ = 0;
};

void format_tree(const Monomial& m, std::size_t& pos, std::size_t& leaf, std::string& out, bool wrap) {
    if (m.shape[pos++] == '0') {
        out += "x" + std::to_string(m.perm[leaf++] + 1);
        return;
    }
    if (wrap) out += '(';
    format_tree(m, pos, leaf, out, false);
    format_tree(m, pos, leaf, out, m.shape[pos] == '1');
    if (wrap) out += ')';
}

}  // namespace

MultilinearPoly parse_poly(std::string_view text, const PolyParseLimits& limits) {
    return PolyParser(text, limits).parse();
}

std::string format_monomial(const Monomial& m) {
    if (m.shape.empty()) return "1";
    std::string out;
    std::size_t pos = 0;
    std::size_t leaf = 0;
    format_tree(m, pos, leaf, out, false);
    return out;
}

std::string format_poly(const MultilinearPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        const bool negative = c < 0;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        Rational mag = abs(c);
        if (m.shape.empty()) {
            out += to_string(mag);
            continue;
        }
        if (mag != 1) out += to_string(mag) + "*";
        out += format_monomial(m);
    }
    return out;
}

}  // namespace picodim
