#include "picodim/algebra_io.hpp"

#include "picodim/errors.hpp"

#include <cctype>
#include <climits>
#include <fstream>
#include <map>
#include <sstream>

namespace picodim {

using nlohmann::json;

json algebra_to_json(const AlgebraSpec& algebra) {
    json basis = json::array();
    for (const auto& l : algebra.basis()) basis.push_back(l.str());
    json products = json::array();
    for (const auto& p : algebra.products()) {
        json terms = json::array();
        for (const auto& t : p.terms) terms.push_back(json::array({t.index, to_string(t.coeff)}));
        products.push_back(json::array({p.left, p.right, std::move(terms)}));
    }
    json doc;
    doc["basis"] = std::move(basis);
    doc["products"] = std::move(products);
    return doc;
}

namespace {

std::uint32_t json_index(const json& v, const char* what) {
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > UINT32_MAX)
        throw ParseError(std::string("algebra file: ") + what + " must be a non-negative integer", 0);
    return static_cast<std::uint32_t>(v.get<long long>());
}

Rational json_rational(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(std::to_string(v.get<long long>()));
    throw ParseError("algebra file: coefficient must be a rational string or integer", 0);
}

}  // namespace

AlgebraSpec algebra_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("basis") || !doc["basis"].is_array())
        throw ParseError("algebra file: missing \"basis\" array", 0);
    std::vector<BasisLabel> basis;
    for (const auto& l : doc["basis"]) {
        if (!l.is_string()) throw ParseError("algebra file: basis labels must be strings", 0);
        basis.push_back(BasisLabel::parse(l.get<std::string>()));
    }
    std::vector<ProductEntry> products;
    if (doc.contains("products")) {
        const auto& list = doc["products"];
        if (!list.is_array()) throw ParseError("algebra file: \"products\" must be an array", 0);
        for (const auto& entry : list) {
            if (!entry.is_array() || entry.size() != 3 || !entry[2].is_array())
                throw ParseError("algebra file: product entries are [i, j, [[k, coeff], ...]]", 0);
            ProductEntry p{json_index(entry[0], "left index"), json_index(entry[1], "right index"), {}};
            for (const auto& t : entry[2]) {
                if (!t.is_array() || t.size() != 2)
                    throw ParseError("algebra file: product terms are [k, coeff]", 0);
                p.terms.push_back({json_index(t[0], "term index"), json_rational(t[1])});
            }
            products.push_back(std::move(p));
        }
    }
    return AlgebraSpec(std::move(basis), std::move(products));
}

AlgebraSpec load_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open algebra file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("algebra file: ") + e.what(), e.byte);
    }
    return algebra_from_json(doc);
}

void save_algebra_file(const AlgebraSpec& algebra, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << algebra_to_json(algebra).dump(2) << '\n';
}

// ---------------------------------------------------------------- descriptor

namespace {

constexpr long long kMaxParam = 1'000'000;
constexpr std::size_t kMaxDim = 1'000'000;
constexpr int kMaxDepth = 32;

class DescriptorParser {
public:
    explicit DescriptorParser(std::string_view text) : text_(text) {}

    AlgebraSpec parse() {
        AlgebraSpec a = algebra(0);
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return a;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError("descriptor: " + what, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    std::string word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    long long integer() {
        skip_ws();
        std::size_t start = pos_;
        long long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > kMaxParam) {
                pos_ = start;
                fail("parameter too large (limit " + std::to_string(kMaxParam) + ")");
            }
            ++pos_;
        }
        if (pos_ == start) fail("expected integer");
        return v;
    }

    std::map<std::string, long long> key_values(std::initializer_list<const char*> allowed) {
        std::map<std::string, long long> out;
        do {
            std::size_t at = pos_;
            std::string key = word();
            bool known = false;
            for (const char* k : allowed) known = known || key == k;
            if (!known) {
                pos_ = at;
                fail("unknown parameter '" + key + "'");
            }
            if (out.count(key)) {
                pos_ = at;
                fail("repeated parameter '" + key + "'");
            }
            expect('=');
            out[key] = integer();
        } while (eat(','));
        return out;
    }

    long long require(const std::map<std::string, long long>& kv, const char* key, std::size_t at) {
        auto it = kv.find(key);
        if (it == kv.end()) {
            pos_ = at;
            fail(std::string("missing parameter '") + key + "'");
        }
        return it->second;
    }

    void check_dim(std::size_t dim, std::size_t at) {
        if (dim > kMaxDim) {
            pos_ = at;
            throw ResourceLimit("descriptor at position " + std::to_string(at) + ": algebra dimension " +
                                std::to_string(dim) + " exceeds limit " + std::to_string(kMaxDim));
        }
    }

    template <class F>
    AlgebraSpec build(std::size_t at, F&& f) {
        try {
            return f();
        } catch (const InvalidParameter& e) {
            throw ParseError(std::string("descriptor: ") + e.what(), at);
        }
    }

    AlgebraSpec algebra(int depth) {
        if (depth > kMaxDepth) fail("nesting too deep");
        skip_ws();
        const std::size_t at = pos_;
        std::string name = word();
        if (name == "unital") {
            expect('(');
            AlgebraSpec inner = algebra(depth + 1);
            expect(')');
            return build(at, [&] { return unitalize(inner); });
        }
        if (name == "sum") {
            expect('(');
            std::vector<AlgebraSpec> parts;
            std::size_t total = 0;
            do {
                parts.push_back(algebra(depth + 1));
                total += parts.back().dim();
                check_dim(total, at);
            } while (eat(';'));
            expect(')');
            return direct_sum(parts);
        }
        if (name == "tensor") {
            expect('(');
            AlgebraSpec left = algebra(depth + 1);
            expect(';');
            AlgebraSpec right = algebra(depth + 1);
            expect(')');
            check_dim(left.dim() * right.dim(), at);
            return tensor(left, right);
        }
        if (name.empty()) fail("expected algebra name");
        expect(':');
        if (name == "bt") {
            auto kv = key_values({"T", "cap"});
            long long T = require(kv, "T", at);
            long long cap = kv.count("cap") ? kv["cap"] : 3;
            check_dim(static_cast<std::size_t>(T * cap + 2), at);
            return build(at, [&] { return make_bt(static_cast<int>(T), static_cast<int>(cap)); });
        }
        if (name == "qn") {
            auto kv = key_values({"N"});
            long long N = require(kv, "N", at);
            return build(at, [&] { return make_qn(static_cast<int>(N)); });
        }
        if (name == "btn") {
            auto kv = key_values({"T", "N"});
            long long T = require(kv, "T", at);
            long long N = require(kv, "N", at);
            if (T >= 2 && N >= 1) {
                long long cap = sufficient_level_cap(static_cast<int>(T), static_cast<int>(N));
                if (T * cap + 2 > static_cast<long long>(kMaxDim)) check_dim(kMaxDim + 1, at);
                check_dim(static_cast<std::size_t>((T * cap + 2) * N), at);
            }
            return build(at, [&] { return make_btn(static_cast<int>(T), static_cast<int>(N)); });
        }
        if (name == "zero") {
            auto kv = key_values({"dim"});
            long long d = require(kv, "dim", at);
            check_dim(static_cast<std::size_t>(d), at);
            return make_zero(static_cast<int>(d));
        }
        if (name == "r") {
            std::vector<long long> values;
            do values.push_back(integer());
            while (eat(','));
            if (values.size() % 2 != 0) fail("r: expects pairs T_1,N_1,T_2,N_2,...");
            std::vector<Stage> stages;
            std::size_t total = 0;
            for (std::size_t i = 0; i < values.size(); i += 2) {
                stages.push_back({static_cast<int>(values[i]), static_cast<int>(values[i + 1])});
                if (values[i] >= 2 && values[i + 1] >= 1) {
                    long long cap = sufficient_level_cap(stages.back().T, stages.back().N);
                    total += static_cast<std::size_t>((values[i] * cap + 2) * values[i + 1]);
                    check_dim(total, at);
                }
            }
            return build(at, [&] { return make_r(stages, INT_MAX); });
        }
        if (name == "json") {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] != ')' && text_[pos_] != ';') ++pos_;
            std::string path(text_.substr(start, pos_ - start));
            while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back()))) path.pop_back();
            if (path.empty()) fail("json: expected a file path");
            return build(at, [&] { return load_algebra_file(path); });
        }
        pos_ = at;
        fail("unknown algebra '" + name + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

AlgebraSpec parse_descriptor(std::string_view text) { return DescriptorParser(text).parse(); }

}  // namespace picodim
