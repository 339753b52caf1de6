#include "picodim/scalar.hpp"

#include "picodim/errors.hpp"

#include <cctype>
#include <limits>

namespace picodim {

namespace {

BigInt parse_integer(std::string_view text, std::size_t offset) {
    if (text.empty()) throw ParseError("expected integer", offset);
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParseError("expected digit", offset + i);
    }
    return BigInt(std::string(text), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    auto slash = text.find('/', pos);
    BigInt num;
    BigInt den = 1;
    if (slash == std::string_view::npos) {
        num = parse_integer(text.substr(pos), pos);
    } else {
        num = parse_integer(text.substr(pos, slash - pos), pos);
        den = parse_integer(text.substr(slash + 1), slash + 1);
        if (den == 0) throw ParseError("zero denominator", slash + 1);
    }
    Rational q(num, den);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const BigInt& z) { return z.get_str(); }

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

Rational pow(const Rational& base, unsigned long exponent) {
    Rational r(pow(BigInt(base.get_num()), exponent), pow(BigInt(base.get_den()), exponent));
    r.canonicalize();
    return r;
}

std::uint64_t catalan(int n) {
    if (n < 0) return 0;
    std::uint64_t c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

bool fits_u64(const BigInt& z) {
    return z >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64;
}

}  // namespace picodim
