#include "picodim/interval.hpp"

#include "picodim/errors.hpp"

#include <algorithm>

namespace picodim {

void ensure_mpfr_range() {
    thread_local bool done = false;
    if (done) return;
    mpfr_set_emax(mpfr_get_emax_max());
    mpfr_set_emin(mpfr_get_emin_min());
    done = true;
}

std::string mpfr_str(mpfr_srcptr x, mpfr_rnd_t rnd, int digits) {
    char* buf = nullptr;
    const char* fmt = rnd == MPFR_RNDD ? "%.*RDe" : rnd == MPFR_RNDU ? "%.*RUe" : "%.*RNe";
    if (mpfr_asprintf(&buf, fmt, digits, x) < 0) return "?";
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

Interval::Interval(mpfr_prec_t precision) : prec_(precision) {
    ensure_mpfr_range();
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other) {}

Interval& Interval::operator=(const Interval& other) {
    if (this == &other) return *this;
    if (prec_ != other.prec_) {
        prec_ = other.prec_;
        mpfr_set_prec(lo_, prec_);
        mpfr_set_prec(hi_, prec_);
    }
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
    return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
    if (this != &other && prec_ == other.prec_) {
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
        return *this;
    }
    return *this = static_cast<const Interval&>(other);
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::from(const BigInt& z, mpfr_prec_t precision) {
    Interval r(precision);
    mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from(const Rational& q, mpfr_prec_t precision) {
    Interval r(precision);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from(long v, mpfr_prec_t precision) {
    Interval r(precision);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

Interval Interval::pi(mpfr_prec_t precision) {
    Interval r(precision);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::span(const Interval& lower, const Interval& upper) {
    Interval r(std::max(lower.prec_, upper.prec_));
    mpfr_set(r.lo_, lower.lo_, MPFR_RNDD);
    mpfr_set(r.hi_, upper.hi_, MPFR_RNDU);
    return r;
}

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

namespace {

mpfr_prec_t join_prec(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(join_prec(a, b));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(join_prec(a, b));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a) {
    Interval r(a.prec_);
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    Interval r(join_prec(a, b));
    if (mpfr_sgn(a.lo_) >= 0 && mpfr_sgn(b.lo_) >= 0) {
        mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    mpfr_srcptr xs[2] = {a.lo_, a.hi_};
    mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : xs) {
        for (auto y : ys) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(t);
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) throw InvalidParameter("interval division by an interval containing 0");
    Interval inv(b.prec_);
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
}

Interval Interval::log() const {
    if (mpfr_sgn(lo_) <= 0) throw InvalidParameter("interval log of a non-positive value");
    Interval r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::exp() const {
    Interval r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::sqrt() const {
    if (mpfr_sgn(lo_) < 0) throw InvalidParameter("interval sqrt of a negative value");
    Interval r(prec_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::root(unsigned long k) const {
    if (mpfr_sgn(lo_) < 0) throw InvalidParameter("interval root of a negative value");
    if (k == 0) throw InvalidParameter("zeroth root");
    Interval r(prec_);
    mpfr_rootn_ui(r.lo_, lo_, k, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_, hi_, k, MPFR_RNDU);
    return r;
}

Interval log_sum_exp(const Interval& a, const Interval& b) {
    Interval r(join_prec(a, b));
    mpfr_t m, d;
    mpfr_init2(m, r.prec_);
    mpfr_init2(d, r.prec_);
    auto one_side = [&](mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) {
        mpfr_srcptr big = mpfr_greater_p(x, y) ? x : y;
        mpfr_srcptr small = big == x ? y : x;
        mpfr_set(m, big, rnd);
        mpfr_sub(d, small, big, rnd);
        mpfr_exp(d, d, rnd);
        mpfr_log1p(d, d, rnd);
        mpfr_add(out, m, d, rnd);
    };
    one_side(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    one_side(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_clear(m);
    mpfr_clear(d);
    return r;
}

bool Interval::certainly_less(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }
bool Interval::certainly_greater(const Interval& other) const { return mpfr_greater_p(lo_, other.hi_) != 0; }
bool Interval::certainly_less_equal(const Interval& other) const { return mpfr_lessequal_p(hi_, other.lo_) != 0; }

std::string Interval::lo_str(int digits) const { return mpfr_str(lo_, MPFR_RNDD, digits); }
std::string Interval::hi_str(int digits) const { return mpfr_str(hi_, MPFR_RNDU, digits); }
std::string Interval::str(int digits) const { return "[" + lo_str(digits) + ", " + hi_str(digits) + "]"; }

}  // namespace picodim
