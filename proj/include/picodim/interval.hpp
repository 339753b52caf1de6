#pragma once

#include "picodim/scalar.hpp"

#include <mpfr.h>

#include <string>

namespace picodim {

/// Closed interval [lo, hi] of MPFR numbers at a fixed working precision.
/// Every operation rounds lo down and hi up, so the true value of any
/// expression built from these operations stays enclosed.
class Interval {
public:
    explicit Interval(mpfr_prec_t precision);
    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(const Interval& other);
    Interval& operator=(Interval&& other) noexcept;
    ~Interval();

    static Interval from(const BigInt& z, mpfr_prec_t precision);
    static Interval from(const Rational& q, mpfr_prec_t precision);
    static Interval from(long v, mpfr_prec_t precision);
    static Interval pi(mpfr_prec_t precision);
    /// [lower.lo, upper.hi].
    static Interval span(const Interval& lower, const Interval& upper);

    mpfr_prec_t precision() const noexcept { return prec_; }
    mpfr_srcptr lo() const noexcept { return lo_; }
    mpfr_srcptr hi() const noexcept { return hi_; }
    bool is_point() const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    /// Throws InvalidParameter if the divisor contains zero.
    friend Interval operator/(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a);

    /// Natural log; requires lo > 0.
    Interval log() const;
    Interval exp() const;
    /// Requires lo >= 0.
    Interval sqrt() const;
    /// k-th root of a non-negative interval.
    Interval root(unsigned long k) const;

    /// log(exp(a) + exp(b)).
    friend Interval log_sum_exp(const Interval& a, const Interval& b);

    /// Certified strict comparisons; both false means undecided.
    bool certainly_less(const Interval& other) const;
    bool certainly_greater(const Interval& other) const;
    bool certainly_less_equal(const Interval& other) const;

    /// Decimal renderings of the bounds ("lo" rounded down, "hi" rounded up).
    std::string lo_str(int digits = 20) const;
    std::string hi_str(int digits = 20) const;
    std::string str(int digits = 20) const;

private:
    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

/// Widest exponent range, applied once per thread before any MPFR use.
void ensure_mpfr_range();

std::string mpfr_str(mpfr_srcptr x, mpfr_rnd_t rnd, int digits);

}  // namespace picodim
