#pragma once

#include "lneg/exact_arith.hpp"

#include <mpfr.h>

#include <string>

namespace lneg {

// precision is carried by each value; binary ops produce max(prec(a), prec(b))
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64);
    BigFloat(double v, mpfr_prec_t prec);
    BigFloat(long v, mpfr_prec_t prec);
    BigFloat(const Integer& v, mpfr_prec_t prec);
    BigFloat(const Rational& v, mpfr_prec_t prec);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    // keeps the value, rounded to the new precision
    void set_prec(mpfr_prec_t prec);
    BigFloat with_prec(mpfr_prec_t prec) const;

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    Integer round_to_integer() const;
    // |x - round(x)|
    BigFloat distance_to_integer() const;
    std::string to_string(int digits = 20) const;
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    long exponent2() const;

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a);
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }

    static BigFloat pi(mpfr_prec_t prec);
    static BigFloat two_pow(long e, mpfr_prec_t prec);

private:
    mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat pow_ui(const BigFloat& x, unsigned long e);

struct BigComplex {
    BigFloat re, im;
    explicit BigComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    mpfr_prec_t prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
    BigComplex conj() const { return BigComplex(re, -im); }
    BigFloat norm2() const { return re * re + im * im; }
};

BigComplex operator+(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigFloat& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
// e^{2 pi i num/den}
BigComplex root_of_unity(long num, long den, mpfr_prec_t prec);

}  // namespace lneg
