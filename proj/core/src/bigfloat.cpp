#include "lneg/bigfloat.hpp"

#include <algorithm>
#include <climits>
#include <vector>

namespace lneg {

namespace {
mpfr_prec_t pmax(const BigFloat& a, const BigFloat& b) { return std::max(a.prec(), b.prec()); }
}  // namespace

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(long v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Integer& v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

void BigFloat::set_prec(mpfr_prec_t prec) { mpfr_prec_round(v_, prec, MPFR_RNDN); }

BigFloat BigFloat::with_prec(mpfr_prec_t prec) const {
    BigFloat r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

Integer BigFloat::round_to_integer() const {
    Integer z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
}

BigFloat BigFloat::distance_to_integer() const {
    BigFloat r(prec());
    mpfr_rint(r.v_, v_, MPFR_RNDN);
    mpfr_sub(r.v_, v_, r.v_, MPFR_RNDN);
    mpfr_abs(r.v_, r.v_, MPFR_RNDN);
    return r;
}

long BigFloat::exponent2() const {
    if (mpfr_zero_p(v_)) return LONG_MIN;
    return mpfr_get_exp(v_);
}

std::string BigFloat::to_string(int digits) const {
    std::vector<char> buf(digits + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
    if (o.prec() > prec()) set_prec(o.prec());
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
    if (o.prec() > prec()) set_prec(o.prec());
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
    if (o.prec() > prec()) set_prec(o.prec());
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
    if (o.prec() > prec()) set_prec(o.prec());
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(pmax(a, b));
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(pmax(a, b));
    mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(pmax(a, b));
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(pmax(a, b));
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::two_pow(long e, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
}

#define LNEG_UNARY(name, fn)                      \
    BigFloat name(const BigFloat& x) {            \
        BigFloat r(x.prec());                     \
        fn(r.get(), x.get(), MPFR_RNDN);          \
        return r;                                 \
    }
LNEG_UNARY(abs, mpfr_abs)
LNEG_UNARY(sqrt, mpfr_sqrt)
LNEG_UNARY(exp, mpfr_exp)
LNEG_UNARY(log, mpfr_log)
LNEG_UNARY(cos, mpfr_cos)
LNEG_UNARY(sin, mpfr_sin)
#undef LNEG_UNARY

BigFloat pow_ui(const BigFloat& x, unsigned long e) {
    BigFloat r(x.prec());
    mpfr_pow_ui(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
BigComplex operator*(const BigComplex& a, const BigFloat& b) { return {a.re * b, a.im * b}; }
BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat n = b.norm2();
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

BigComplex root_of_unity(long num, long den, mpfr_prec_t prec) {
    num %= den;
    if (num < 0) num += den;
    if (num == 0) return {BigFloat(1L, prec), BigFloat(prec)};
    if (2 * num == den) return {BigFloat(-1L, prec), BigFloat(prec)};
    if (4 * num == den) return {BigFloat(prec), BigFloat(1L, prec)};
    if (4 * num == 3 * den) return {BigFloat(prec), BigFloat(-1L, prec)};
    BigFloat t = BigFloat::pi(prec + 16);
    mpfr_mul_si(t.get(), t.get(), 2 * num, MPFR_RNDN);
    mpfr_div_si(t.get(), t.get(), den, MPFR_RNDN);
    BigFloat c(prec), s(prec);
    mpfr_sin_cos(s.get(), c.get(), t.get(), MPFR_RNDN);
    return {c, s};
}

}  // namespace lneg
