#pragma once

#include "lneg/bigfloat.hpp"
#include "lneg/exact_arith.hpp"

#include <complex>
#include <string>
#include <vector>

namespace lneg {

unsigned euler_phi(unsigned long n);
// integer coefficients, ascending
const std::vector<Integer>& cyclotomic_polynomial(unsigned u);

// element of Q(zeta_u) on the power basis zeta_u^j, 0 <= j < phi(u).
// Orders u = 2 (mod 4) are stored as u/2, since Q(zeta_{2m}) = Q(zeta_m) for odd m.
class Cyclotomic {
public:
    Cyclotomic() : Cyclotomic(1) {}
    explicit Cyclotomic(unsigned order);
    Cyclotomic(const Rational& r);  // NOLINT: rationals embed everywhere
    Cyclotomic(int r) : Cyclotomic(Rational(r)) {}  // NOLINT
    // poly[j] is the coefficient of zeta_u^j, any length
    static Cyclotomic from_poly(unsigned order, const std::vector<Rational>& poly);
    static Cyclotomic zeta_power(unsigned order, long e);

    unsigned order() const { return order_; }
    std::size_t degree() const { return coeffs_.size(); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational to_rational() const;
    bool is_integral() const;
    Cyclotomic lift(unsigned order) const;

    Cyclotomic conj() const;
    Cyclotomic galois(long a) const;  // zeta -> zeta^a, gcd(a,u) = 1
    Cyclotomic inverse() const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rational& r);
    Cyclotomic& operator/=(const Cyclotomic& o);

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend Cyclotomic operator-(const Cyclotomic& a) { return a * Rational(-1); }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    // value at zeta = e^{2 pi i j/u}
    std::complex<double> embed(long j = 1) const;
    BigComplex embed(long j, mpfr_prec_t prec) const;

    // "p/q" for rationals, "[c0,c1,...]@u" otherwise
    std::string to_string() const;

private:
    unsigned order_;
    std::vector<Rational> coeffs_;
    void reduce_poly(std::vector<Rational> poly);
    static unsigned canonical_order(unsigned u) { return (u % 4 == 2) ? u / 2 : u; }
};

// nearest element of Z[zeta_u] to coordinates approx; RoundingAmbiguous when
// any coordinate is further than 2^-slack from an integer
Cyclotomic cyclotomic_round(const std::vector<BigFloat>& approx, unsigned u, unsigned slack);

}  // namespace lneg
