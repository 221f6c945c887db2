#pragma once

#include "lneg/exact_arith.hpp"
#include "lneg/number_theory.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lneg {

// sum_{n = v}^{n_max} a_n q^n, known exactly up to q^{n_max}
class QSeries {
public:
    QSeries() = default;
    QSeries(long valuation, std::vector<Rational> coeffs, long n_max);
    static QSeries constant(const Rational& c, long n_max);
    // a[0] + a[1] q + ..., n_max = a.size() - 1
    static QSeries from_coefficients(std::vector<Rational> a);

    long valuation() const { return v_; }
    long n_max() const { return n_max_; }
    // zero below the valuation; InvalidArgument past n_max
    Rational coefficient(long n) const;
    // first nonzero exponent, n_max + 1 if there is none
    long order() const;

    QSeries truncate(long n_max) const;
    QSeries inverse() const;
    QSeries pow(unsigned e) const;
    // series 1 + O(q) only
    QSeries sqrt() const;

    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    QSeries& operator*=(const Rational& c);
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(QSeries a, const Rational& c) { return a *= c; }
    friend QSeries operator*(const Rational& c, QSeries a) { return a *= c; }
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    // same coefficients on the common range
    bool agrees_with(const QSeries& o) const;
    std::string to_string(long terms = 8) const;

private:
    long v_ = 0;
    long n_max_ = -1;
    std::vector<Rational> a_;  // a_[i] is the coefficient of q^{v_ + i}
};

QSeries v_operator(const QSeries& f, unsigned d);
// q d/dq
QSeries derivative_D(const QSeries& f);

// sigma(n) for 1 <= n <= n_max by sieving; index 0 unused
std::vector<Integer> divisor_sum_table(SigmaKind kind, unsigned k, long n_max);

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, k even >= 2; E_0 = 1
QSeries eisenstein(unsigned k, long n_max);
// -B_r/(2r) + sum sigma_{r-1}(n) q^n
QSeries eisenstein_normalized(unsigned r, long n_max);
// L(chi_{-4}, 1-l)/2 + sum sigma^{(1)}_{l-1}(n) q^n, or sum sigma^{(2)}_{l-1}(n) q^n; l odd
QSeries eisenstein_chi4(SigmaKind kind, unsigned l, long n_max);
QSeries theta(long n_max);

// prod eta(d tau)^{e}; the total exponent sum d e / 24 must be integral
QSeries eta_product(const std::vector<std::pair<unsigned, int>>& factors, long n_max);

enum class LevelForm { F2_level2, F4_level2, Delta4_level2, F2_level4, Delta4_level4 };
const char* level_form_name(LevelForm f);
QSeries level_form_eisenstein(LevelForm f, long n_max);
QSeries level_form_eta(LevelForm f, long n_max);
unsigned level_form_weight(LevelForm f);
unsigned level_form_level(LevelForm f);
std::vector<LevelForm> all_level_forms();

WeightPolynomial gegenbauer(unsigned n, unsigned r);

// b(m) = s_sum(kind, r-1, m, N, P_{n,r}); b(0) from the constant terms when n = 0
QSeries bracket_theta(unsigned n, unsigned r, unsigned N, long n_max, SigmaKind kind = SigmaKind::plain);
// [f, g]_n of weights kf, kg
QSeries rankin_cohen(const QSeries& f, const Rational& kf, const QSeries& g, const Rational& kg, unsigned n);

// brackets [theta, E_{k-2j}(4 tau)]_j, 0 <= j <= k/6, spanning M^+_{k+1/2}; k = 2 gives theta E_2(4tau) - 6 D theta
std::vector<QSeries> kohnen_basis(unsigned k, long n_max);
unsigned kohnen_plus_dimension(unsigned k);
unsigned dim_modular_forms(unsigned weight, unsigned level);

struct SiegelCoefficients {
    unsigned weight = 0;
    unsigned level = 1;
    unsigned r = 0;
    std::vector<Rational> c;  // c[i] = c_{-i}
    const Rational& at(long i) const;
};

// principal part and constant of Delta^{-r} E_{12r-w+2} (level 1) or E / Delta4^r (level 2)
SiegelCoefficients siegel_coefficients(unsigned weight, unsigned level);
// sum_{n <= r} a(n) c_{-n} for a form with coefficients a
Rational siegel_pairing(const SiegelCoefficients& s, const QSeries& f);

// exact coordinates of target in the span of basis, read on the given exponents
std::vector<Rational> solve_in_basis(const QSeries& target, const std::vector<QSeries>& basis,
                                     const std::vector<long>& rows);

}  // namespace lneg
