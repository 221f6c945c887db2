#include "lneg/functional_equation.hpp"

#include "lneg/errors.hpp"
#include "lneg/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lneg {

namespace {

using u64 = std::uint64_t;
using i128 = __int128;

unsigned bitlen(u64 x) { return x ? 64 - __builtin_clzll(x) : 0; }

// chi(n) exponent lookups, tabulated for moderate conductors
class ChiTable {
public:
    ChiTable(const DirichletCharacter& chi, bool tabulate) : chi_(chi), F_(chi.modulus()), u_(chi.order()) {
        if (tabulate && F_ <= (1u << 22)) {
            tab_.resize(F_);
            for (u64 r = 0; r < F_; ++r) {
                auto t = chi.exponent_at(r);
                tab_[r] = t ? *t : kZero;
            }
        }
    }
    static constexpr unsigned kZero = ~0u;
    unsigned at(u64 n) const {
        if (F_ == 1) return 0;
        if (!tab_.empty()) return tab_[n % F_];
        auto t = chi_.exponent_at(n % F_);
        return t ? *t : kZero;
    }
    unsigned order() const { return u_; }

private:
    const DirichletCharacter& chi_;
    u64 F_;
    unsigned u_;
    std::vector<unsigned> tab_;
};

struct DsParams {
    u64 N = 0;
    unsigned J = 0;
};

// N blocks summed directly, J Euler-Maclaurin correction terms
DsParams ds_params(unsigned k, u64 F, mpfr_prec_t bits) {
    double T = bits * std::log(2.0) + 10 + std::log(static_cast<double>(F));
    double lf = std::log(static_cast<double>(F));
    double N = std::max(2.0, std::ceil((T + k) / (2 * M_PI)));
    for (int tries = 0; tries < 60; ++tries, N = std::ceil(N * 1.3)) {
        double lN = std::log(N);
        double base = lf - k * (lN + lf);
        double prev = std::numeric_limits<double>::infinity();
        for (unsigned j = 1; j < 4000; ++j) {
            // |B_2j|/(2j)! <= 3.3/(2 pi)^{2j}, rising factorial (k)_{2j-1}
            double lr = std::lgamma(k + 2.0 * j - 1) - std::lgamma(static_cast<double>(k));
            double t = base + std::log(3.3) - 2.0 * j * std::log(2 * M_PI) + lr - (2.0 * j - 1) * lN;
            if (t < -T) return {static_cast<u64>(N), j - 1};
            if (t > prev) break;
            prev = t;
        }
    }
    throw Error(ErrorKind::InvalidArgument, "Euler-Maclaurin parameters did not converge");
}

double log_abs_max(const Cyclotomic& c) {
    if (c.is_rational()) {
        Rational r = c.to_rational();
        return std::log(std::fabs(r.get_d()));
    }
    double best = 0;
    unsigned u = c.order();
    for (unsigned j = 1; j < u; ++j)
        if (std::gcd(j, u) == 1) best = std::max(best, std::abs(c.embed(j)));
    return std::log(best);
}

BigComplex from_buckets(const std::vector<BigFloat>& acc, unsigned u, mpfr_prec_t prec) {
    BigComplex z(prec);
    for (unsigned t = 0; t < u; ++t) {
        if (acc[t].is_zero()) continue;
        z = z + root_of_unity(t, u, prec) * acc[t];
    }
    return z;
}

// 2 (k-1)! F^k / ((-2 pi i)^k g(chibar)) as a complex factor
BigComplex fe_factor(const DirichletCharacter& chi, unsigned k, mpfr_prec_t prec) {
    BigFloat c(Integer(2 * factorial(k - 1) * ipow(to_integer_u(chi.modulus()), k)), prec);
    BigFloat twopi = BigFloat::pi(prec) * BigFloat(2L, prec);
    c /= pow_ui(twopi, k);
    BigComplex den = gauss_sum(chi.conj(), prec);
    // times (-i)^k
    switch (k % 4) {
    case 1: den = BigComplex(den.im, -den.re); break;
    case 2: den = BigComplex(-den.re, -den.im); break;
    case 3: den = BigComplex(-den.im, den.re); break;
    default: break;
    }
    return BigComplex(c, BigFloat(prec)) / den;
}

double euler_cost_ns(const DirichletCharacter& chi, const PrecisionPlan& plan) {
    double L = static_cast<double>(plan.prime_limit);
    if (L < 3) return 0;
    double primes = L / std::log(L);
    bool fast = chi.order() <= 2 && plan.bits <= 124;
    return 3 * L + primes * (fast ? 25 : 1500);
}

double ds_cost_ns(const DirichletCharacter& chi, unsigned k, mpfr_prec_t bits) {
    auto p = ds_params(k, chi.modulus(), bits + 32);
    return static_cast<double>(chi.modulus()) * (3.0 * p.N + p.J + 6) * 120.0 * (1 + bits / 256.0);
}

}  // namespace

Cyclotomic denominator_bound(const DirichletCharacter& chi, unsigned k) {
    if (!chi.is_primitive()) throw Error(ErrorKind::InvalidArgument, "denominator_bound needs a primitive character");
    u64 F = chi.modulus();
    if (F == 1) {
        Integer d = k;
        for (unsigned e = 1; e <= k; ++e)
            if (k % e == 0 && is_prime_u64(e + 1)) d *= e + 1;
        return Cyclotomic(Rational(d));
    }
    auto fac = factorize_u64(F);
    if (fac.size() != 1) return Cyclotomic(Rational(1));
    u64 p = fac[0].prime;
    unsigned v = fac[0].exponent;
    if (p == 2) return Cyclotomic(Rational(v == 2 ? 2 : 1));
    u64 pv1 = 1;
    for (unsigned i = 1; i < v; ++i) pv1 *= p;
    u64 target = pv1 * (p - 1) / std::gcd<u64>(p - 1, k);
    if (chi.order() != target) return Cyclotomic(Rational(1));
    if (v == 1) return Cyclotomic(make_rational(to_integer_u(p * k), to_integer_u((p - 1) / chi.order())));
    return chi.evaluate(static_cast<std::int64_t>(1 + p)) - Cyclotomic(Rational(1));
}

PrecisionPlan plan_from_B(double B, unsigned k) {
    if (k < 2) throw Error(ErrorKind::KTooSmall, "the functional-equation method needs k >= 2");
    PrecisionPlan plan;
    plan.B = std::max(B, 1.0);
    plan.bits = static_cast<mpfr_prec_t>(std::ceil(plan.B / std::log(2.0))) + 64;
    double lg = (plan.B - std::log(static_cast<double>(k - 1))) / (k - 1);
    if (lg > 43) plan.prime_limit = std::numeric_limits<u64>::max();
    else plan.prime_limit = static_cast<u64>(std::ceil(std::exp(lg)));
    return plan;
}

PrecisionPlan precision_target(const DirichletCharacter& chi, unsigned k, double extra_nats) {
    if (k < 2) throw Error(ErrorKind::KTooSmall, "the functional-equation method needs k >= 2");
    double F = static_cast<double>(chi.modulus());
    double B = (k - 0.5) * std::log(k * F / (2 * M_PI * M_E)) + log_abs_max(denominator_bound(chi, k)) + 10 + extra_nats;
    return plan_from_B(B, k);
}

BigComplex euler_product(const DirichletCharacter& chibar, unsigned k, const PrecisionPlan& plan) {
    mpfr_prec_t W = plan.bits;
    u64 Lp = plan.prime_limit;
    unsigned u = chibar.order();
    if (Lp < 2) return BigComplex(BigFloat(1L, W), BigFloat(W));
    ChiTable chi(chibar, Lp > chibar.modulus() / 8);
    if (u <= 2 && W <= 124) {
        // fixed point at scale 2^W
        i128 P = static_cast<i128>(1) << W;
        bool done = false;
        for_each_prime(Lp, [&](u64 p) {
            if (done) return;
            unsigned t = chi.at(p);
            if (t == ChiTable::kZero) return;
            long need = static_cast<long>(W) - static_cast<long>(k) * (bitlen(p) - 1);
            if (need < -2) {
                done = true;
                return;
            }
            i128 term;
            if (need <= 60) {
                long double pk = 1;
                for (unsigned i = 0; i < k; ++i) pk *= static_cast<long double>(p);
                term = static_cast<i128>(std::llroundl(static_cast<long double>(P) / pk));
            } else {
                unsigned __int128 pk = 1;
                for (unsigned i = 0; i < k; ++i) pk *= p;
                term = P / static_cast<i128>(pk);
            }
            if (t == 0) P -= term;
            else P += term;
        });
        bool neg = P < 0;
        unsigned __int128 up = neg ? static_cast<unsigned __int128>(-P) : static_cast<unsigned __int128>(P);
        Integer z = to_integer_u(static_cast<u64>(up >> 64));
        z <<= 64;
        z += to_integer_u(static_cast<u64>(up));
        if (neg) z = -z;
        BigFloat Pf(z, W);
        mpfr_div_2ui(Pf.get(), Pf.get(), W, MPFR_RNDN);
        return BigComplex(BigFloat(1L, W) / Pf, BigFloat(W));
    }
    std::vector<BigComplex> roots;
    for (unsigned t = 0; t < u; ++t) roots.push_back(root_of_unity(t, u, W));
    BigFloat re(1L, W), im(0L, W);
    mpfr_t inv, a, b, c, d;
    mpfr_inits2(64, inv, a, b, c, d, static_cast<mpfr_ptr>(nullptr));
    bool done = false;
    for_each_prime(Lp, [&](u64 p) {
        if (done) return;
        unsigned t = chi.at(p);
        if (t == ChiTable::kZero) return;
        long need = static_cast<long>(W) - static_cast<long>(k) * (bitlen(p) - 1);
        if (need < -2) {
            done = true;
            return;
        }
        // 1/p^k only to the precision its size warrants
        mpfr_prec_t wp = std::max<long>(need + 8, 32);
        mpfr_set_prec(inv, wp);
        mpfr_set_prec(a, wp);
        mpfr_set_prec(b, wp);
        mpfr_set_ui(inv, p, MPFR_RNDN);
        mpfr_pow_ui(inv, inv, k, MPFR_RNDN);
        mpfr_ui_div(inv, 1, inv, MPFR_RNDN);
        mpfr_mul(a, re.get(), inv, MPFR_RNDN);
        mpfr_mul(b, im.get(), inv, MPFR_RNDN);
        if (u <= 2) {
            if (t == 0) {
                mpfr_sub(re.get(), re.get(), a, MPFR_RNDN);
                mpfr_sub(im.get(), im.get(), b, MPFR_RNDN);
            } else {
                mpfr_add(re.get(), re.get(), a, MPFR_RNDN);
                mpfr_add(im.get(), im.get(), b, MPFR_RNDN);
            }
            return;
        }
        // (a + ib) * zeta^t
        const BigComplex& z = roots[t];
        mpfr_set_prec(c, wp);
        mpfr_set_prec(d, wp);
        mpfr_mul(c, a, z.re.get(), MPFR_RNDN);
        mpfr_mul(d, b, z.im.get(), MPFR_RNDN);
        mpfr_sub(c, c, d, MPFR_RNDN);
        mpfr_sub(re.get(), re.get(), c, MPFR_RNDN);
        mpfr_mul(c, a, z.im.get(), MPFR_RNDN);
        mpfr_mul(d, b, z.re.get(), MPFR_RNDN);
        mpfr_add(c, c, d, MPFR_RNDN);
        mpfr_sub(im.get(), im.get(), c, MPFR_RNDN);
    });
    mpfr_clears(inv, a, b, c, d, static_cast<mpfr_ptr>(nullptr));
    BigComplex one(BigFloat(1L, W), BigFloat(W));
    return one / BigComplex(re, im);
}

BigComplex dirichlet_series(const DirichletCharacter& chi, unsigned k, mpfr_prec_t bits) {
    if (k < 2) throw Error(ErrorKind::KTooSmall, "Dirichlet series needs k >= 2");
    u64 F = chi.modulus();
    unsigned u = chi.order();
    mpfr_prec_t W = bits + 32 + bitlen(F);
    auto prm = ds_params(k, F, bits);
    ChiTable tab(chi, true);
    // c_j = B_2j/(2j)! (k)_{2j-1} F^{2j-1}
    std::vector<BigFloat> cj;
    {
        Rational rise = k;
        for (unsigned j = 1; j <= prm.J; ++j) {
            if (j > 1) rise *= Rational((k + 2 * j - 3) * static_cast<long>(k + 2 * j - 2));
            Rational c = bernoulli_number(2 * j) / Rational(factorial(2 * j)) * rise *
                         Rational(ipow(to_integer_u(F), 2 * j - 1));
            cj.emplace_back(c, W);
        }
    }
    BigFloat invFk1(Rational(1, 1) / Rational(to_integer_u(F) * (k - 1)), W);
    BigFloat F2(Rational(to_integer_u(F) * to_integer_u(F)), W);
    std::vector<BigFloat> acc(u, BigFloat(W));
    BigFloat x(W), g(W), y(W), iy(W), iyk(W), s(W), iy2(W);
    for (u64 a = 1; a <= F; ++a) {
        unsigned t = tab.at(a);
        if (t == ChiTable::kZero) continue;
        mpfr_set_ui(g.get(), 0, MPFR_RNDN);
        for (u64 m = 0; m < prm.N; ++m) {
            mpfr_set_ui(x.get(), a + m * F, MPFR_RNDN);
            mpfr_pow_ui(x.get(), x.get(), k, MPFR_RNDN);
            mpfr_ui_div(x.get(), 1, x.get(), MPFR_RNDN);
            mpfr_add(g.get(), g.get(), x.get(), MPFR_RNDN);
        }
        mpfr_set_ui(y.get(), a + prm.N * F, MPFR_RNDN);
        mpfr_ui_div(iy.get(), 1, y.get(), MPFR_RNDN);
        mpfr_pow_ui(iyk.get(), iy.get(), k, MPFR_RNDN);
        // y^{1-k}/(F(k-1)) + y^{-k}/2
        mpfr_mul(s.get(), iyk.get(), y.get(), MPFR_RNDN);
        mpfr_mul(s.get(), s.get(), invFk1.get(), MPFR_RNDN);
        mpfr_add(g.get(), g.get(), s.get(), MPFR_RNDN);
        mpfr_div_2ui(s.get(), iyk.get(), 1, MPFR_RNDN);
        mpfr_add(g.get(), g.get(), s.get(), MPFR_RNDN);
        mpfr_mul(iy2.get(), iy.get(), iy.get(), MPFR_RNDN);
        mpfr_mul(s.get(), iyk.get(), iy.get(), MPFR_RNDN);
        for (unsigned j = 0; j < prm.J; ++j) {
            mpfr_mul(x.get(), s.get(), cj[j].get(), MPFR_RNDN);
            mpfr_add(g.get(), g.get(), x.get(), MPFR_RNDN);
            mpfr_mul(s.get(), s.get(), iy2.get(), MPFR_RNDN);
        }
        acc[t] += g;
    }
    BigComplex z = from_buckets(acc, u, W);
    return BigComplex(z.re.with_prec(bits), z.im.with_prec(bits));
}

BigComplex l_numeric_functional_equation(const DirichletCharacter& chi, unsigned k, const PrecisionPlan& plan,
                                         LSeriesEvaluator ev, std::string* used) {
    DirichletCharacter chibar = chi.conj();
    if (ev == LSeriesEvaluator::automatic)
        ev = euler_cost_ns(chibar, plan) <= ds_cost_ns(chibar, k, plan.bits) ? LSeriesEvaluator::euler_product
                                                                              : LSeriesEvaluator::dirichlet_series;
    BigComplex Lk = ev == LSeriesEvaluator::euler_product ? euler_product(chibar, k, plan)
                                                          : dirichlet_series(chibar, k, plan.bits);
    if (used) *used = ev == LSeriesEvaluator::euler_product ? "euler_product" : "dirichlet_series";
    return fe_factor(chi, k, plan.bits) * Lk;
}

Cyclotomic l_via_functional_equation(const DirichletCharacter& chi, unsigned k, const FEOptions& opt,
                                     FEReport* report) {
    if (k < 2) throw Error(ErrorKind::KTooSmall, "the functional-equation method needs k >= 2");
    if (!chi.is_primitive()) {
        auto [f, prim] = conductor_and_primitive(chi);
        return l_via_functional_equation(prim, k, opt, report) * induced_correction(prim, chi.modulus(), k);
    }
    unsigned u = chi.order();
    if (chi.is_even() != (k % 2 == 0)) return Cyclotomic(u);
    Cyclotomic D = denominator_bound(chi, k);
    PrecisionPlan plan = precision_target(chi, k, opt.extra_nats);
    Cyclotomic shape(u);
    unsigned m = shape.order();
    for (unsigned attempt = 1;; ++attempt) {
        std::string used;
        std::vector<BigFloat> coords;
        mpfr_prec_t W = plan.bits;
        try {
            if (m == 1) {
                BigComplex v = l_numeric_functional_equation(chi, k, plan, opt.evaluator, &used);
                coords.push_back(v.re * BigFloat(D.to_rational(), W));
            } else {
                // values at the embeddings zeta_m -> zeta_m^b for b < m/2, b coprime to m
                std::vector<unsigned> bs;
                for (unsigned b = 1; 2 * b < m; ++b)
                    if (std::gcd(b, m) == 1) bs.push_back(b);
                std::size_t n = 2 * bs.size();
                std::vector<std::vector<BigFloat>> A(n, std::vector<BigFloat>(n + 1, BigFloat(W)));
                for (std::size_t r = 0; r < bs.size(); ++r) {
                    unsigned b = bs[r];
                    unsigned bu = b;
                    if (u != m && b % 2 == 0) bu = b + m;
                    BigComplex v = l_numeric_functional_equation(chi.power(bu), k, plan, opt.evaluator, &used);
                    v = v * D.galois(b).embed(1, W);
                    for (std::size_t i = 0; i < n; ++i) {
                        BigComplex z = root_of_unity(static_cast<long>(b * i % m), m, W);
                        A[2 * r][i] = z.re;
                        A[2 * r + 1][i] = z.im;
                    }
                    A[2 * r][n] = v.re;
                    A[2 * r + 1][n] = v.im;
                }
                // Gaussian elimination with partial pivoting
                for (std::size_t c = 0; c < n; ++c) {
                    std::size_t piv = c;
                    for (std::size_t r = c + 1; r < n; ++r)
                        if (abs(A[r][c]) > abs(A[piv][c])) piv = r;
                    std::swap(A[c], A[piv]);
                    for (std::size_t r = 0; r < n; ++r) {
                        if (r == c || A[r][c].is_zero()) continue;
                        BigFloat f = A[r][c] / A[c][c];
                        for (std::size_t j = c; j <= n; ++j) A[r][j] -= f * A[c][j];
                    }
                }
                for (std::size_t i = 0; i < n; ++i) coords.push_back(A[i][n] / A[i][i]);
            }
            double worst = -std::numeric_limits<double>::infinity();
            for (const auto& x : coords) {
                BigFloat d = x.distance_to_integer();
                if (!d.is_zero()) worst = std::max(worst, std::log2(d.to_double()));
            }
            Cyclotomic X = cyclotomic_round(coords, m, opt.slack);
            if (report) {
                report->plan = plan;
                report->evaluator = used;
                report->residual_log2 = worst;
                report->attempts = attempt;
            }
            return X / D;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::RoundingAmbiguous || attempt >= 2) throw;
            plan = plan_from_B(2 * plan.B, k);
        }
    }
}

}  // namespace lneg
