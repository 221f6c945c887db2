#include "lneg/bernoulli.hpp"
#include "lneg/errors.hpp"

#include <gtest/gtest.h>

using namespace lneg;

namespace {

// coefficients of T/(e^{FT}-1) sum_r chi(r) e^{rT} by exact series division, times k!
std::vector<Cyclotomic> generating_function(const DirichletCharacter& chi, unsigned kmax) {
    unsigned u = chi.order();
    std::uint64_t F = chi.modulus();
    std::vector<Cyclotomic> num(kmax + 1, Cyclotomic(u)), den(kmax + 1, Cyclotomic(u));
    for (std::uint64_t r = 0; r < F; ++r) {
        Cyclotomic c = chi.evaluate(static_cast<std::int64_t>(r));
        if (c.is_zero()) continue;
        Rational p = 1;
        for (unsigned m = 0; m <= kmax; ++m) {
            num[m] += c * (p / Rational(factorial(m)));
            p *= static_cast<long>(r);
        }
    }
    // (e^{FT}-1)/T = sum F^{n+1} T^n / (n+1)!
    for (unsigned n = 0; n <= kmax; ++n)
        den[n] = Cyclotomic(rpow(Rational(static_cast<long>(F)), n + 1) / Rational(factorial(n + 1)));
    std::vector<Cyclotomic> q(kmax + 1, Cyclotomic(u));
    for (unsigned n = 0; n <= kmax; ++n) {
        Cyclotomic acc = num[n];
        for (unsigned j = 0; j < n; ++j) acc -= q[j] * den[n - j];
        q[n] = acc / den[0];
    }
    for (unsigned n = 0; n <= kmax; ++n) q[n] *= Rational(factorial(n));
    return q;
}

const BernoulliVariant kVariants[] = {BernoulliVariant::direct1,     BernoulliVariant::direct2,
                                      BernoulliVariant::direct3,     BernoulliVariant::recursion_S,
                                      BernoulliVariant::recursion_half, BernoulliVariant::recursion_lucas};

}  // namespace

TEST(ChiBernoulli, Examples) {
    auto triv = DirichletCharacter::trivial(1);
    EXPECT_EQ(chi_bernoulli(triv, 12, BernoulliVariant::direct1), Cyclotomic(make_rational(-691, 2730)));
    auto c5 = DirichletCharacter::from_discriminant(5);
    EXPECT_EQ(chi_bernoulli(c5, 2, BernoulliVariant::direct1), Cyclotomic(make_rational(4, 5)));
    for (auto v : kVariants) EXPECT_TRUE(chi_bernoulli(c5, 3, v).is_zero());
    auto c7 = DirichletCharacter::from_discriminant(-7);
    EXPECT_EQ(chi_bernoulli(c7, 3, BernoulliVariant::direct1), Cyclotomic(make_rational(48, 7)));
}

TEST(ChiBernoulli, FourTermSumByHand) {
    // 5 sum_a chi5(a) ((a/5)^2 - a/5 + 1/6)
    auto c5 = DirichletCharacter::from_discriminant(5);
    Rational s = 0;
    for (long a = 1; a < 5; ++a) {
        Rational x = make_rational(a, 5);
        s += Rational(c5.evaluate_real(a)) * (x * x - x + make_rational(1, 6));
    }
    EXPECT_EQ(s * 5, make_rational(4, 5));
}

TEST(LBernoulli, Examples) {
    auto triv = DirichletCharacter::trivial(1);
    EXPECT_EQ(l_via_bernoulli(triv, 2), Cyclotomic(make_rational(-1, 12)));
    EXPECT_EQ(l_via_bernoulli(triv, 1), Cyclotomic(make_rational(-1, 2)));
    EXPECT_EQ(l_via_bernoulli(DirichletCharacter::from_discriminant(-7), 3), Cyclotomic(make_rational(-16, 7)));
    EXPECT_EQ(l_via_bernoulli(DirichletCharacter::from_discriminant(5), 3), Cyclotomic(0));
}

TEST(ChiBernoulli, GeneratingFunctionOracle) {
    for (std::uint64_t F = 1; F <= 12; ++F) {
        for (const auto& chi : primitive_characters(F)) {
            auto g = generating_function(chi, 8);
            for (unsigned k = 1; k <= 8; ++k) {
                ASSERT_EQ(chi_bernoulli(chi, k, BernoulliVariant::direct1), g[k]) << chi.spec() << " k=" << k;
                Cyclotomic l = g[k] * make_rational(-1, k);
                if (F == 1 && k == 1) l -= Cyclotomic(1);
                ASSERT_EQ(l_via_bernoulli(chi, k), l) << chi.spec() << " k=" << k;
            }
        }
    }
}

TEST(ChiBernoulli, SeriesDivisionMatches) {
    for (std::uint64_t F : {1u, 5u, 7u, 8u, 13u}) {
        for (const auto& chi : primitive_characters(F)) {
            auto s = chi_bernoulli_series(chi, 14);
            for (unsigned k = 1; k <= 14; ++k) ASSERT_EQ(s[k], chi_bernoulli(chi, k, BernoulliVariant::direct1)) << chi.spec() << " k=" << k;
        }
    }
}

TEST(ChiBernoulli, AllVariantsAgree) {
    for (std::uint64_t F = 1; F <= 50; ++F) {
        for (const auto& chi : primitive_characters(F)) {
            for (unsigned k = 1; k <= 20; ++k) {
                if (k >= 2 && chi.is_even() != (k % 2 == 0)) continue;
                Cyclotomic ref = chi_bernoulli(chi, k, BernoulliVariant::direct1);
                for (auto v : kVariants) {
                    Cyclotomic got;
                    try {
                        got = chi_bernoulli(chi, k, v);
                    } catch (const Error& e) {
                        ASSERT_EQ(e.kind(), ErrorKind::VariantInapplicable);
                        ASSERT_TRUE(chi.is_trivial());
                        continue;
                    }
                    ASSERT_EQ(got, ref) << chi.spec() << " k=" << k << " " << bernoulli_variant_name(v);
                }
            }
        }
    }
}

TEST(ChiBernoulli, HalfRecursionRejectsTrivial) {
    try {
        chi_bernoulli(DirichletCharacter::trivial(1), 4, BernoulliVariant::recursion_half);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::VariantInapplicable);
    }
}

TEST(ChiBernoulli, ThirdDirectFormula) {
    // alternating sum over 0 <= r < Fj
    for (std::uint64_t F = 1; F <= 30; ++F)
        for (const auto& chi : primitive_characters(F))
            for (unsigned k = 1; k <= 10; ++k)
                ASSERT_EQ(chi_bernoulli(chi, k, BernoulliVariant::direct3), chi_bernoulli(chi, k, BernoulliVariant::direct1))
                    << chi.spec() << " k=" << k;
}

TEST(ChiBernoulli, LucasIdentitiesVerbatim) {
    for (std::uint64_t F = 3; F <= 30; ++F) {
        for (const auto& chi : primitive_characters(F)) {
            Rational Fr(static_cast<long>(F));
            for (unsigned k = 1; k <= 8; ++k) {
                Cyclotomic lhs(chi.order()), rhs(chi.order());
                for (unsigned j = 0; 2 * j <= k - 1; ++j) {
                    Rational w = Rational(binomial(k, 2 * j + 1)) * rpow(Fr, 2 * j);
                    if (chi.is_even())
                        lhs += chi_bernoulli(chi, 2 * k - 2 * j) * (w / Rational(2 * k - 2 * j));
                    else
                        lhs += chi_bernoulli(chi, 2 * k - 1 - 2 * j) * w;
                }
                for (std::uint64_t r = 1; 2 * r < F; ++r) {
                    Rational x(static_cast<long>(r)), y(static_cast<long>(F - r));
                    Rational t;
                    if (chi.is_even()) t = rpow(x, k) * rpow(y, k);
                    else t = rpow(x, k - 1) * rpow(y, k - 1) * Rational(static_cast<long>(F - 2 * r));
                    rhs += chi.evaluate(static_cast<std::int64_t>(r)) * t;
                }
                Rational scale = (k % 2 ? Rational(-1) : Rational(1)) / Fr;
                if (!chi.is_even()) scale *= Rational(k);
                rhs *= scale;
                ASSERT_EQ(lhs, rhs) << chi.spec() << " k=" << k;
            }
        }
    }
}

TEST(ChiBernoulli, PowerSums) {
    auto c7 = DirichletCharacter::from_discriminant(-7);
    ChiBernoulliContext ctx(c7);
    Rational s3 = 0, q3 = 0;
    for (long r = 0; r < 7; ++r) s3 += Rational(c7.evaluate_real(r) * r * r * r);
    for (long r = 1; r < 4; ++r) q3 += Rational(c7.evaluate_real(r) * r * r * r);
    EXPECT_EQ(ctx.S(3), Cyclotomic(s3));
    EXPECT_EQ(ctx.Q(3), Cyclotomic(q3));
    EXPECT_EQ(ctx.power_sum(7, 3), Cyclotomic(s3));
}

TEST(ChiBernoulli, VariantNames) {
    for (auto v : kVariants) EXPECT_EQ(parse_bernoulli_variant(bernoulli_variant_name(v)), v);
    EXPECT_THROW(parse_bernoulli_variant("nope"), Error);
}
