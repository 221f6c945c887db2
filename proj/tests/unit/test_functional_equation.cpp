#include "lneg/bernoulli.hpp"
#include "lneg/errors.hpp"
#include "lneg/functional_equation.hpp"
#include "lneg/number_theory.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lneg;

namespace {

double closed_form_limit(double B, unsigned k) { return std::ceil(std::pow(std::exp(B) / (k - 1), 1.0 / (k - 1))); }

double direct_series(const DirichletCharacter& chi, unsigned k, long terms) {
    double s = 0;
    for (long n = terms; n >= 1; --n) s += chi.evaluate_real(n) / std::pow(static_cast<double>(n), k);
    return s;
}

}  // namespace

TEST(DenominatorBound, Examples) {
    EXPECT_EQ(denominator_bound(DirichletCharacter::trivial(1), 12), Cyclotomic(32760));
    EXPECT_EQ(denominator_bound(DirichletCharacter::from_discriminant(-7), 3), Cyclotomic(7));
    EXPECT_EQ(denominator_bound(DirichletCharacter::from_discriminant(12), 2), Cyclotomic(1));
    EXPECT_EQ(denominator_bound(DirichletCharacter::from_discriminant(-4), 3), Cyclotomic(2));
    EXPECT_EQ(denominator_bound(DirichletCharacter::from_discriminant(8), 2), Cyclotomic(1));
}

TEST(DenominatorBound, ZetaDenominators) {
    for (unsigned k = 2; k <= 40; k += 2) {
        Rational z = l_via_bernoulli(DirichletCharacter::trivial(1), k).to_rational();
        Rational scaled = z * denominator_bound(DirichletCharacter::trivial(1), k).to_rational();
        ASSERT_EQ(scaled.get_den(), 1) << k;
    }
}

TEST(PrecisionTarget, ZetaTwelve) {
    PrecisionPlan p = precision_target(DirichletCharacter::trivial(1), 12);
    double B = 11.5 * std::log(12 / (2 * M_PI * M_E)) + std::log(32760.0) + 10;
    EXPECT_NEAR(p.B, B, 1e-9);
    EXPECT_NEAR(p.B, 16.4, 0.2);
    EXPECT_EQ(p.prime_limit, 4u);
    EXPECT_EQ(p.bits, static_cast<mpfr_prec_t>(std::ceil(B / std::log(2.0))) + 64);
}

TEST(PrecisionTarget, LargeConductorSmallK) {
    auto chi = DirichletCharacter::from_discriminant(1000001);
    PrecisionPlan p = precision_target(chi, 4);
    double B = 3.5 * std::log(4e6 * (1 + 1e-6) / (2 * M_PI * M_E)) + 10;
    EXPECT_NEAR(p.B, B, 1e-9);
    EXPECT_NEAR(p.B, 53.3, 0.1);
    EXPECT_NEAR(static_cast<double>(p.prime_limit), closed_form_limit(B, 4), 2.0);
    EXPECT_GT(p.prime_limit, 10000000u);
}

TEST(PrecisionTarget, KOneRejected) {
    try {
        precision_target(DirichletCharacter::from_discriminant(-7), 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::KTooSmall);
    }
    EXPECT_THROW(l_via_functional_equation(DirichletCharacter::from_discriminant(-7), 1), Error);
}

TEST(PrecisionTarget, LimitShrinksAsKDoubles) {
    for (std::int64_t D : {1001, 10001, 100001, 1000001}) {
        if (!is_fundamental_discriminant(D)) continue;
        auto chi = DirichletCharacter::from_discriminant(D);
        std::uint64_t prev = ~0ull;
        for (unsigned k : {2u, 4u, 8u, 16u}) {
            auto p = precision_target(chi, k);
            EXPECT_LE(p.prime_limit, prev) << D << " k=" << k;
            prev = p.prime_limit;
        }
    }
}

TEST(EulerProduct, ZetaTwelve) {
    auto triv = DirichletCharacter::trivial(1);
    PrecisionPlan p = precision_target(triv, 12, 30);
    BigComplex z = euler_product(triv, 12, p);
    double partial = 0;
    for (int n = 20000; n >= 1; --n) partial += std::pow(n, -12.0);
    EXPECT_NEAR(z.re.to_double(), partial, 1e-14);
    EXPECT_NEAR(z.re.to_double(), 1.000246086, 1e-9);
}

TEST(EulerProduct, ChiFiveAtFour) {
    auto c5 = DirichletCharacter::from_discriminant(5);
    PrecisionPlan p = precision_target(c5, 4, 40);
    BigComplex e = euler_product(c5, 4, p);
    BigComplex d = dirichlet_series(c5, 4, 80);
    double oracle = direct_series(c5, 4, 10000);
    EXPECT_NEAR(e.re.to_double(), oracle, 1e-12);
    EXPECT_NEAR(d.re.to_double(), oracle, 1e-12);
    EXPECT_NEAR(oracle, 0.9293370, 1e-7);
}

TEST(EulerProduct, EmptyRange) {
    PrecisionPlan p;
    p.B = 1;
    p.bits = 64;
    p.prime_limit = 1;
    BigComplex e = euler_product(DirichletCharacter::from_discriminant(5), 8, p);
    EXPECT_EQ(e.re.to_double(), 1.0);
    EXPECT_EQ(e.im.to_double(), 0.0);
}

TEST(EulerProduct, CloseToOne) {
    for (std::uint64_t F : {5u, 7u, 13u, 16u, 40u}) {
        for (const auto& chi : primitive_characters(F)) {
            for (unsigned k = 4; k <= 14; ++k) {
                auto p = precision_target(chi, k);
                BigComplex v = euler_product(chi.conj(), k, p);
                double bound = 3 * std::ldexp(1.0, 1 - static_cast<int>(k));
                double d = std::hypot(v.re.to_double() - 1, v.im.to_double());
                ASSERT_LT(d, bound) << chi.spec() << " k=" << k;
            }
        }
    }
}

TEST(FunctionalEquation, Examples) {
    EXPECT_EQ(l_via_functional_equation(DirichletCharacter::trivial(1), 12), Cyclotomic(make_rational(691, 32760)));
    EXPECT_EQ(l_via_functional_equation(DirichletCharacter::from_discriminant(5), 2), Cyclotomic(make_rational(-2, 5)));
    EXPECT_EQ(l_via_functional_equation(DirichletCharacter::from_discriminant(-7), 3), Cyclotomic(make_rational(-16, 7)));
}

TEST(FunctionalEquation, BothEvaluators) {
    auto chi = DirichletCharacter::from_discriminant(-23);
    Cyclotomic ref = l_via_bernoulli(chi, 5);
    for (auto ev : {LSeriesEvaluator::euler_product, LSeriesEvaluator::dirichlet_series}) {
        FEOptions opt;
        opt.evaluator = ev;
        EXPECT_EQ(l_via_functional_equation(chi, 5, opt), ref);
    }
}

TEST(FunctionalEquation, AgreesWithBernoulli) {
    for (std::uint64_t F = 1; F <= 50; ++F) {
        for (const auto& chi : primitive_characters(F)) {
            for (unsigned k = 2; k <= 14; ++k) {
                if (chi.is_even() != (k % 2 == 0)) continue;
                ASSERT_EQ(l_via_functional_equation(chi, k), l_via_bernoulli(chi, k)) << chi.spec() << " k=" << k;
            }
        }
    }
}

TEST(FunctionalEquation, RoundingResiduals) {
    double worst = -1e9;
    for (std::uint64_t F = 1; F <= 50; ++F) {
        for (const auto& chi : primitive_characters(F)) {
            for (unsigned k = 2; k <= 14; ++k) {
                if (chi.is_even() != (k % 2 == 0)) continue;
                FEOptions opt;
                opt.extra_nats = 20;
                FEReport rep;
                l_via_functional_equation(chi, k, opt, &rep);
                worst = std::max(worst, rep.residual_log2);
                ASSERT_LT(rep.residual_log2, -40) << chi.spec() << " k=" << k;
            }
        }
    }
    EXPECT_LT(worst, -40);
}

TEST(FunctionalEquation, LargeK) {
    auto chi = DirichletCharacter::from_discriminant(1001);
    EXPECT_EQ(l_via_functional_equation(chi, 60), l_via_bernoulli(chi, 60));
}
