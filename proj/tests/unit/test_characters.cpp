#include "lneg/bernoulli.hpp"
#include "lneg/characters.hpp"
#include "lneg/errors.hpp"
#include "lneg/number_theory.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace lneg;

namespace {

std::vector<std::int64_t> fundamental_panel(std::size_t count) {
    std::vector<std::int64_t> out;
    for (std::int64_t a = 3; out.size() < count; ++a)
        for (std::int64_t D : {a, -a})
            if (out.size() < count && is_fundamental_discriminant(D)) out.push_back(D);
    return out;
}

}  // namespace

TEST(Characters, FromDiscriminant) {
    auto c5 = DirichletCharacter::from_discriminant(5);
    EXPECT_EQ(c5.modulus(), 5u);
    EXPECT_TRUE(c5.is_even());
    EXPECT_EQ(c5.order(), 2u);
    EXPECT_TRUE(c5.is_primitive());
    auto c4 = DirichletCharacter::from_discriminant(-4);
    EXPECT_EQ(c4.modulus(), 4u);
    EXPECT_FALSE(c4.is_even());
    EXPECT_EQ(c4.order(), 2u);
    auto c8 = DirichletCharacter::from_discriminant(8);
    EXPECT_EQ(c8.modulus(), 8u);
    EXPECT_TRUE(c8.is_even());
    EXPECT_EQ(c8.order(), 2u);
    try {
        DirichletCharacter::from_discriminant(20);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotFundamental);
    }
}

TEST(Characters, Evaluate) {
    auto c5 = DirichletCharacter::from_discriminant(5);
    EXPECT_EQ(c5.evaluate(2), Cyclotomic(-1));
    EXPECT_EQ(c5.evaluate(10), Cyclotomic(0));
    EXPECT_EQ(DirichletCharacter::from_discriminant(-4).evaluate(7), Cyclotomic(-1));
}

TEST(Characters, ConductorAndPrimitive) {
    auto [f1, p1] = conductor_and_primitive(DirichletCharacter::trivial(6));
    EXPECT_EQ(f1, 1u);
    EXPECT_EQ(p1.modulus(), 1u);
    auto c5 = DirichletCharacter::from_discriminant(5);
    auto [f2, p2] = conductor_and_primitive(c5.induce(15));
    EXPECT_EQ(f2, 5u);
    EXPECT_EQ(p2, c5);
    auto c8 = DirichletCharacter::from_discriminant(8);
    auto [f3, p3] = conductor_and_primitive(c8);
    EXPECT_EQ(f3, 8u);
    EXPECT_EQ(p3, c8);
}

TEST(Characters, InducedCorrection) {
    auto c5 = DirichletCharacter::from_discriminant(5);
    EXPECT_EQ(induced_correction(c5, 5, 2), Cyclotomic(1));
    EXPECT_EQ(induced_correction(c5, 15, 2), Cyclotomic(4));
    auto triv = DirichletCharacter::trivial(1);
    EXPECT_EQ(induced_correction(triv, 2, 2), Cyclotomic(-1));
    // L(chi mod 2, -1) = zeta(-1)(1 - 2) = 1/12
    Cyclotomic v = l_via_bernoulli(DirichletCharacter::trivial(2), 2);
    EXPECT_EQ(v, Cyclotomic(make_rational(1, 12)));
}

TEST(Characters, InducedMatchesDirectSum) {
    // non-primitive B_k(chi) straight from the defining sum, against the corrected primitive value
    for (std::uint64_t F : {12u, 15u, 20u, 21u}) {
        for (const auto& chi : all_characters(F)) {
            if (chi.is_primitive()) continue;
            for (unsigned k = 2; k <= 4; ++k) {
                if (chi.is_even() != (k % 2 == 0)) continue;
                // B_k(chi) = F^{k-1} sum_a chi(a) B_k(a/F)
                Cyclotomic b(chi.order());
                for (std::uint64_t a = 1; a < F; ++a) {
                    Rational x = make_rational(static_cast<long>(a), static_cast<long>(F)), bp = 0;
                    for (unsigned j = 0; j <= k; ++j) bp += Rational(binomial(k, j)) * bernoulli_number(j) * rpow(x, k - j);
                    b += chi.evaluate(static_cast<std::int64_t>(a)) * bp;
                }
                b *= rpow(Rational(static_cast<long>(F)), k - 1);
                Cyclotomic want = b * make_rational(-1, k);
                ASSERT_EQ(l_via_bernoulli(chi, k), want) << chi.spec() << " k=" << k;
            }
        }
    }
}

TEST(Characters, GaussSumExamples) {
    auto g5 = gauss_sum(DirichletCharacter::from_discriminant(5), 64);
    EXPECT_NEAR(g5.re.to_double(), std::sqrt(5.0), 1e-15);
    EXPECT_NEAR(g5.im.to_double(), 0.0, 1e-15);
    auto g4 = gauss_sum(DirichletCharacter::from_discriminant(-4), 64);
    EXPECT_NEAR(g4.re.to_double(), 0.0, 1e-15);
    EXPECT_NEAR(g4.im.to_double(), 2.0, 1e-15);
    auto g1 = gauss_sum(DirichletCharacter::trivial(1), 64);
    EXPECT_NEAR(g1.re.to_double(), 1.0, 1e-15);
}

TEST(Characters, GaussSumModulus) {
    for (std::uint64_t F = 1; F <= 200; ++F) {
        for (const auto& chi : primitive_characters(F)) {
            auto g = gauss_sum(chi, 64);
            BigFloat err = abs(sqrt(g.norm2()) - sqrt(BigFloat(static_cast<long>(F), 64)));
            ASSERT_LT(err.to_double(), std::ldexp(1.0, -64 + 8)) << chi.spec();
        }
    }
}

TEST(Characters, CompletelyMultiplicative) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::int64_t> dn(1, 1000000);
    for (std::uint64_t F : {7u, 9u, 13u, 16u, 35u, 63u, 1000u}) {
        auto chars = all_characters(F);
        int done = 0;
        while (done < 1000) {
            std::int64_t m = dn(rng), n = dn(rng);
            if (std::gcd<std::uint64_t>(m, F) != 1 || std::gcd<std::uint64_t>(n, F) != 1) continue;
            const auto& chi = chars[rng() % chars.size()];
            ASSERT_EQ(chi.evaluate(m * n), chi.evaluate(m) * chi.evaluate(n)) << chi.spec();
            ++done;
        }
    }
}

TEST(Characters, ParityAndOrder) {
    for (std::uint64_t F : {5u, 8u, 12u, 15u, 16u, 27u, 40u}) {
        for (const auto& chi : all_characters(F)) {
            EXPECT_EQ(chi.evaluate(static_cast<std::int64_t>(F) - 1), chi.is_even() ? Cyclotomic(1) : Cyclotomic(-1));
            EXPECT_TRUE(chi.power(chi.order()).is_trivial());
            EXPECT_EQ(euler_phi(F) % chi.order(), 0u);
        }
    }
}

TEST(Characters, QuadraticMatchesKronecker) {
    for (std::int64_t D : fundamental_panel(50)) {
        auto chi = DirichletCharacter::from_discriminant(D);
        ASSERT_EQ(chi.modulus(), static_cast<std::uint64_t>(std::llabs(D)));
        for (std::int64_t n = -10000; n <= 10000; ++n) ASSERT_EQ(chi.evaluate_real(n), kronecker(D, n)) << D << " " << n;
    }
}

TEST(Characters, QuadraticRootNumberIsOne) {
    for (std::int64_t D : fundamental_panel(50)) {
        auto g = gauss_sum(DirichletCharacter::from_discriminant(D), 64);
        double s = std::sqrt(static_cast<double>(std::llabs(D)));
        // g / (i^e sqrt|D|), e = 0 for D > 0 and 1 for D < 0
        double re = D > 0 ? g.re.to_double() / s : g.im.to_double() / s;
        double im = D > 0 ? g.im.to_double() / s : -g.re.to_double() / s;
        EXPECT_NEAR(re, 1.0, 1e-15) << D;
        EXPECT_NEAR(im, 0.0, 1e-15) << D;
    }
}

TEST(Characters, SpecRoundTrip) {
    for (std::uint64_t F : {7u, 13u, 24u, 45u}) {
        for (const auto& chi : all_characters(F)) EXPECT_EQ(parse_character(chi.spec()), chi);
    }
    EXPECT_EQ(parse_character("D:-7"), DirichletCharacter::from_discriminant(-7));
    auto pc = parse_character("m:15:g:2,2:e:1,1");
    EXPECT_EQ(pc.modulus(), 15u);
}

TEST(Characters, ParseErrorsCarryPosition) {
    try {
        parse_character("m:15:g:x");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ParseError);
        EXPECT_NE(std::string(e.what()).find("position 7"), std::string::npos);
    }
    EXPECT_THROW(parse_character("Q:5"), Error);
    EXPECT_THROW(parse_character("D:"), Error);
}
