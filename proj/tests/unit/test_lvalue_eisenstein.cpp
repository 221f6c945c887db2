#include "lneg/bernoulli.hpp"
#include "lneg/errors.hpp"
#include "lneg/lvalue_eisenstein.hpp"
#include "lneg/modular_forms.hpp"
#include "lneg/number_theory.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lneg;

namespace {

Rational bern(std::int64_t D, unsigned k) {
    return l_via_bernoulli(DirichletCharacter::from_discriminant(D), k).to_rational();
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InvalidArgument;
}

std::filesystem::path fresh_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("lneg_test_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST(Hecke, FourierCoefficients) {
    auto triv = DirichletCharacter::trivial(1);
    EXPECT_EQ(hecke_fourier_coefficient(2, triv, 1, 5, 1), Cyclotomic(2));
    EXPECT_EQ(hecke_fourier_coefficient(2, triv, 1, 5, 0), Cyclotomic(make_rational(1, 120)));
    Rational want = s_sum(SigmaKind::plain, 1, 20, 4) - 2 * s_sum(SigmaKind::plain, 1, 5, 4);
    EXPECT_EQ(hecke_fourier_coefficient(2, triv, 1, 5, 2), Cyclotomic(want));
    auto c4 = DirichletCharacter::from_discriminant(-4);
    EXPECT_EQ(kind_of([&] { hecke_fourier_coefficient(3, c4, 1, 12, 1); }), ErrorKind::GcdViolation);
    EXPECT_EQ(kind_of([&] { hecke_fourier_coefficient(2, c4, 1, 5, 1); }), ErrorKind::InvalidArgument);
}

TEST(Hecke, ConstantTermIsProductOfLValues) {
    auto triv = DirichletCharacter::trivial(1);
    for (std::int64_t D : {5, 8, 12, 13, 17, 21}) {
        for (unsigned k = 2; k <= 8; k += 2) {
            Rational a0 = hecke_fourier_coefficient(k, triv, 1, D, 0).to_rational();
            Rational want = l_via_bernoulli(triv, k).to_rational() * bern(D, k) / 4;
            ASSERT_EQ(a0, want) << D << " " << k;
        }
    }
}

TEST(Hecke, EvenExamples) {
    EXPECT_EQ(l_hecke_even(5, 2), make_rational(-2, 5));
    EXPECT_EQ(l_hecke_even(8, 2), Rational(-1));
    EXPECT_EQ(s_sum(SigmaKind::plain, 1, 8, 4), Rational(5));
    EXPECT_EQ(l_hecke_even(5, 4), Rational(2));
    EXPECT_EQ(s_sum(SigmaKind::plain, 3, 5, 4), Rational(2));
}

TEST(Hecke, OddExamples) {
    EXPECT_EQ(l_hecke_odd(-7, 3), make_rational(-16, 7));
    EXPECT_EQ(l_hecke_odd(-8, 3), bern(-8, 3));
    EXPECT_EQ(l_hecke_odd(-19, 3), bern(-19, 3));
}

TEST(Hecke, AgreesWithBernoulli) {
    for (std::int64_t D = 5; D <= 300; ++D) {
        if (!is_fundamental_discriminant(D)) continue;
        for (unsigned k = 2; k <= 12; k += 2) ASSERT_EQ(l_hecke_even(D, k), bern(D, k)) << D << " " << k;
    }
    for (std::int64_t D = -7; D >= -300; --D) {
        if (!is_fundamental_discriminant(D)) continue;
        for (unsigned k = 3; k <= 11; k += 2) ASSERT_EQ(l_hecke_odd(D, k), bern(D, k)) << D << " " << k;
    }
}

TEST(HalfEven, SelectLevel) {
    EXPECT_EQ(select_level_even(12), 12u);
    EXPECT_EQ(select_level_even(17), 16u);
    EXPECT_EQ(select_level_even(5), 4u);
    EXPECT_EQ(select_level_even(8), 8u);
    EXPECT_EQ(select_level_even(13), 12u);
}

TEST(HalfEven, Lengths) {
    for (unsigned k = 2; k <= 24; k += 2) EXPECT_EQ(half_even_length(k, 4), k / 6 + 1) << k;
    EXPECT_EQ(half_even_m(8), 4u);
    EXPECT_EQ(half_even_m(12), 3u);
    EXPECT_EQ(half_even_m(16), 4u);
}

TEST(HalfEven, WeightTwoSets) {
    auto s4 = half_even_coefficients(2, 4);
    ASSERT_EQ(s4.coefficients.size(), 1u);
    EXPECT_EQ(s4.coefficients[0], make_rational(-2, 5));
    EXPECT_GE(s4.validation_count, 10u);
    EXPECT_EQ(evaluate_half_even(s4, 5), make_rational(-2, 5));
    EXPECT_EQ(evaluate_half_even(s4, 12), Rational(-2));
    auto s16 = half_even_coefficients(2, 16);
    for (std::int64_t D : admissible_discriminants(CoefficientKind::half_even, 16, 0, 0, 20))
        EXPECT_EQ(D % 8, 1) << D;
}

TEST(HalfEven, UnknownCountAtLevelFour) {
    for (unsigned k = 2; k <= 24; k += 2) {
        auto s = half_even_coefficients(k, 4);
        EXPECT_LE(s.coefficients.size(), k / 6 + 1) << k;
        EXPECT_EQ(kohnen_plus_dimension(k), k / 6 + 1);
    }
}

TEST(HalfEven, Evaluate) {
    EXPECT_EQ(l_half_even(5, 2), make_rational(-2, 5));
    EXPECT_EQ(l_half_even(17, 2, 16), bern(17, 2));
    EXPECT_EQ(kind_of([] { l_half_even(5, 2, 16); }), ErrorKind::DeadLevel);
    EXPECT_EQ(kind_of([] { l_half_even(20, 2); }), ErrorKind::NotFundamental);
    for (unsigned N : {4u, 8u, 12u, 16u})
        for (std::int64_t D : {17, 33, 41, 57, 73, 89})
            if (half_even_factor(D, N) != 0) ASSERT_EQ(l_half_even(D, 6, N), bern(D, 6)) << D << " " << N;
}

TEST(HalfEven, HeldOutValidation) {
    for (unsigned N : {4u, 8u, 12u, 16u}) {
        for (unsigned k = 2; k <= 12; k += 2) {
            auto s = half_even_coefficients(k, N);
            auto held = admissible_discriminants(CoefficientKind::half_even, N, 0, 200, 10);
            EXPECT_TRUE(validate_coefficients(s, held).empty()) << k << " " << N;
        }
    }
}

TEST(HalfOdd, SelectLevel) {
    EXPECT_EQ(select_level_odd(-20), 5u);
    EXPECT_EQ(select_level_odd(-7), 6u);
    EXPECT_EQ(select_level_odd(-3), 3u);
    EXPECT_EQ(select_level_odd(-24), 6u);
    EXPECT_EQ(select_level_odd(-35), 7u);
}

TEST(HalfOdd, Admissibility) {
    EXPECT_FALSE(half_odd_admissible(6, -1));
    EXPECT_FALSE(half_odd_admissible(7, 0));
    EXPECT_FALSE(half_odd_admissible(7, 1));
    EXPECT_TRUE(half_odd_admissible(7, -1));
    EXPECT_TRUE(half_odd_admissible(6, 0));
    EXPECT_EQ(kind_of([] { half_odd_coefficients(3, 6, -1); }), ErrorKind::InadmissiblePair);
}

TEST(HalfOdd, KThreeDisplays) {
    using V = std::vector<Rational>;
    EXPECT_EQ(half_odd_coefficients(3, 1, 1).coefficients, (V{make_rational(2, 35)}));
    EXPECT_EQ(half_odd_coefficients(3, 2, 1).coefficients, (V{make_rational(2, 7)}));
    EXPECT_EQ(half_odd_coefficients(3, 3, 1).coefficients, (V{make_rational(-2, 63), make_rational(-4, 9)}));
    EXPECT_EQ(half_odd_coefficients(3, 5, 1).coefficients, (V{make_rational(-2, 3), make_rational(-8, 3)}));
    // 5 (1 - 3x) / 14 = -(5/7) P_{1,1}
    EXPECT_EQ(gegenbauer(1, 1).coefficients(), (V{make_rational(-1, 2), make_rational(3, 2)}));
    EXPECT_EQ(half_odd_coefficients(3, 6, 1).coefficients, (V{make_rational(-26, 7), 0, make_rational(-5, 7)}));
}

TEST(HalfOdd, Evaluate) {
    EXPECT_EQ(l_half_odd(-7, 3), make_rational(-16, 7));
    EXPECT_EQ(l_half_odd(-19, 3), bern(-19, 3));
    EXPECT_EQ(l_half_odd(-20, 3), bern(-20, 3));
    EXPECT_EQ(l_half_odd(-20, 3, 5), bern(-20, 3));
    EXPECT_EQ(kind_of([] { l_half_odd(-7, 3, 7); }), ErrorKind::InadmissiblePair);
    EXPECT_EQ(kind_of([] { l_half_odd(-7, 3, 5); }), ErrorKind::DeadLevel);
    for (std::int64_t D : {-3, -8, -11, -15, -24, -35, -39, -40, -47, -84}) {
        for (unsigned N : {1u, 2u, 3u, 5u, 6u, 7u}) {
            if (!half_odd_admissible(N, kronecker(D, 2)) || half_odd_factor(D, N) == 0) continue;
            ASSERT_EQ(l_half_odd(D, 5, N), bern(D, 5)) << D << " " << N;
        }
    }
}

TEST(HalfOdd, LengthBounds) {
    for (unsigned k = 3; k <= 19; k += 2) {
        EXPECT_EQ(half_odd_length(k, 1, -1), (k - 1) / 4 + 1);
        EXPECT_EQ(half_odd_length(k, 1, 0), (k - 1) / 3 + 1);
        EXPECT_EQ(half_odd_length(k, 5, 0), k);
        EXPECT_EQ(half_odd_length(k, 7, -1), k);
    }
}

TEST(Cache, RoundTrip) {
    auto dir = fresh_dir("roundtrip");
    CoefficientCache cache(dir);
    auto s = half_even_coefficients(2, 4);
    EXPECT_FALSE(cache.load(CoefficientKind::half_even, 2, 4, 0).has_value());
    cache.store(s);
    auto back = cache.load(CoefficientKind::half_even, 2, 4, 0);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, s);
    EXPECT_EQ(parse_coefficient_set(serialize_coefficient_set(s)), s);
    std::filesystem::remove_all(dir);
}

TEST(Cache, TamperDetected) {
    auto dir = fresh_dir("tamper");
    CoefficientCache cache(dir);
    auto s = half_odd_coefficients(3, 5, 1);
    cache.store(s);
    auto path = cache.path_for(CoefficientKind::half_odd, 3, 5, 1);
    std::stringstream ss;
    ss << std::ifstream(path).rdbuf();
    std::string text = ss.str();
    auto pos = text.find("-2\t3");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 4, "-1\t3");
    std::ofstream(path, std::ios::trunc) << text;
    EXPECT_EQ(kind_of([&] { cache.load(CoefficientKind::half_odd, 3, 5, 1); }), ErrorKind::CacheCorrupt);
    std::filesystem::remove_all(dir);
}

TEST(Cache, RefusesUnderValidated) {
    auto dir = fresh_dir("under");
    CoefficientCache cache(dir);
    auto s = half_even_coefficients(2, 4);
    s.validation_count = 3;
    EXPECT_THROW(cache.store(s), Error);
    std::filesystem::remove_all(dir);
}

TEST(Cache, MissThenHit) {
    auto dir = fresh_dir("store");
    auto& store = CoefficientStore::global();
    store.clear_memory();
    store.set_cache_directory(dir);
    bool hit = true;
    auto a = store.get(CoefficientKind::half_even, 4, 8, 0, &hit);
    EXPECT_FALSE(hit);
    EXPECT_TRUE(std::filesystem::exists(CoefficientCache(dir).path_for(CoefficientKind::half_even, 4, 8, 0)));
    store.clear_memory();
    auto b = store.get(CoefficientKind::half_even, 4, 8, 0, &hit);
    EXPECT_TRUE(hit);
    EXPECT_EQ(a, b);
    store.set_cache_directory(std::nullopt);
    store.clear_memory();
    std::filesystem::remove_all(dir);
}

TEST(WeightOne, Examples) {
    auto r19 = l_weight_one(-19, 1);
    EXPECT_EQ(r19.h, 1u);
    EXPECT_EQ(s_sum(SigmaKind::type1, 0, 19, 1), Rational(6));
    EXPECT_EQ(weight_one_ratio(-19, 1, 1), Rational(6));
    auto r23 = l_weight_one(-23);
    EXPECT_EQ(r23.h, 3u);
    EXPECT_EQ(r23.N, 0u);
    EXPECT_EQ(weight_one_ratio(-7, 1, 1), Rational(0));
    EXPECT_EQ(kind_of([] { l_weight_one(-7, 1); }), ErrorKind::NoUsableRatio);
    auto r7 = l_weight_one(-7);
    EXPECT_EQ(r7.h, 1u);
    EXPECT_NE(r7.N, 1u);
    EXPECT_EQ(l_weight_one(-84).h, 4u);
    EXPECT_EQ(l_weight_one(-20).h, 2u);
}

TEST(WeightOne, TableAgainstClassNumbers) {
    for (std::int64_t D = -7; D >= -3000; --D) {
        if (!is_fundamental_discriminant(D)) continue;
        std::uint64_t h = class_number(D);
        ASSERT_EQ(l_weight_one(D).h, h) << D;
        for (unsigned delta : {1u, 4u}) {
            if (delta == 4 && D % 4 != 0) continue;
            for (unsigned N : {1u, 2u, 3u, 5u, 6u, 7u}) {
                Rational ratio;
                try {
                    ratio = weight_one_ratio(D, N, delta);
                } catch (const Error& e) {
                    continue;
                }
                std::uint64_t m = static_cast<std::uint64_t>(-D) / delta;
                ASSERT_EQ(s_sum(SigmaKind::type1, 0, m, N), ratio * Rational(h)) << D << " N=" << N << " d=" << delta;
            }
        }
    }
}
