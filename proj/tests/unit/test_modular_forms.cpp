#include "lneg/bernoulli.hpp"
#include "lneg/errors.hpp"
#include "lneg/linear_algebra.hpp"
#include "lneg/modular_forms.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lneg;

namespace {

QSeries series(std::vector<long> a) {
    std::vector<Rational> r;
    for (long x : a) r.emplace_back(x);
    return QSeries::from_coefficients(r);
}

// monomials E4^a E6^b of weight w
std::vector<QSeries> level1_monomials(unsigned w, long n) {
    std::vector<QSeries> out;
    for (unsigned a = 0; 4 * a <= w; ++a) {
        unsigned rest = w - 4 * a;
        if (rest % 6) continue;
        out.push_back(eisenstein(4, n).pow(a) * eisenstein(6, n).pow(rest / 6));
    }
    return out;
}

std::vector<QSeries> level2_monomials(unsigned w, long n) {
    QSeries F2 = level_form_eisenstein(LevelForm::F2_level2, n), F4 = level_form_eisenstein(LevelForm::F4_level2, n);
    std::vector<QSeries> out;
    for (unsigned b = 0; 4 * b <= w; ++b) {
        unsigned rest = w - 4 * b;
        if (rest % 2) continue;
        out.push_back(F2.pow(rest / 2) * F4.pow(b));
    }
    return out;
}

}  // namespace

TEST(QSeries, RingOps) {
    QSeries a = series({1, 2, 3, 4, 5}), b = series({2, -1, 0, 7, 1});
    QSeries p = a * b;
    EXPECT_EQ(p.coefficient(0), Rational(2));
    EXPECT_EQ(p.coefficient(1), Rational(3));
    EXPECT_EQ(p.coefficient(4), Rational(2 * 5 - 4 + 0 + 2 * 7 + 1));
    EXPECT_TRUE((a * a.inverse()).agrees_with(QSeries::constant(1, 4)));
    EXPECT_TRUE(a.pow(3).agrees_with(a * a * a));
    QSeries s = QSeries::from_coefficients({1, 4, 6, 8, 1}).sqrt();
    EXPECT_TRUE((s * s).agrees_with(QSeries::from_coefficients({1, 4, 6, 8, 1})));
    EXPECT_THROW(a.coefficient(5), Error);
}

TEST(QSeries, TruncationConsistent) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> d(-9, 9);
    for (int t = 0; t < 20; ++t) {
        std::vector<Rational> a(30), b(30);
        for (auto& x : a) x = d(rng);
        for (auto& x : b) x = d(rng);
        a[0] = 1 + std::abs(d(rng));
        QSeries A = QSeries::from_coefficients(a), B = QSeries::from_coefficients(b);
        QSeries As = A.truncate(15), Bs = B.truncate(15);
        EXPECT_EQ((A * B).truncate(15).to_string(16), (As * Bs).to_string(16));
        EXPECT_EQ(A.inverse().truncate(15).to_string(16), As.inverse().to_string(16));
        EXPECT_EQ(A.pow(4).truncate(15).to_string(16), As.pow(4).to_string(16));
    }
}

TEST(QSeries, NegativeValuation) {
    QSeries delta = eta_product({{1, 24}}, 20);
    QSeries inv = delta.inverse();
    EXPECT_EQ(inv.valuation(), -1);
    EXPECT_EQ(inv.coefficient(-1), Rational(1));
    EXPECT_EQ(inv.coefficient(0), Rational(24));
    EXPECT_TRUE((delta * inv).agrees_with(QSeries::constant(1, 18)));
}

TEST(Eisenstein, Examples) {
    EXPECT_TRUE(eisenstein(0, 5).agrees_with(QSeries::constant(1, 5)));
    EXPECT_TRUE(eisenstein(4, 2).agrees_with(series({1, 240, 2160})));
    EXPECT_TRUE(eisenstein(2, 1).agrees_with(series({1, -24})));
    QSeries n4 = eisenstein_normalized(4, 3);
    EXPECT_EQ(n4.coefficient(0), make_rational(1, 240));
    EXPECT_EQ(n4.coefficient(2), Rational(9));
}

TEST(Eisenstein, DeltaFromE4E6) {
    QSeries e4 = eisenstein(4, 30), e6 = eisenstein(6, 30);
    QSeries d = (e4.pow(3) - e6.pow(2)) * make_rational(1, 1728);
    EXPECT_TRUE(d.agrees_with(eta_product({{1, 24}}, 30)));
}

TEST(Theta, Examples) {
    EXPECT_TRUE(theta(4).agrees_with(series({1, 2, 0, 0, 2})));
    QSeries t = theta(20);
    EXPECT_EQ(t.coefficient(9), Rational(2));
    EXPECT_EQ(t.coefficient(3), Rational(0));
}

TEST(EisensteinChi4, Examples) {
    QSeries e1 = eisenstein_chi4(SigmaKind::type1, 3, 2);
    Rational c = l_via_bernoulli(DirichletCharacter::from_discriminant(-4), 3).to_rational() / 2;
    EXPECT_EQ(e1.coefficient(0), c);
    EXPECT_EQ(c, make_rational(-1, 4));
    EXPECT_EQ(e1.coefficient(1), Rational(1));
    EXPECT_TRUE(eisenstein_chi4(SigmaKind::type2, 3, 2).agrees_with(series({0, 1, 4})));
    EXPECT_EQ(eisenstein_chi4(SigmaKind::type2, 5, 0).coefficient(0), Rational(0));
}

TEST(LevelForms, Examples) {
    QSeries f2 = level_form_eisenstein(LevelForm::F2_level4, 4);
    EXPECT_EQ(f2.coefficient(0), Rational(0));
    EXPECT_EQ(f2.coefficient(1), Rational(1));
    EXPECT_EQ(f2.coefficient(2), Rational(0));
    EXPECT_EQ(f2.coefficient(3), Rational(4));
    QSeries d4 = level_form_eisenstein(LevelForm::Delta4_level4, 4);
    EXPECT_EQ(d4.coefficient(0), Rational(0));
    EXPECT_EQ(d4.coefficient(1), Rational(1));
    EXPECT_EQ(level_form_eisenstein(LevelForm::Delta4_level2, 4).coefficient(1), Rational(1));
}

TEST(LevelForms, EtaQuotientsAgree) {
    for (auto f : all_level_forms()) {
        QSeries a = level_form_eisenstein(f, 500), b = level_form_eta(f, 500);
        ASSERT_EQ(a.n_max(), 500);
        ASSERT_TRUE(a.agrees_with(b)) << level_form_name(f);
    }
}

TEST(Operators, Examples) {
    EXPECT_TRUE(v_operator(series({1, 1}), 4).agrees_with(series({1, 0, 0, 0, 1})));
    EXPECT_TRUE(derivative_D(series({1, 0, 3})).agrees_with(series({0, 0, 6})));
    EXPECT_TRUE(derivative_D(QSeries::constant(7, 5)).agrees_with(QSeries::constant(0, 5)));
}

TEST(Gegenbauer, Examples) {
    EXPECT_EQ(gegenbauer(0, 6), WeightPolynomial({Rational(1)}));
    WeightPolynomial p = gegenbauer(1, 4);
    EXPECT_EQ(p.coefficients()[0], make_rational(-1, 2));
    EXPECT_EQ(p.coefficients()[1], make_rational(9, 2));
    for (unsigned n = 0; n <= 5; ++n)
        for (unsigned r = 2; r <= 12; ++r) EXPECT_EQ(gegenbauer(n, r).degree(), n);
}

TEST(Gegenbauer, DirectBinomialSum) {
    for (unsigned n = 0; n <= 6; ++n) {
        for (unsigned r = 2; r <= 12; ++r) {
            std::vector<Rational> c(n + 1);
            for (unsigned l = 0; l <= n; ++l) {
                Rational t = binomial(Rational(n) - make_rational(1, 2), l) *
                             binomial(Rational(2 * n + r - l) - make_rational(3, 2), n - l);
                c[n - l] += (l % 2 ? -t : t);
            }
            EXPECT_EQ(gegenbauer(n, r).coefficients(), c) << n << " " << r;
        }
    }
}

TEST(Brackets, Examples) {
    QSeries b = bracket_theta(0, 2, 4, 10);
    EXPECT_EQ(b.coefficient(5), Rational(2));
    QSeries b1 = bracket_theta(2, 6, 4, 40);
    for (long m = 1; m <= 40; ++m)
        if (m % 4 == 2 || m % 4 == 3) EXPECT_EQ(b1.coefficient(m), Rational(0)) << m;
}

TEST(Brackets, MatchGenericRankinCohen) {
    const long n = 50;
    QSeries th = theta(n);
    for (unsigned r = 2; r <= 20; r += 2) {
        QSeries g = v_operator(eisenstein_normalized(r, n), 4);
        QSeries g0 = g - QSeries::constant(g.coefficient(0), n);
        for (unsigned j = 1; j <= 4; ++j) {
            QSeries rc = rankin_cohen(th, make_rational(1, 2), g0, Rational(r), j);
            QSeries br = bracket_theta(j, r, 4, n);
            Rational sign = (j % 2) ? Rational(-1) : Rational(1);
            ASSERT_TRUE((rc * sign).agrees_with(br)) << r << " " << j;
        }
    }
}

TEST(RankinCohen, Basics) {
    QSeries f = eisenstein(4, 20), g = eisenstein(6, 20);
    EXPECT_TRUE(rankin_cohen(f, 4, g, 6, 0).agrees_with(f * g));
    EXPECT_TRUE(rankin_cohen(f, 4, f, 4, 1).agrees_with(QSeries::constant(0, 20)));
    EXPECT_TRUE(rankin_cohen(f, 4, g, 6, 1).agrees_with(rankin_cohen(g, 6, f, 4, 1) * Rational(-1)));
    // weight 12 cusp form
    EXPECT_TRUE(rankin_cohen(f, 4, g, 6, 1).agrees_with(eta_product({{1, 24}}, 20) * Rational(-3456)));
}

TEST(Kohnen, WeightFiveHalves) {
    QSeries h = kohnen_basis(2, 20)[0];
    // theta E2[4] - 6 D theta at q^5: -24 S_1(5, 4)
    EXPECT_EQ(h.coefficient(5), Rational(-48));
}

TEST(Kohnen, PlusSpaceMembership) {
    for (unsigned k = 2; k <= 24; k += 2) {
        auto basis = kohnen_basis(k, 200);
        EXPECT_EQ(basis.size(), kohnen_plus_dimension(k)) << k;
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (long n = 0; n <= 200; ++n)
                if (n % 4 == 2 || n % 4 == 3) ASSERT_EQ(basis[j].coefficient(n), Rational(0)) << k << " " << j << " " << n;
    }
}

TEST(Kohnen, RankMatchesDimension) {
    for (unsigned k = 2; k <= 24; k += 2) {
        auto basis = kohnen_basis(k, 200);
        std::vector<std::vector<Rational>> A;
        for (long n = 0; n <= 200; ++n) {
            if (n % 4 > 1) continue;
            std::vector<Rational> row;
            for (const auto& b : basis) row.push_back(b.coefficient(n));
            A.push_back(row);
        }
        EXPECT_EQ(rational_rank(A), kohnen_plus_dimension(k)) << k;
    }
}

TEST(Dimensions, Formulas) {
    EXPECT_EQ(dim_modular_forms(12, 1), 2u);
    EXPECT_EQ(dim_modular_forms(2, 1), 0u);
    EXPECT_EQ(dim_modular_forms(14, 1), 1u);
    EXPECT_EQ(dim_modular_forms(8, 2), 3u);
    EXPECT_EQ(dim_modular_forms(2, 4), 2u);
    EXPECT_EQ(kohnen_plus_dimension(2), 1u);
    EXPECT_EQ(kohnen_plus_dimension(6), 2u);
    EXPECT_EQ(kohnen_plus_dimension(7), 1u);
    for (unsigned w = 4; w <= 40; w += 2) {
        EXPECT_EQ(level1_monomials(w, 10).size(), dim_modular_forms(w, 1)) << w;
        EXPECT_EQ(level2_monomials(w, 10).size(), dim_modular_forms(w, 2)) << w;
    }
}

TEST(Siegel, Examples) {
    auto s4 = siegel_coefficients(4, 1);
    EXPECT_EQ(s4.r, 1u);
    EXPECT_EQ(s4.at(-1), Rational(1));
    EXPECT_EQ(s4.at(0), Rational(-240));
    auto s6 = siegel_coefficients(6, 2);
    EXPECT_EQ(s6.r, 2u);
    EXPECT_EQ(s6.at(-static_cast<long>(s6.r)), Rational(1));
    auto s12 = siegel_coefficients(12, 1);
    EXPECT_EQ(s12.r, 2u);
    EXPECT_EQ(siegel_pairing(s12, eisenstein(12, 10)), Rational(0));
    EXPECT_EQ(siegel_pairing(s12, eta_product({{1, 24}}, 10)), Rational(0));
}

TEST(Siegel, ConstantTermNonzero) {
    for (unsigned w = 4; w <= 60; w += 2) {
        EXPECT_NE(siegel_coefficients(w, 1).at(0), Rational(0)) << w;
        EXPECT_NE(siegel_coefficients(w, 2).at(0), Rational(0)) << w;
    }
}

TEST(Siegel, RelationOnMonomials) {
    for (unsigned w = 4; w <= 40; w += 2) {
        auto s1 = siegel_coefficients(w, 1);
        for (const auto& f : level1_monomials(w, 20)) ASSERT_EQ(siegel_pairing(s1, f), Rational(0)) << w;
        auto s2 = siegel_coefficients(w, 2);
        for (const auto& f : level2_monomials(w, 20)) ASSERT_EQ(siegel_pairing(s2, f), Rational(0)) << w;
    }
}

TEST(Siegel, DeltaTimesEisenstein) {
    QSeries delta = eta_product({{1, 24}}, 20);
    for (unsigned k = 16; k <= 40; k += 2)
        ASSERT_EQ(siegel_pairing(siegel_coefficients(k, 1), delta * eisenstein(k - 12, 20)), Rational(0)) << k;
}

TEST(SolveInBasis, Cases) {
    std::vector<QSeries> basis = {eisenstein(4, 10).pow(3), eta_product({{1, 24}}, 10)};
    auto x = solve_in_basis(basis[0], basis, {0, 1, 2, 3});
    EXPECT_EQ(x, (std::vector<Rational>{1, 0}));
    QSeries target = eisenstein(12, 10);
    auto c = solve_in_basis(target, basis, {0, 1});
    QSeries back = basis[0] * c[0] + basis[1] * c[1];
    EXPECT_TRUE(back.agrees_with(target));
    std::vector<Rational> t(11);
    for (long n = 0; n <= 10; ++n) t[n] = target.coefficient(n);
    t[7] += 1;
    try {
        solve_in_basis(QSeries::from_coefficients(t), basis, {0, 1, 2, 3, 4, 5, 6, 7});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Inconsistent);
    }
    try {
        solve_in_basis(basis[0], {basis[0], basis[0] * Rational(2)}, {0, 1, 2});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::RankDeficient);
    }
}
