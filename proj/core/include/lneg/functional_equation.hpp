#pragma once

#include "lneg/bigfloat.hpp"
#include "lneg/characters.hpp"
#include "lneg/cyclotomic.hpp"

#include <cstdint>
#include <string>

namespace lneg {

struct PrecisionPlan {
    double B = 0;           // target relative accuracy e^{-B}
    mpfr_prec_t bits = 64;  // ceil(B / log 2) + 64
    std::uint64_t prime_limit = 1;
};

// D(chi, k) with D * L(chi, 1-k) integral
Cyclotomic denominator_bound(const DirichletCharacter& chi, unsigned k);

// extra_nats is added on top of the +10 margin
PrecisionPlan precision_target(const DirichletCharacter& chi, unsigned k, double extra_nats = 0);
PrecisionPlan plan_from_B(double B, unsigned k);

// L(chibar, k) from the Euler product over p <= plan.prime_limit
BigComplex euler_product(const DirichletCharacter& chibar, unsigned k, const PrecisionPlan& plan);
// L(chi, k) from the Dirichlet series with an Euler-Maclaurin tail, accurate to 2^-bits
BigComplex dirichlet_series(const DirichletCharacter& chi, unsigned k, mpfr_prec_t bits);

enum class LSeriesEvaluator { automatic, euler_product, dirichlet_series };

struct FEOptions {
    double extra_nats = 4;
    unsigned slack = 16;
    LSeriesEvaluator evaluator = LSeriesEvaluator::automatic;
};

struct FEReport {
    PrecisionPlan plan;
    std::string evaluator;
    double residual_log2 = 0;  // worst distance to the nearest integer before rounding
    unsigned attempts = 0;
};

// complex value of L(chi, 1-k) at working precision bits
BigComplex l_numeric_functional_equation(const DirichletCharacter& chi, unsigned k, const PrecisionPlan& plan,
                                         LSeriesEvaluator ev, std::string* used = nullptr);

Cyclotomic l_via_functional_equation(const DirichletCharacter& chi, unsigned k, const FEOptions& opt = {},
                                     FEReport* report = nullptr);

}  // namespace lneg
