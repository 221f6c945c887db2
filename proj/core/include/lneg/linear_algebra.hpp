#pragma once

#include "lneg/exact_arith.hpp"

#include <cstddef>
#include <vector>

namespace lneg {

struct LinearSolution {
    std::vector<Rational> x;
    std::vector<std::size_t> pivots;  // pivot columns in order
    std::size_t rank = 0;
};

// exact A x = b; columns without a pivot get x = 0. Throws Inconsistent when b is not in
// the column span, RankDeficient when full_rank is requested and not met.
LinearSolution solve_rational(std::vector<std::vector<Rational>> A, std::vector<Rational> b, bool full_rank);

std::size_t rational_rank(std::vector<std::vector<Rational>> A);

}  // namespace lneg
