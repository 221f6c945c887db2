#include "lneg/linear_algebra.hpp"

#include "lneg/errors.hpp"

namespace lneg {

namespace {

// reduced row echelon form in place, pivots chosen greedily left to right
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& A, std::size_t cols) {
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < A.size(); ++c) {
        std::size_t p = row;
        while (p < A.size() && A[p][c] == 0) ++p;
        if (p == A.size()) continue;
        std::swap(A[p], A[row]);
        Rational inv = 1 / A[row][c];
        for (auto& v : A[row]) v *= inv;
        for (std::size_t r = 0; r < A.size(); ++r) {
            if (r == row || A[r][c] == 0) continue;
            Rational f = A[r][c];
            for (std::size_t j = c; j < A[r].size(); ++j)
                if (A[row][j] != 0) A[r][j] -= f * A[row][j];
        }
        piv.push_back(c);
        ++row;
    }
    return piv;
}

}  // namespace

LinearSolution solve_rational(std::vector<std::vector<Rational>> A, std::vector<Rational> b, bool full_rank) {
    if (A.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "solve_rational: row count mismatch");
    std::size_t n = A.empty() ? 0 : A[0].size();
    for (std::size_t r = 0; r < A.size(); ++r) {
        if (A[r].size() != n) throw Error(ErrorKind::InvalidArgument, "solve_rational: ragged matrix");
        A[r].push_back(b[r]);
    }
    LinearSolution sol;
    sol.pivots = rref(A, n);
    sol.rank = sol.pivots.size();
    for (std::size_t r = sol.rank; r < A.size(); ++r)
        if (A[r][n] != 0) throw Error(ErrorKind::Inconsistent, "right-hand side outside the column span");
    if (full_rank && sol.rank < n)
        throw Error(ErrorKind::RankDeficient,
                    "rank " + std::to_string(sol.rank) + " for " + std::to_string(n) + " unknowns");
    sol.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < sol.rank; ++i) sol.x[sol.pivots[i]] = A[i][n];
    return sol;
}

std::size_t rational_rank(std::vector<std::vector<Rational>> A) {
    if (A.empty()) return 0;
    return rref(A, A[0].size()).size();
}

}  // namespace lneg
