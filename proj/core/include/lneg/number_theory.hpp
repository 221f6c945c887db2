#pragma once

#include "lneg/exact_arith.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace lneg {

struct PrimePower {
    Integer prime;
    unsigned exponent;
    bool operator==(const PrimePower& o) const { return prime == o.prime && exponent == o.exponent; }
};
using Factorization = std::vector<PrimePower>;

struct SmallPrimePower {
    std::uint64_t prime;
    unsigned exponent;
};

bool is_prime_u64(std::uint64_t n);
bool is_prime(const Integer& n);
Factorization factorize(const Integer& m);
// at most 15 distinct primes divide a 64-bit integer
std::size_t factorize_u64(std::uint64_t m, SmallPrimePower* out);
std::vector<SmallPrimePower> factorize_u64(std::uint64_t m);

int kronecker(const Integer& D, const Integer& n);
int kronecker(std::int64_t D, std::int64_t n);
bool is_fundamental_discriminant(const Integer& D);
bool is_fundamental_discriminant(std::int64_t D);
bool is_squarefree_u64(std::uint64_t n);

enum class SigmaKind { plain, type1, type2 };
const char* sigma_kind_name(SigmaKind kind);

// sum_{d|m} d^k, or the chi_{-4} twists chi(d) d^k (type1), chi(m/d) d^k (type2); 0 unless m >= 1
Integer divisor_sum(SigmaKind kind, unsigned k, const Integer& m);
Rational divisor_sum_twisted(SigmaKind kind, unsigned k, const Integer& m);
// psi real-valued, psi(d) in {-1,0,1}
Integer divisor_sum_psi(const std::function<int(const Integer&)>& psi, unsigned k, const Integer& m);
Integer divisor_sum_from(SigmaKind kind, unsigned k, const SmallPrimePower* f, std::size_t nf);

class WeightPolynomial {
public:
    WeightPolynomial() : coeffs_{Rational(1)} {}
    explicit WeightPolynomial(std::vector<Rational> ascending);
    std::size_t degree() const { return coeffs_.size() - 1; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational evaluate(const Rational& x) const;
    bool operator==(const WeightPolynomial& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<Rational> coeffs_;
};

struct SumChannel {
    SigmaKind kind = SigmaKind::plain;
    unsigned k = 0;
    const WeightPolynomial* weight = nullptr;  // absent: unweighted
};

// sum over s in Z with (m - s^2)/N a positive integer of m^n P(s^2/m) sigma_k((m-s^2)/N)
Rational s_sum(SigmaKind kind, unsigned k, std::uint64_t m, std::uint64_t N, const WeightPolynomial* P = nullptr);
// all channels share one pass over s and one factorization per argument
std::vector<Rational> s_sum_multi(std::uint64_t m, std::uint64_t N, std::span<const SumChannel> channels,
                                  unsigned threads = 1);

// residues s mod N with s^2 = m mod N
std::vector<std::uint64_t> square_roots_mod(std::uint64_t m, std::uint64_t N);

// cached table holding at least every prime <= limit; grown on demand
std::shared_ptr<const std::vector<std::uint32_t>> prime_table(std::uint32_t limit);
// ascending; uses the table below its cap and a segmented sieve above it
void for_each_prime(std::uint64_t limit, const std::function<void(std::uint64_t)>& f);

// h(D) for D < 0 by counting reduced primitive forms
std::uint64_t class_number(std::int64_t D);

}  // namespace lneg
