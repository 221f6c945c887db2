#pragma once

#include "lneg/characters.hpp"
#include "lneg/cyclotomic.hpp"

#include <map>
#include <string_view>
#include <vector>

namespace lneg {

enum class BernoulliVariant { direct1, direct2, direct3, recursion_S, recursion_half, recursion_lucas };
const char* bernoulli_variant_name(BernoulliVariant v);
BernoulliVariant parse_bernoulli_variant(std::string_view name);

// power sums over residues for one primitive character, grown on demand
class ChiBernoulliContext {
public:
    explicit ChiBernoulliContext(DirichletCharacter chi);

    const DirichletCharacter& character() const { return chi_; }
    // sum_{0 <= r < F} chi(r) r^n
    const Cyclotomic& S(unsigned n);
    // sum_{1 <= r < F/2} chi(r) r^n
    const Cyclotomic& Q(unsigned n);
    // sum_{0 <= r < limit} chi(r) r^n, uncached
    Cyclotomic power_sum(std::uint64_t limit, unsigned n) const;

    Cyclotomic bernoulli(unsigned k, BernoulliVariant v);

private:
    void grow(unsigned n);
    Cyclotomic from_buckets(const std::vector<Integer>& acc) const;
    Cyclotomic rec_S(unsigned k);
    Cyclotomic rec_half(unsigned k);
    Cyclotomic rec_lucas(unsigned k);

    DirichletCharacter chi_;
    std::uint64_t F_;
    unsigned u_;
    std::vector<unsigned> texp_;  // exponent of chi(r) for 1 <= r < F, u_ when chi(r) = 0
    std::vector<Integer> pw_;     // r^n at the current n
    unsigned next_n_ = 0;
    std::vector<Cyclotomic> S_, Q_;
    std::map<unsigned, Cyclotomic> memo_S_, memo_half_, memo_lucas_;
};

// B_k(chi) for primitive chi; 0 on parity mismatch when k >= 2
Cyclotomic chi_bernoulli(const DirichletCharacter& chi, unsigned k,
                         BernoulliVariant v = BernoulliVariant::recursion_half);

// B_0(chi) .. B_kmax(chi) by exact division of the generating function
std::vector<Cyclotomic> chi_bernoulli_series(const DirichletCharacter& chi, unsigned kmax);

// L(chi, 1-k); non-primitive chi goes through its primitive character and the Euler correction
Cyclotomic l_via_bernoulli(const DirichletCharacter& chi, unsigned k,
                           BernoulliVariant v = BernoulliVariant::recursion_half);

}  // namespace lneg
