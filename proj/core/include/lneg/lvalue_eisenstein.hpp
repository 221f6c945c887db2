#pragma once

#include "lneg/characters.hpp"
#include "lneg/cyclotomic.hpp"
#include "lneg/exact_arith.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace lneg {

enum class CoefficientKind { siegel_even, siegel_odd_level2, half_even, half_odd };
const char* coefficient_kind_name(CoefficientKind kind);
CoefficientKind parse_coefficient_kind(const std::string& name);

struct CoefficientSet {
    CoefficientKind kind = CoefficientKind::half_even;
    unsigned k = 0;
    unsigned N = 0;
    int e = 0;  // half_odd only
    std::vector<Rational> coefficients;
    unsigned validation_count = 0;
    bool operator==(const CoefficientSet& o) const {
        return kind == o.kind && k == o.k && N == o.N && e == o.e && coefficients == o.coefficients &&
               validation_count == o.validation_count;
    }
};

// a_{k,psi,N}(n) of the Hecke-Eisenstein restriction; psi real primitive
Cyclotomic hecke_fourier_coefficient(unsigned k, const DirichletCharacter& psi, std::uint64_t N, std::int64_t D,
                                     std::uint64_t n);
// D > 1 fundamental, k even
Rational l_hecke_even(std::int64_t D, unsigned k);
// D < -4 fundamental, k odd >= 3
Rational l_hecke_odd(std::int64_t D, unsigned k);

// L(chi_D, 1-k) from Bernoulli, or the functional equation once k|D| > 10^5
Rational reference_l_value(std::int64_t D, unsigned k);

// even case
unsigned half_even_m(unsigned N);
unsigned half_even_length(unsigned k, unsigned N);
// 1 + (D / (N/4)); 0 also when N = 16 and D != 1 mod 8
int half_even_factor(std::int64_t D, unsigned N);
unsigned select_level_even(std::int64_t D);
// S_{k-2j-1}(D, N, P_{j,k-2j}) for j < len, one sweep
std::vector<Rational> half_even_row(std::int64_t D, unsigned k, unsigned N, unsigned len, unsigned threads = 1);

// odd case
bool half_odd_admissible(unsigned N, int e);
// number of unknowns j = 0..m(k,N,e)
unsigned half_odd_length(unsigned k, unsigned N, int e);
// 1 + (|D| / N_2)
int half_odd_factor(std::int64_t D, unsigned N);
unsigned select_level_odd(std::int64_t D);
std::vector<Rational> half_odd_row(std::int64_t D, unsigned k, unsigned N, unsigned len, unsigned threads = 1);

struct SolveOptions {
    unsigned extra_rows = 5;
    unsigned validation = 10;
    unsigned threads = 1;
};

CoefficientSet half_even_coefficients(unsigned k, unsigned N, const SolveOptions& opt = {});
CoefficientSet half_odd_coefficients(unsigned k, unsigned N, int e, const SolveOptions& opt = {});

// checks the identity at the given discriminants; returns those where it fails
std::vector<std::int64_t> validate_coefficients(const CoefficientSet& set, const std::vector<std::int64_t>& Ds);
// fundamental discriminants admissible for set's row type, in increasing |D|, skipping the first `skip`
std::vector<std::int64_t> admissible_discriminants(CoefficientKind kind, unsigned N, int e, std::size_t skip,
                                                   std::size_t count);

// TSV records plus a trailing sha256 line; one file per set
class CoefficientCache {
public:
    explicit CoefficientCache(std::filesystem::path dir);
    const std::filesystem::path& directory() const { return dir_; }
    std::filesystem::path path_for(CoefficientKind kind, unsigned k, unsigned N, int e) const;
    std::optional<CoefficientSet> load(CoefficientKind kind, unsigned k, unsigned N, int e) const;
    void store(const CoefficientSet& set) const;

private:
    std::filesystem::path dir_;
};

std::string serialize_coefficient_set(const CoefficientSet& set);
CoefficientSet parse_coefficient_set(const std::string& text);

// memo in front of an optional on-disk cache
class CoefficientStore {
public:
    static CoefficientStore& global();
    void set_cache_directory(std::optional<std::filesystem::path> dir);
    void set_solve_options(const SolveOptions& opt);
    // hit is set when no solve was needed
    CoefficientSet get(CoefficientKind kind, unsigned k, unsigned N, int e = 0, bool* hit = nullptr);
    void clear_memory();

private:
    std::mutex mu_;
    std::optional<CoefficientCache> cache_;
    SolveOptions opt_;
    std::map<std::tuple<int, unsigned, unsigned, int>, std::shared_ptr<CoefficientSet>> memo_;
    std::map<std::tuple<int, unsigned, unsigned, int>, std::shared_ptr<std::mutex>> inflight_;
};

struct EvalOptions {
    // larger levels only pay off past this |D|
    double level_threshold = 1e8;
    unsigned threads = 1;
};

Rational l_half_even(std::int64_t D, unsigned k, std::optional<unsigned> N = std::nullopt,
                     const EvalOptions& opt = {});
Rational l_half_odd(std::int64_t D, unsigned k, std::optional<unsigned> N = std::nullopt,
                    const EvalOptions& opt = {});
Rational evaluate_half_even(const CoefficientSet& set, std::int64_t D, unsigned threads = 1);
Rational evaluate_half_odd(const CoefficientSet& set, std::int64_t D, unsigned threads = 1);

// S_0^{(1)}(|D|/delta, N) / h(D), table values; delta = 4 needs 4 | D
Rational weight_one_ratio(std::int64_t D, unsigned N, unsigned delta);
struct WeightOneResult {
    std::uint64_t h = 0;
    unsigned N = 0;       // 0 when the table had no usable row
    unsigned delta = 1;
};
// D < -4 fundamental; with N given, NoUsableRatio when its ratio vanishes
WeightOneResult l_weight_one(std::int64_t D, std::optional<unsigned> N = std::nullopt);
// c^1_{0,N,e} as listed for k = 1
Rational weight_one_coefficient(unsigned N, int e, unsigned delta);

}  // namespace lneg
