#pragma once

#include "lneg/bigfloat.hpp"
#include "lneg/cyclotomic.hpp"
#include "lneg/exact_arith.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lneg {

enum class Parity { even, odd };

// one prime-power factor q = p^e of the modulus; on (Z/q)^* the character sends
// gens[i] to zeta_{orders[i]}^{exps[i]}
struct CharacterComponent {
    std::uint64_t p = 0;
    unsigned e = 0;
    std::uint64_t q = 0;
    std::vector<std::uint64_t> gens;
    std::vector<std::uint64_t> orders;
    std::vector<std::uint64_t> exps;
};

class DirichletCharacter {
public:
    static DirichletCharacter trivial(std::uint64_t modulus = 1);
    static DirichletCharacter from_discriminant(std::int64_t D);
    static DirichletCharacter from_discriminant(const Integer& D);
    // gens may be empty for canonical generators (least primitive root; -1 and 5 at 2^e)
    static DirichletCharacter from_components(std::uint64_t modulus, const std::vector<std::uint64_t>& gens,
                                              const std::vector<std::uint64_t>& exps);

    std::uint64_t modulus() const { return F_; }
    std::uint64_t conductor() const { return conductor_; }
    bool is_primitive() const { return conductor_ == F_; }
    unsigned order() const { return u_; }
    Parity parity() const { return parity_; }
    bool is_even() const { return parity_ == Parity::even; }
    bool is_real() const { return u_ <= 2; }
    bool is_trivial() const { return u_ == 1; }
    std::optional<std::int64_t> quadratic_discriminant() const { return disc_; }
    const std::vector<CharacterComponent>& components() const { return comps_; }

    // chi(n) = zeta_u^t; nullopt when gcd(n, F) > 1
    std::optional<unsigned> exponent_at(std::uint64_t n) const;
    std::optional<unsigned> exponent_at_signed(std::int64_t n) const;
    Cyclotomic evaluate(const Integer& n) const;
    Cyclotomic evaluate(std::int64_t n) const;
    // u <= 2 only
    int evaluate_real(std::int64_t n) const;
    int evaluate_real(const Integer& n) const;

    DirichletCharacter power(std::int64_t j) const;
    DirichletCharacter conj() const { return power(-1); }
    DirichletCharacter primitive() const;
    DirichletCharacter induce(std::uint64_t modulus) const;

    // canonical spec string, parseable by parse_character
    std::string spec() const;
    bool operator==(const DirichletCharacter& o) const;

private:
    DirichletCharacter() = default;
    void finish();
    unsigned component_exponent(std::size_t i, std::uint64_t r) const;

    std::uint64_t F_ = 1;
    std::uint64_t conductor_ = 1;
    unsigned u_ = 1;
    Parity parity_ = Parity::even;
    std::optional<std::int64_t> disc_;
    std::vector<CharacterComponent> comps_;
    struct LogData;
    std::vector<std::shared_ptr<const LogData>> logs_;
    std::vector<std::uint64_t> weight_;  // exps * u / orders per generator, flattened
};

// "D:<int>" or "m:<F>:g:<g1,...>:e:<e1,...>"
DirichletCharacter parse_character(std::string_view spec);

std::pair<std::uint64_t, DirichletCharacter> conductor_and_primitive(const DirichletCharacter& chi);
// prod over p | F, p not dividing f of (1 - chi_f(p) p^{k-1})
Cyclotomic induced_correction(const DirichletCharacter& chi_f, std::uint64_t F, unsigned k);
BigComplex gauss_sum(const DirichletCharacter& chi, mpfr_prec_t prec);
// every character mod F (canonical generators)
std::vector<DirichletCharacter> all_characters(std::uint64_t F);
std::vector<DirichletCharacter> primitive_characters(std::uint64_t F);

}  // namespace lneg
