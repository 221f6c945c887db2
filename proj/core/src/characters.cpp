#include "lneg/characters.hpp"

#include "lneg/errors.hpp"
#include "lneg/number_theory.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

namespace lneg {

namespace {

using u64 = std::uint64_t;
constexpr u64 kTableLimit = 1u << 22;
constexpr std::uint32_t kNoLog = 0xffffffffu;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 ipow_u64(u64 p, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) r *= p;
    return r;
}

bool has_order(u64 g, u64 n, u64 q) {
    if (powmod(g, n, q) != 1) return false;
    for (const auto& f : factorize_u64(n))
        if (powmod(g, n / f.prime, q) == 1) return false;
    return true;
}

u64 primitive_root(u64 p, unsigned e) {
    if (p == 2) return e <= 2 ? 3 : 0;
    u64 g = 2;
    while (!has_order(g, p - 1, p)) ++g;
    if (e >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
    return g;
}

u64 mod_signed(std::int64_t n, u64 F) {
    __int128 r = static_cast<__int128>(n) % static_cast<__int128>(F);
    if (r < 0) r += F;
    return static_cast<u64>(r);
}

// discrete log of x in the cyclic group <g> of order n mod q
struct Bsgs {
    u64 g = 1, n = 1, q = 1, m = 1, giant = 1;
    std::unordered_map<u64, u64> baby;
    void init(u64 g_, u64 n_, u64 q_) {
        g = g_;
        n = n_;
        q = q_;
        m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(n)))) + 1;
        u64 cur = 1;
        baby.reserve(m * 2);
        for (u64 j = 0; j < m; ++j) {
            baby.emplace(cur, j);
            cur = mulmod(cur, g, q);
        }
        // g^{-m} = g^{n - m mod n}
        giant = powmod(g, (n - (m % n)) % n, q);
    }
    u64 log(u64 x) const {
        u64 cur = x % q;
        for (u64 i = 0; i <= m; ++i) {
            auto it = baby.find(cur);
            if (it != baby.end()) return (i * m + it->second) % n;
            cur = mulmod(cur, giant, q);
        }
        throw Error(ErrorKind::InvalidArgument, "discrete log failed");
    }
};

}  // namespace

struct DirichletCharacter::LogData {
    // either a full table of exponent contributions mod u, or BSGS data
    std::vector<std::uint32_t> table;
    Bsgs bsgs;
    bool two_part = false;
    u64 ga = 0;  // order-2 generator at 2^e, e >= 3
};

DirichletCharacter DirichletCharacter::trivial(u64 modulus) {
    return from_components(modulus, {}, std::vector<u64>());
}

DirichletCharacter DirichletCharacter::from_discriminant(std::int64_t D) {
    if (!is_fundamental_discriminant(D))
        throw Error(ErrorKind::NotFundamental, std::to_string(D) + " is not a fundamental discriminant");
    DirichletCharacter c;
    c.F_ = D < 0 ? static_cast<u64>(-D) : static_cast<u64>(D);
    c.conductor_ = c.F_;
    c.u_ = (D == 1) ? 1 : 2;
    c.parity_ = D > 0 ? Parity::even : Parity::odd;
    c.disc_ = D;
    // component data: exponents read off the Kronecker values at CRT-lifted generators
    for (const auto& f : factorize_u64(c.F_)) {
        CharacterComponent comp;
        comp.p = f.prime;
        comp.e = f.exponent;
        comp.q = ipow_u64(f.prime, f.exponent);
        u64 rest = c.F_ / comp.q;
        auto lift = [&](u64 g) -> std::int64_t {
            // x = g mod q, x = 1 mod rest
            if (rest == 1) return static_cast<std::int64_t>(g);
            for (u64 x = g;; x += comp.q)
                if (x % rest == 1) return static_cast<std::int64_t>(x);
        };
        if (comp.p == 2) {
            if (comp.e == 2) {
                comp.gens = {3};
                comp.orders = {2};
            } else {
                comp.gens = {comp.q - 1, 5};
                comp.orders = {2, comp.q / 4};
            }
        } else {
            comp.gens = {primitive_root(comp.p, comp.e)};
            comp.orders = {comp.q / comp.p * (comp.p - 1)};
        }
        for (std::size_t i = 0; i < comp.gens.size(); ++i) {
            int v = kronecker(D, lift(comp.gens[i]));
            comp.exps.push_back(v == 1 ? 0 : comp.orders[i] / 2);
        }
        c.comps_.push_back(comp);
    }
    return c;
}

DirichletCharacter DirichletCharacter::from_discriminant(const Integer& D) {
    if (!fits_i64(D)) throw Error(ErrorKind::InvalidArgument, "discriminant beyond 63 bits");
    return from_discriminant(to_i64(D));
}

DirichletCharacter DirichletCharacter::from_components(u64 modulus, const std::vector<u64>& gens,
                                                       const std::vector<u64>& exps) {
    if (modulus == 0) throw Error(ErrorKind::InvalidArgument, "modulus 0");
    DirichletCharacter c;
    c.F_ = modulus;
    std::size_t gi = 0, ei = 0;
    bool canonical = gens.empty();
    for (const auto& f : factorize_u64(modulus)) {
        CharacterComponent comp;
        comp.p = f.prime;
        comp.e = f.exponent;
        comp.q = ipow_u64(f.prime, f.exponent);
        if (comp.q == 2) continue;
        std::size_t ngen = (comp.p == 2 && comp.e >= 3) ? 2 : 1;
        for (std::size_t i = 0; i < ngen; ++i) {
            u64 g;
            if (canonical) {
                if (comp.p == 2) g = (comp.e == 2) ? 3 : (i == 0 ? comp.q - 1 : 5);
                else g = primitive_root(comp.p, comp.e);
            } else {
                if (gi >= gens.size()) throw Error(ErrorKind::InvalidArgument, "too few generators for modulus");
                g = gens[gi++] % comp.q;
            }
            u64 ord;
            if (comp.p == 2) ord = (comp.e == 2 || i == 0) ? 2 : comp.q / 4;
            else ord = comp.q / comp.p * (comp.p - 1);
            // validate the supplied generator
            bool ok;
            if (comp.p == 2) {
                if (i == 0) ok = (g % 4 == 3) && mulmod(g, g, comp.q) == 1;
                else ok = (g % 8 == 5);
            } else {
                ok = std::gcd(g, comp.q) == 1 && has_order(g, ord, comp.q);
            }
            if (!ok)
                throw Error(ErrorKind::InvalidArgument,
                            "generator " + std::to_string(g) + " does not generate its component mod " + std::to_string(comp.q));
            u64 a = 0;
            if (ei < exps.size()) a = exps[ei] % ord;
            else if (!exps.empty()) throw Error(ErrorKind::InvalidArgument, "too few exponents");
            ++ei;
            comp.gens.push_back(g);
            comp.orders.push_back(ord);
            comp.exps.push_back(a);
        }
        c.comps_.push_back(comp);
    }
    if (!canonical && gi != gens.size()) throw Error(ErrorKind::InvalidArgument, "too many generators for modulus");
    if (!exps.empty() && ei != exps.size()) throw Error(ErrorKind::InvalidArgument, "too many exponents");
    c.finish();
    return c;
}

void DirichletCharacter::finish() {
    u64 u = 1;
    for (const auto& comp : comps_)
        for (std::size_t i = 0; i < comp.gens.size(); ++i) {
            u64 o = comp.orders[i] / std::gcd(comp.exps[i], comp.orders[i]);
            u = std::lcm(u, o);
        }
    if (u > 0xffffffffull) throw Error(ErrorKind::InvalidArgument, "character order too large");
    u_ = static_cast<unsigned>(u);
    weight_.clear();
    logs_.clear();
    for (const auto& comp : comps_) {
        for (std::size_t i = 0; i < comp.gens.size(); ++i)
            weight_.push_back(static_cast<u64>(static_cast<unsigned __int128>(comp.exps[i]) * u / comp.orders[i] % u));
        auto ld = std::make_shared<LogData>();
        bool two = comp.p == 2 && comp.e >= 3;
        ld->two_part = two;
        // contribution of a residue r: sum_i exps_i * log_i(r) * u/orders_i  mod u
        std::size_t w0 = weight_.size() - comp.gens.size();
        if (comp.q <= kTableLimit) {
            ld->table.assign(comp.q, kNoLog);
            if (!two) {
                u64 g = comp.gens[0], cur = 1;
                u64 step = weight_[w0];
                u64 val = 0;
                for (u64 j = 0; j < comp.orders[0]; ++j) {
                    ld->table[cur] = static_cast<std::uint32_t>(val);
                    cur = mulmod(cur, g, comp.q);
                    val = (val + step) % u;
                }
            } else {
                u64 ga = comp.gens[0], gb = comp.gens[1];
                u64 sa = weight_[w0], sb = weight_[w0 + 1];
                u64 cur = 1, val = 0;
                for (u64 j = 0; j < comp.orders[1]; ++j) {
                    ld->table[cur] = static_cast<std::uint32_t>(val);
                    ld->table[mulmod(cur, ga, comp.q)] = static_cast<std::uint32_t>((val + sa) % u);
                    cur = mulmod(cur, gb, comp.q);
                    val = (val + sb) % u;
                }
            }
        } else {
            ld->ga = two ? comp.gens[0] : 0;
            ld->bsgs.init(two ? comp.gens[1] : comp.gens[0], two ? comp.orders[1] : comp.orders[0], comp.q);
        }
        logs_.push_back(ld);
    }
    auto t = exponent_at(F_ - 1 + (F_ == 1 ? 1 : 0));
    parity_ = (!t || *t == 0) ? Parity::even : Parity::odd;
    if (F_ == 1 || F_ == 2) parity_ = Parity::even;
    // conductor from per-component conductor exponents
    u64 f = 1;
    for (const auto& comp : comps_) {
        if (comp.p != 2) {
            u64 a = comp.exps[0];
            if (a == 0) continue;
            unsigned v = 0;
            while (v < comp.e - 1 && a % comp.p == 0) {
                a /= comp.p;
                ++v;
            }
            f *= ipow_u64(comp.p, comp.e - v);
        } else if (comp.e == 2) {
            if (comp.exps[0]) f *= 4;
        } else {
            u64 a = comp.exps[1];
            if (a == 0) {
                if (comp.exps[0]) f *= 4;
                continue;
            }
            unsigned v = 0;
            while (v < comp.e - 3 && a % 2 == 0) {
                a /= 2;
                ++v;
            }
            f *= ipow_u64(2, comp.e - v);
        }
    }
    conductor_ = f;
}

unsigned DirichletCharacter::component_exponent(std::size_t i, u64 r) const {
    const auto& comp = comps_[i];
    const auto& ld = *logs_[i];
    if (!ld.table.empty()) return ld.table[r];
    if (r % comp.p == 0) return kNoLog;
    std::size_t w0 = 0;
    for (std::size_t j = 0; j < i; ++j) w0 += comps_[j].gens.size();
    if (!ld.two_part) {
        u64 lg = ld.bsgs.log(r);
        return static_cast<unsigned>(static_cast<unsigned __int128>(lg) * weight_[w0] % u_);
    }
    u64 x = 0;
    if (r % 4 == 3) {
        x = 1;
        r = mulmod(r, ld.ga, comp.q);
    }
    u64 y = ld.bsgs.log(r);
    u64 t = x * weight_[w0] + static_cast<u64>(static_cast<unsigned __int128>(y) * weight_[w0 + 1] % u_);
    return static_cast<unsigned>(t % u_);
}

std::optional<unsigned> DirichletCharacter::exponent_at(u64 n) const {
    if (disc_) {
        int v = kronecker(*disc_, static_cast<std::int64_t>(n % (F_ == 1 ? 1 : F_)));
        if (F_ == 1) return 0u;
        if (v == 0) return std::nullopt;
        return v == 1 ? 0u : 1u;
    }
    u64 t = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        u64 r = n % comps_[i].q;
        unsigned c = component_exponent(i, r);
        if (c == kNoLog) return std::nullopt;
        t += c;
    }
    // factor 2 of the modulus with no component
    if (F_ % 2 == 0 && n % 2 == 0) return std::nullopt;
    return static_cast<unsigned>(t % u_);
}

std::optional<unsigned> DirichletCharacter::exponent_at_signed(std::int64_t n) const {
    if (disc_) {
        int v = kronecker(*disc_, n);
        if (v == 0) return std::nullopt;
        return v == 1 ? 0u : 1u;
    }
    return exponent_at(mod_signed(n, F_));
}

Cyclotomic DirichletCharacter::evaluate(std::int64_t n) const {
    auto t = exponent_at_signed(n);
    if (!t) return Cyclotomic(u_);
    return Cyclotomic::zeta_power(u_, *t);
}

Cyclotomic DirichletCharacter::evaluate(const Integer& n) const {
    if (fits_i64(n)) return evaluate(to_i64(n));
    if (disc_) return Cyclotomic(Rational(kronecker(to_integer(*disc_), n)));
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), F_);
    auto t = exponent_at(to_u64(r));
    if (!t) return Cyclotomic(u_);
    return Cyclotomic::zeta_power(u_, *t);
}

int DirichletCharacter::evaluate_real(std::int64_t n) const {
    if (u_ > 2) throw Error(ErrorKind::InvalidArgument, "evaluate_real on a character of order > 2");
    if (disc_) return kronecker(*disc_, n);
    auto t = exponent_at_signed(n);
    if (!t) return 0;
    return *t == 0 ? 1 : -1;
}

int DirichletCharacter::evaluate_real(const Integer& n) const {
    if (disc_) return kronecker(to_integer(*disc_), n);
    return evaluate(n).to_rational().get_num().get_si();
}

DirichletCharacter DirichletCharacter::power(std::int64_t j) const {
    if (disc_) {
        if (j % 2 != 0) return *this;
        return trivial(F_);
    }
    DirichletCharacter c = *this;
    for (auto& comp : c.comps_)
        for (std::size_t i = 0; i < comp.gens.size(); ++i) {
            __int128 a = static_cast<__int128>(comp.exps[i]) * j % static_cast<__int128>(comp.orders[i]);
            if (a < 0) a += comp.orders[i];
            comp.exps[i] = static_cast<u64>(a);
        }
    c.finish();
    return c;
}

DirichletCharacter DirichletCharacter::primitive() const {
    if (disc_) return *this;
    if (u_ <= 2) {
        std::int64_t D = static_cast<std::int64_t>(conductor_);
        return from_discriminant(parity_ == Parity::even ? D : -D);
    }
    std::vector<u64> gens, exps;
    u64 f = conductor_;
    for (const auto& comp : comps_) {
        if (f % comp.p != 0) continue;
        unsigned fe = 0;
        for (u64 t = f; t % comp.p == 0; t /= comp.p) ++fe;
        u64 qf = ipow_u64(comp.p, fe);
        if (comp.p != 2) {
            gens.push_back(comp.gens[0] % qf);
            exps.push_back(comp.exps[0] / ipow_u64(comp.p, comp.e - fe));
        } else if (fe == 2) {
            gens.push_back(comp.gens[0] % 4);
            exps.push_back(comp.exps[0]);
        } else {
            gens.push_back(comp.gens[0] % qf);
            gens.push_back(comp.gens[1] % qf);
            exps.push_back(comp.exps[0]);
            exps.push_back(comp.exps[1] / ipow_u64(2, comp.e - fe));
        }
    }
    return from_components(f, gens, exps);
}

DirichletCharacter DirichletCharacter::induce(u64 modulus) const {
    if (modulus % F_ != 0) throw Error(ErrorKind::InvalidArgument, "induce: modulus not a multiple");
    if (modulus == F_) return *this;
    // exponents on the new canonical generators are read off the values
    DirichletCharacter base = from_components(modulus, {}, std::vector<u64>());
    std::vector<u64> gens, exps;
    for (std::size_t ci = 0; ci < base.comps_.size(); ++ci) {
        const auto& comp = base.comps_[ci];
        u64 rest = modulus / comp.q;
        for (std::size_t i = 0; i < comp.gens.size(); ++i) {
            u64 g = comp.gens[i], x = g;
            while (x % rest != 1 % rest) x += comp.q;
            gens.push_back(g);
            auto t = exponent_at(x % F_);
            u64 tv = t ? *t : 0;
            // zeta_u^t = zeta_ord^a with a = t * ord / u
            exps.push_back(tv * comp.orders[i] / u_);
        }
    }
    return from_components(modulus, gens, exps);
}

std::string DirichletCharacter::spec() const {
    if (disc_) return "D:" + std::to_string(*disc_);
    std::string g, e;
    for (const auto& comp : comps_)
        for (std::size_t i = 0; i < comp.gens.size(); ++i) {
            if (!g.empty()) {
                g += ",";
                e += ",";
            }
            g += std::to_string(comp.gens[i]);
            e += std::to_string(comp.exps[i]);
        }
    return "m:" + std::to_string(F_) + ":g:" + g + ":e:" + e;
}

bool DirichletCharacter::operator==(const DirichletCharacter& o) const {
    if (F_ != o.F_ || u_ != o.u_ || parity_ != o.parity_) return false;
    if (disc_ && o.disc_) return *disc_ == *o.disc_;
    for (u64 n = 0; n < F_; ++n)
        if (exponent_at(n) != o.exponent_at(n)) return false;
    return true;
}

namespace {

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;
    bool eat(std::string_view lit) {
        if (s.substr(pos, lit.size()) == lit) {
            pos += lit.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view lit) {
        if (!eat(lit)) throw ParseError(pos, "expected '" + std::string(lit) + "'");
    }
    std::int64_t integer() {
        std::int64_t v = 0;
        auto start = s.data() + pos;
        auto [ptr, ec] = std::from_chars(start, s.data() + s.size(), v);
        if (ec != std::errc() || ptr == start) throw ParseError(pos, "expected integer");
        pos += ptr - start;
        return v;
    }
    std::vector<u64> list() {
        std::vector<u64> out;
        if (pos >= s.size() || s[pos] == ':') return out;
        for (;;) {
            std::size_t at = pos;
            std::int64_t v = integer();
            if (v < 0) throw ParseError(at, "expected non-negative integer");
            out.push_back(static_cast<u64>(v));
            if (!eat(",")) break;
        }
        return out;
    }
    void end() {
        if (pos != s.size()) throw ParseError(pos, "trailing characters");
    }
};

}  // namespace

DirichletCharacter parse_character(std::string_view spec) {
    Cursor c{spec};
    if (c.eat("D:")) {
        std::size_t at = c.pos;
        std::int64_t D = c.integer();
        c.end();
        if (!is_fundamental_discriminant(D)) throw ParseError(at, std::to_string(D) + " is not a fundamental discriminant");
        return DirichletCharacter::from_discriminant(D);
    }
    if (c.eat("m:")) {
        std::size_t at = c.pos;
        std::int64_t F = c.integer();
        if (F < 1) throw ParseError(at, "modulus must be positive");
        c.expect(":g:");
        std::size_t gat = c.pos;
        auto gens = c.list();
        c.expect(":e:");
        auto exps = c.list();
        c.end();
        try {
            return DirichletCharacter::from_components(static_cast<u64>(F), gens, exps);
        } catch (const Error& e) {
            throw ParseError(gat, e.what());
        }
    }
    throw ParseError(0, "expected 'D:' or 'm:'");
}

std::pair<u64, DirichletCharacter> conductor_and_primitive(const DirichletCharacter& chi) {
    auto p = chi.primitive();
    return {p.modulus(), p};
}

Cyclotomic induced_correction(const DirichletCharacter& chi_f, u64 F, unsigned k) {
    Cyclotomic r(Rational(1));
    u64 f = chi_f.modulus();
    if (F % f != 0) throw Error(ErrorKind::InvalidArgument, "induced_correction: f does not divide F");
    for (const auto& pp : factorize_u64(F)) {
        if (f % pp.prime == 0) continue;
        Cyclotomic term = chi_f.evaluate(static_cast<std::int64_t>(pp.prime)) * Rational(ipow(to_integer_u(pp.prime), k - 1));
        r *= Cyclotomic(Rational(1)) - term;
    }
    return r;
}

BigComplex gauss_sum(const DirichletCharacter& chi, mpfr_prec_t prec) {
    if (!chi.is_primitive()) throw Error(ErrorKind::InvalidArgument, "gauss_sum: character not primitive");
    u64 F = chi.modulus();
    if (auto D = chi.quadratic_discriminant()) {
        BigFloat r = sqrt(BigFloat(static_cast<long>(F), prec));
        if (*D > 0) return {r, BigFloat(prec)};
        return {BigFloat(prec), r};
    }
    if (F == 1) return {BigFloat(1L, prec), BigFloat(prec)};
    // g(chi) = prod_i chi_i(F/q_i) g(chi_i)
    mpfr_prec_t wp = prec + 32;
    BigComplex total(BigFloat(1L, wp), BigFloat(wp));
    for (const auto& comp : chi.components()) {
        DirichletCharacter ci = DirichletCharacter::from_components(comp.q, comp.gens, comp.exps);
        unsigned u = ci.order();
        BigComplex g(wp);
        for (u64 a = 1; a < comp.q; ++a) {
            auto t = ci.exponent_at(a);
            if (!t) continue;
            long num = static_cast<long>(static_cast<u64>(*t) * comp.q + a * u);
            g = g + root_of_unity(num, static_cast<long>(u * comp.q), wp);
        }
        auto t = ci.exponent_at((F / comp.q) % comp.q);
        total = total * g * root_of_unity(static_cast<long>(*t), static_cast<long>(u), wp);
    }
    return {total.re.with_prec(prec), total.im.with_prec(prec)};
}

std::vector<DirichletCharacter> all_characters(u64 F) {
    auto base = DirichletCharacter::from_components(F, {}, std::vector<u64>());
    std::vector<u64> orders, gens;
    for (const auto& comp : base.components())
        for (std::size_t i = 0; i < comp.gens.size(); ++i) {
            orders.push_back(comp.orders[i]);
            gens.push_back(comp.gens[i]);
        }
    std::vector<DirichletCharacter> out;
    std::vector<u64> exps(orders.size(), 0);
    for (;;) {
        out.push_back(DirichletCharacter::from_components(F, gens, exps));
        std::size_t i = 0;
        while (i < exps.size() && ++exps[i] == orders[i]) exps[i++] = 0;
        if (i == exps.size()) break;
    }
    return out;
}

std::vector<DirichletCharacter> primitive_characters(u64 F) {
    std::vector<DirichletCharacter> out;
    for (auto& c : all_characters(F))
        if (c.is_primitive()) out.push_back(c);
    return out;
}

}  // namespace lneg
