#include "lneg/errors.hpp"
#include "lneg/number_theory.hpp"

#include <cstdlib>
#include <numeric>

namespace lneg {

int kronecker(std::int64_t a, std::int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int r = 1;
    unsigned __int128 un;
    if (n < 0) {
        un = static_cast<unsigned __int128>(-static_cast<__int128>(n));
        if (a < 0) r = -r;
    } else {
        un = static_cast<unsigned __int128>(n);
    }
    std::uint64_t m = static_cast<std::uint64_t>(un);
    while ((m & 1) == 0) {
        if ((a & 1) == 0) return 0;
        m >>= 1;
        std::int64_t a8 = ((a % 8) + 8) % 8;
        if (a8 == 3 || a8 == 5) r = -r;
    }
    if (m == 1) return r;
    // Jacobi (a mod m / m)
    std::uint64_t x = static_cast<std::uint64_t>(((static_cast<__int128>(a) % m) + m) % m);
    std::uint64_t y = m;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            std::uint64_t y8 = y % 8;
            if (y8 == 3 || y8 == 5) r = -r;
        }
        std::swap(x, y);
        if (x % 4 == 3 && y % 4 == 3) r = -r;
        x %= y;
    }
    return y == 1 ? r : 0;
}

int kronecker(const Integer& D, const Integer& n) {
    if (fits_i64(D) && fits_i64(n)) return kronecker(to_i64(D), to_i64(n));
    if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
    int r = 1;
    Integer m = n;
    if (m < 0) {
        m = -m;
        if (D < 0) r = -r;
    }
    unsigned long v = mpz_scan1(m.get_mpz_t(), 0);
    if (v > 0) {
        if (mpz_even_p(D.get_mpz_t())) return 0;
        mpz_tdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), v);
        unsigned long d8 = mpz_fdiv_ui(D.get_mpz_t(), 8);
        if ((v & 1) && (d8 == 3 || d8 == 5)) r = -r;
    }
    if (m == 1) return r;
    return r * mpz_jacobi(D.get_mpz_t(), m.get_mpz_t());
}

bool is_squarefree_u64(std::uint64_t n) {
    if (n == 0) return false;
    for (const auto& f : factorize_u64(n))
        if (f.exponent > 1) return false;
    return true;
}

bool is_fundamental_discriminant(std::int64_t D) {
    if (D == 0) return false;
    std::int64_t r = ((D % 4) + 4) % 4;
    std::uint64_t a = D < 0 ? static_cast<std::uint64_t>(-D) : static_cast<std::uint64_t>(D);
    if (r == 1) return is_squarefree_u64(a);
    if (r != 0) return false;
    std::int64_t m = D / 4;
    std::int64_t mr = ((m % 4) + 4) % 4;
    if (mr != 2 && mr != 3) return false;
    return is_squarefree_u64(a / 4);
}

bool is_fundamental_discriminant(const Integer& D) {
    if (fits_i64(D)) return is_fundamental_discriminant(to_i64(D));
    unsigned long r = mpz_fdiv_ui(D.get_mpz_t(), 4);
    Integer a = abs(D);
    if (r == 0) {
        Integer m = D / 4;
        unsigned long mr = mpz_fdiv_ui(m.get_mpz_t(), 4);
        if (mr != 2 && mr != 3) return false;
        a /= 4;
    } else if (r != 1) {
        return false;
    }
    for (const auto& f : factorize(a))
        if (f.exponent > 1) return false;
    return true;
}

const char* sigma_kind_name(SigmaKind kind) {
    switch (kind) {
        case SigmaKind::plain: return "plain";
        case SigmaKind::type1: return "type1";
        case SigmaKind::type2: return "type2";
    }
    return "?";
}

Integer divisor_sum_from(SigmaKind kind, unsigned k, const SmallPrimePower* f, std::size_t nf) {
    Integer total = 1, pk, term, acc;
    for (std::size_t i = 0; i < nf; ++i) {
        std::uint64_t p = f[i].prime;
        unsigned e = f[i].exponent;
        if (kind != SigmaKind::plain && p == 2) {
            if (kind == SigmaKind::type2) {
                mpz_ui_pow_ui(term.get_mpz_t(), 2, static_cast<unsigned long>(e) * k);
                total *= term;
            }
            continue;
        }
        int c = (kind == SigmaKind::plain) ? 1 : ((p % 4 == 1) ? 1 : -1);
        mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
        // sum_i w_i p^{ik}: type1 w_i = c^i, type2 w_i = c^{e-i}
        acc = 0;
        term = 1;
        for (unsigned j = 0; j <= e; ++j) {
            int w = 1;
            if (c < 0) {
                unsigned ex = (kind == SigmaKind::type2) ? e - j : j;
                w = (ex & 1) ? -1 : 1;
            }
            if (w > 0) acc += term;
            else acc -= term;
            if (j < e) term *= pk;
        }
        total *= acc;
    }
    return total;
}

Integer divisor_sum(SigmaKind kind, unsigned k, const Integer& m) {
    if (m < 1) return 0;
    Factorization f = factorize(m);
    bool small = true;
    for (const auto& pp : f) small = small && fits_u64(pp.prime);
    if (small) {
        std::vector<SmallPrimePower> s;
        for (const auto& pp : f) s.push_back({to_u64(pp.prime), pp.exponent});
        return divisor_sum_from(kind, k, s.data(), s.size());
    }
    Integer total = 1;
    for (const auto& pp : f) {
        int c = 1;
        if (kind != SigmaKind::plain) c = (mpz_fdiv_ui(pp.prime.get_mpz_t(), 4) == 1) ? 1 : -1;
        Integer pk = ipow(pp.prime, k), acc = 0, term = 1;
        for (unsigned j = 0; j <= pp.exponent; ++j) {
            unsigned ex = (kind == SigmaKind::type2) ? pp.exponent - j : j;
            int w = (c < 0 && (ex & 1)) ? -1 : 1;
            acc += w * term;
            term *= pk;
        }
        total *= acc;
    }
    return total;
}

Rational divisor_sum_twisted(SigmaKind kind, unsigned k, const Integer& m) { return Rational(divisor_sum(kind, k, m)); }

Integer divisor_sum_psi(const std::function<int(const Integer&)>& psi, unsigned k, const Integer& m) {
    if (m < 1) return 0;
    Factorization f = factorize(m);
    Integer total = 1;
    for (const auto& pp : f) {
        int c = psi(pp.prime);
        Integer pk = ipow(pp.prime, k), acc = 1, term = 1;
        int w = 1;
        for (unsigned j = 1; j <= pp.exponent; ++j) {
            term *= pk;
            w *= c;
            acc += w * term;
        }
        total *= acc;
    }
    return total;
}

WeightPolynomial::WeightPolynomial(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(Rational(0));
}

Rational WeightPolynomial::evaluate(const Rational& x) const {
    Rational r = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * x + coeffs_[i];
    return r;
}

std::uint64_t class_number(std::int64_t D) {
    if (D >= 0 || ((D % 4) + 4) % 4 > 1) throw Error(ErrorKind::InvalidArgument, "class_number: need D < 0, D = 0,1 mod 4");
    std::int64_t aD = -D;
    std::uint64_t h = 0;
    for (std::int64_t a = 1; 3 * a * a <= aD; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (((b - D) % 2 + 2) % 2 != 0) continue;
            std::int64_t num = b * b - D;
            if (num % (4 * a) != 0) continue;
            std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            ++h;
        }
    }
    return h;
}

}  // namespace lneg
