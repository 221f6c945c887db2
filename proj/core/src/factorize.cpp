#include "lneg/number_theory.hpp"

#include "lneg/errors.hpp"

#include <algorithm>
#include <numeric>

namespace lneg {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialCutoff = 1u << 16;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

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

const std::vector<std::uint32_t>& trial_primes() {
    static const std::vector<std::uint32_t> ps = [] {
        std::vector<bool> comp(kTrialCutoff + 1, false);
        std::vector<std::uint32_t> out;
        for (u64 i = 2; i <= kTrialCutoff; ++i) {
            if (comp[i]) continue;
            out.push_back(static_cast<std::uint32_t>(i));
            for (u64 j = i * i; j <= kTrialCutoff; j += i) comp[j] = true;
        }
        return out;
    }();
    return ps;
}

// Brent's variant; seed derived from n so runs are reproducible
u64 rho_u64(u64 n) {
    if (n % 2 == 0) return 2;
    u64 seed = n * 0x9E3779B97F4A7C15ull;
    for (u64 c = (seed % (n - 1)) + 1;; c = c % (n - 1) + 1) {
        u64 y = (seed >> 7) % n, m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
        auto f = [&](u64 v) {
            u64 w = mulmod(v, v, n);
            return w >= n - c ? w - (n - c) : w + c;
        };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            }
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_u64(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    u64 d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

void split_mpz(const Integer& n, std::vector<Integer>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    if (fits_u64(n)) {
        std::vector<u64> small;
        split_u64(to_u64(n), small);
        for (u64 p : small) out.push_back(to_integer_u(p));
        return;
    }
    Integer seed = n * Integer("11400714819323198485");
    for (unsigned long c = mpz_fdiv_ui(seed.get_mpz_t(), 1000) + 1;; ++c) {
        Integer x = 2, y = 2, g = 1, q = 1, ys;
        Integer r = 1;
        auto f = [&](Integer& v) {
            v = v * v + c;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        unsigned long rr = 1;
        bool fail = false;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < rr; ++i) f(y);
            for (unsigned long k = 0; k < rr && g == 1; k += 64) {
                ys = y;
                for (unsigned long i = 0; i < std::min<unsigned long>(64, rr - k); ++i) {
                    f(y);
                    Integer d = x - y;
                    q = q * abs(d);
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            rr *= 2;
        }
        if (g == n) {
            do {
                f(ys);
                Integer d = x - ys;
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
            if (g == n) fail = true;
        }
        if (!fail) {
            split_mpz(g, out);
            split_mpz(n / g, out);
            return;
        }
    }
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::size_t factorize_u64(u64 m, SmallPrimePower* out) {
    std::size_t nf = 0;
    if (m <= 1) return 0;
    int tz = __builtin_ctzll(m);
    if (tz) {
        out[nf++] = {2, static_cast<unsigned>(tz)};
        m >>= tz;
    }
    const auto& ps = trial_primes();
    for (std::size_t i = 1; i < ps.size(); ++i) {
        u64 p = ps[i];
        if (p * p > m) break;
        if (m % p == 0) {
            unsigned e = 0;
            do {
                m /= p;
                ++e;
            } while (m % p == 0);
            out[nf++] = {p, e};
        }
        // any cofactor below p^3 is a prime or a product of two primes
        if (p * p * p > m) break;
    }
    if (m > 1) {
        std::vector<u64> rest;
        split_u64(m, rest);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            out[nf++] = {rest[i], static_cast<unsigned>(j - i)};
            i = j;
        }
    }
    std::sort(out, out + nf, [](const SmallPrimePower& a, const SmallPrimePower& b) { return a.prime < b.prime; });
    return nf;
}

std::vector<SmallPrimePower> factorize_u64(u64 m) {
    SmallPrimePower buf[64];
    std::size_t n = factorize_u64(m, buf);
    return std::vector<SmallPrimePower>(buf, buf + n);
}

Factorization factorize(const Integer& m) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "factorize: m < 1");
    Factorization out;
    if (fits_u64(m)) {
        for (const auto& f : factorize_u64(to_u64(m))) out.push_back({to_integer_u(f.prime), f.exponent});
        return out;
    }
    Integer n = m;
    for (std::uint32_t p : trial_primes()) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            out.push_back({Integer(p), e});
        }
    }
    std::vector<Integer> rest;
    split_mpz(n, rest);
    std::sort(rest.begin(), rest.end());
    for (std::size_t i = 0; i < rest.size();) {
        std::size_t j = i;
        while (j < rest.size() && rest[j] == rest[i]) ++j;
        out.push_back({rest[i], static_cast<unsigned>(j - i)});
        i = j;
    }
    return out;
}

}  // namespace lneg
