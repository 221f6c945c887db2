#include "lneg/errors.hpp"
#include "lneg/number_theory.hpp"

#include <algorithm>
#include <thread>

namespace lneg {

namespace {

using i128 = __int128;

void add_i128(mpz_t acc, i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_t t;
    mpz_init_set_ui(t, static_cast<unsigned long>(u >> 64));
    mpz_mul_2exp(t, t, 64);
    mpz_add_ui(t, t, static_cast<unsigned long>(u & ~0ull));
    if (neg) mpz_sub(acc, acc, t);
    else mpz_add(acc, acc, t);
    mpz_clear(t);
}

void set_i128(mpz_t out, i128 v) {
    mpz_set_ui(out, 0);
    add_i128(out, v);
}

unsigned bitlen(std::uint64_t x) { return x ? 64 - __builtin_clzll(x) : 0; }

// sigma of the factored argument into a 128-bit integer; caller guarantees it fits
i128 sigma_small(SigmaKind kind, unsigned k, const SmallPrimePower* f, std::size_t nf) {
    i128 total = 1;
    for (std::size_t i = 0; i < nf; ++i) {
        std::uint64_t p = f[i].prime;
        unsigned e = f[i].exponent;
        if (kind != SigmaKind::plain && p == 2) {
            if (kind == SigmaKind::type2) {
                i128 t = 1;
                for (unsigned j = 0; j < e * k; ++j) t *= 2;
                total *= t;
            }
            continue;
        }
        int c = (kind == SigmaKind::plain) ? 1 : ((p % 4 == 1) ? 1 : -1);
        i128 pk = 1;
        for (unsigned j = 0; j < k; ++j) pk *= static_cast<i128>(p);
        i128 acc = 0, term = 1;
        for (unsigned j = 0; j <= e; ++j) {
            unsigned ex = (kind == SigmaKind::type2) ? e - j : j;
            if (c < 0 && (ex & 1)) acc -= term;
            else acc += term;
            if (j < e) term *= pk;
        }
        total *= acc;
    }
    return total;
}

struct SigmaKey {
    SigmaKind kind;
    unsigned k;
};

struct ChannelPlan {
    std::size_t sigma_index;
    Integer scale;                // lcm of weight denominators
    std::vector<Integer> a;       // weight(s) = sum_i a[i] (s^2)^i
};

struct Accumulators {
    std::vector<Integer> sums;
};

void run_range(std::uint64_t m, std::uint64_t N, const std::vector<std::uint64_t>& roots, std::uint64_t start_block,
               std::uint64_t step_blocks, const std::vector<SigmaKey>& keys, const std::vector<ChannelPlan>& plans,
               Accumulators& acc) {
    SmallPrimePower fac[64];
    std::vector<Integer> sig(keys.size());
    std::vector<char> big(keys.size());
    std::vector<i128> sig_small(keys.size());
    Integer w, x, tmp;
    acc.sums.assign(plans.size(), Integer(0));
    // s = r + N*b for each root r, block index b
    for (std::uint64_t b = start_block;; b += step_blocks) {
        bool any = false;
        for (std::uint64_t r : roots) {
            unsigned __int128 s128 = static_cast<unsigned __int128>(r) + static_cast<unsigned __int128>(N) * b;
            if (s128 * s128 >= m) continue;
            any = true;
            std::uint64_t s = static_cast<std::uint64_t>(s128);
            std::uint64_t t = (m - s * s) / N;
            std::size_t nf = factorize_u64(t, fac);
            unsigned bl = bitlen(t);
            for (std::size_t i = 0; i < keys.size(); ++i) {
                unsigned need = keys[i].k * bl + 8;
                if (keys[i].k == 0 || need < 120) {
                    big[i] = 0;
                    sig_small[i] = sigma_small(keys[i].kind, keys[i].k, fac, nf);
                } else {
                    big[i] = 1;
                    sig[i] = divisor_sum_from(keys[i].kind, keys[i].k, fac, nf);
                }
            }
            int mult = (s == 0) ? 1 : 2;
            for (std::size_t c = 0; c < plans.size(); ++c) {
                const auto& pl = plans[c];
                std::size_t si = pl.sigma_index;
                if (pl.a.size() == 1) {
                    if (big[si]) tmp = sig[si];
                    else set_i128(tmp.get_mpz_t(), sig_small[si]);
                    tmp *= pl.a[0];
                } else {
                    x = s;
                    x *= s;
                    w = pl.a.back();
                    for (std::size_t i = pl.a.size() - 1; i-- > 0;) {
                        w *= x;
                        w += pl.a[i];
                    }
                    if (big[si]) tmp = w * sig[si];
                    else {
                        set_i128(tmp.get_mpz_t(), sig_small[si]);
                        tmp *= w;
                    }
                }
                if (mult == 2) acc.sums[c] += 2 * tmp;
                else acc.sums[c] += tmp;
            }
        }
        if (!any) break;
    }
}

}  // namespace

std::vector<std::uint64_t> square_roots_mod(std::uint64_t m, std::uint64_t N) {
    std::vector<std::uint64_t> out;
    std::uint64_t mm = m % N;
    for (std::uint64_t r = 0; r < N; ++r)
        if (static_cast<unsigned __int128>(r) * r % N == mm) out.push_back(r);
    return out;
}

std::vector<Rational> s_sum_multi(std::uint64_t m, std::uint64_t N, std::span<const SumChannel> channels,
                                  unsigned threads) {
    if (m < 1 || N < 1) throw Error(ErrorKind::InvalidArgument, "s_sum: need m >= 1 and N >= 1");
    std::vector<SigmaKey> keys;
    std::vector<ChannelPlan> plans;
    Integer M = to_integer_u(m);
    for (const auto& ch : channels) {
        std::size_t idx = keys.size();
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (keys[i].kind == ch.kind && keys[i].k == ch.k) idx = i;
        if (idx == keys.size()) keys.push_back({ch.kind, ch.k});
        ChannelPlan pl;
        pl.sigma_index = idx;
        if (ch.weight == nullptr) {
            pl.scale = 1;
            pl.a = {Integer(1)};
        } else {
            const auto& c = ch.weight->coefficients();
            std::size_t n = c.size() - 1;
            pl.scale = lcm_of_denominators(c);
            // m^n P(s^2/m) = sum_i c_i m^{n-i} s^{2i}
            pl.a.resize(c.size());
            for (std::size_t i = 0; i <= n; ++i) {
                Rational v = c[i] * pl.scale;
                pl.a[i] = v.get_num() * ipow(M, static_cast<unsigned>(n - i));
            }
        }
        plans.push_back(std::move(pl));
    }
    auto roots = square_roots_mod(m, N);
    threads = std::max(1u, threads);
    std::vector<Accumulators> acc(threads);
    if (threads == 1) {
        run_range(m, N, roots, 0, 1, keys, plans, acc[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] { run_range(m, N, roots, t, threads, keys, plans, acc[t]); });
        for (auto& th : pool) th.join();
    }
    std::vector<Rational> out(plans.size());
    for (std::size_t c = 0; c < plans.size(); ++c) {
        Integer total = 0;
        for (const auto& a : acc) total += a.sums[c];
        out[c] = make_rational(total, plans[c].scale);
    }
    return out;
}

Rational s_sum(SigmaKind kind, unsigned k, std::uint64_t m, std::uint64_t N, const WeightPolynomial* P) {
    SumChannel ch{kind, k, P};
    return s_sum_multi(m, N, std::span<const SumChannel>(&ch, 1))[0];
}

}  // namespace lneg
