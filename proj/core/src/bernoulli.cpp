#include "lneg/bernoulli.hpp"

#include "lneg/errors.hpp"

namespace lneg {

const char* bernoulli_variant_name(BernoulliVariant v) {
    switch (v) {
    case BernoulliVariant::direct1: return "direct1";
    case BernoulliVariant::direct2: return "direct2";
    case BernoulliVariant::direct3: return "direct3";
    case BernoulliVariant::recursion_S: return "recursion_S";
    case BernoulliVariant::recursion_half: return "recursion_half";
    case BernoulliVariant::recursion_lucas: return "recursion_lucas";
    }
    return "?";
}

BernoulliVariant parse_bernoulli_variant(std::string_view name) {
    for (auto v : {BernoulliVariant::direct1, BernoulliVariant::direct2, BernoulliVariant::direct3,
                   BernoulliVariant::recursion_S, BernoulliVariant::recursion_half, BernoulliVariant::recursion_lucas})
        if (name == bernoulli_variant_name(v)) return v;
    throw Error(ErrorKind::InvalidArgument, "unknown Bernoulli variant '" + std::string(name) + "'");
}

ChiBernoulliContext::ChiBernoulliContext(DirichletCharacter chi)
    : chi_(std::move(chi)), F_(chi_.modulus()), u_(chi_.order()) {
    if (!chi_.is_primitive()) throw Error(ErrorKind::InvalidArgument, "chi-Bernoulli numbers need a primitive character");
    texp_.resize(F_ > 1 ? F_ - 1 : 0);
    for (std::uint64_t r = 1; r < F_; ++r) {
        auto t = chi_.exponent_at(r);
        texp_[r - 1] = t ? *t : u_;
    }
}

Cyclotomic ChiBernoulliContext::from_buckets(const std::vector<Integer>& acc) const {
    std::vector<Rational> poly(acc.begin(), acc.end());
    return Cyclotomic::from_poly(u_, poly);
}

void ChiBernoulliContext::grow(unsigned n) {
    while (next_n_ <= n) {
        if (F_ == 1) {
            S_.emplace_back(Rational(next_n_ == 0 ? 1 : 0));
            Q_.emplace_back(Rational(0));
            ++next_n_;
            continue;
        }
        if (next_n_ == 0) pw_.assign(F_ - 1, Integer(1));
        std::vector<Integer> accS(u_, Integer(0)), accQ(u_, Integer(0));
        for (std::uint64_t r = 1; r < F_; ++r) {
            unsigned t = texp_[r - 1];
            Integer& p = pw_[r - 1];
            if (t != u_) {
                accS[t] += p;
                if (2 * r < F_) accQ[t] += p;
            }
            p *= static_cast<unsigned long>(r);
        }
        S_.push_back(from_buckets(accS));
        Q_.push_back(from_buckets(accQ));
        ++next_n_;
    }
}

const Cyclotomic& ChiBernoulliContext::S(unsigned n) {
    grow(n);
    return S_[n];
}

const Cyclotomic& ChiBernoulliContext::Q(unsigned n) {
    grow(n);
    return Q_[n];
}

Cyclotomic ChiBernoulliContext::power_sum(std::uint64_t limit, unsigned n) const {
    std::vector<Integer> acc(u_, Integer(0));
    for (std::uint64_t r = 0; r < limit; ++r) {
        unsigned t;
        if (F_ == 1) t = 0;
        else if (r % F_ == 0) continue;
        else t = texp_[r % F_ - 1];
        if (t == u_) continue;
        acc[t] += ipow(to_integer_u(r), n);
    }
    return from_buckets(acc);
}

namespace {

Rational pow_int(std::uint64_t F, unsigned e) { return Rational(ipow(to_integer_u(F), e)); }

}  // namespace

Cyclotomic ChiBernoulliContext::rec_S(unsigned k) {
    auto it = memo_S_.find(k);
    if (it != memo_S_.end()) return it->second;
    Rational Fq = to_integer_u(F_);
    Cyclotomic b;
    if (k == 0) {
        b = S(0) * Rational(1 / Fq);
    } else {
        // sum_{j <= k} F^{k+1-j} C(k+1, j) B_j = (k+1) S_k
        b = S(k) * Rational(k + 1);
        for (unsigned j = 0; j < k; ++j)
            b -= rec_S(j) * Rational(pow_int(F_, k + 1 - j) * binomial(k + 1, j));
        b *= Rational(1 / (Fq * (k + 1)));
    }
    memo_S_.emplace(k, b);
    return b;
}

Cyclotomic ChiBernoulliContext::rec_half(unsigned k) {
    auto it = memo_half_.find(k);
    if (it != memo_half_.end()) return it->second;
    Cyclotomic eps = chi_.evaluate(std::int64_t{2}).conj();
    Cyclotomic rhs = Q(k - 1) * Rational(ipow(Integer(2), k - 1) * k);
    for (unsigned j = 1; 2 * j < k; ++j) {
        Cyclotomic f = Cyclotomic(Rational(ipow(Integer(2), k - 1 - 2 * j))) - eps;
        rhs += f * rec_half(k - 2 * j) * Rational(binomial(k, 2 * j) * pow_int(F_, 2 * j));
    }
    Cyclotomic den = Cyclotomic(Rational(ipow(Integer(2), k))) - eps;
    if (den.is_zero()) throw Error(ErrorKind::VariantInapplicable, "2^k equals chi-bar(2)");
    Cyclotomic b = -rhs / den;
    memo_half_.emplace(k, b);
    return b;
}

Cyclotomic ChiBernoulliContext::rec_lucas(unsigned n) {
    auto it = memo_lucas_.find(n);
    if (it != memo_lucas_.end()) return it->second;
    Rational Fq = to_integer_u(F_);
    Cyclotomic b(u_);
    if (chi_.is_even() && n % 2 == 0 && n >= 2) {
        unsigned K = n / 2;
        Cyclotomic R(u_);
        for (unsigned i = 0; i <= K; ++i) {
            Rational c = binomial(K, i) * pow_int(F_, K - i);
            if (i % 2) c = -c;
            R += Q(K + i) * c;
        }
        R *= Rational((K % 2 ? -1 : 1) / Fq);
        for (unsigned j = 1; 2 * j <= K - 1; ++j)
            R -= rec_lucas(n - 2 * j) * Rational(binomial(K, 2 * j + 1) * pow_int(F_, 2 * j) / Rational(n - 2 * j));
        b = R * Rational(2);
    } else if (!chi_.is_even() && n % 2 == 1) {
        unsigned K = (n + 1) / 2;
        Cyclotomic R(u_);
        for (unsigned i = 0; i + 1 <= K; ++i) {
            Rational c = binomial(K - 1, i) * pow_int(F_, K - 1 - i);
            if (i % 2) c = -c;
            R += (Q(K - 1 + i) * Fq - Q(K + i) * Rational(2)) * c;
        }
        R *= Rational((K % 2 ? -1 : 1) * Rational(K) / Fq);
        for (unsigned j = 1; 2 * j <= K - 1; ++j)
            R -= rec_lucas(n - 2 * j) * Rational(binomial(K, 2 * j + 1) * pow_int(F_, 2 * j));
        b = R * Rational(Rational(1) / K);
    }
    memo_lucas_.emplace(n, b);
    return b;
}

Cyclotomic ChiBernoulliContext::bernoulli(unsigned k, BernoulliVariant v) {
    bool parity_ok = chi_.is_even() == (k % 2 == 0);
    if (!parity_ok && (F_ > 1 || k >= 2)) return Cyclotomic(u_);
    Rational Fq = to_integer_u(F_);
    switch (v) {
    case BernoulliVariant::direct1: {
        Cyclotomic acc = S(k);
        if (k >= 1) acc -= S(k - 1) * Rational(Rational(k) * Fq / 2);
        for (unsigned j = 1; 2 * j <= k; ++j)
            acc += S(k - 2 * j) * Rational(binomial(k, 2 * j) * bernoulli_number(2 * j) * pow_int(F_, 2 * j));
        return acc * Rational(1 / Fq);
    }
    case BernoulliVariant::direct2: {
        // per-residue polynomial r^k - (kF/2) r^{k-1} + sum C(k,2j) B_{2j} F^{2j} r^{k-2j}
        std::vector<Rational> poly(k + 1, Rational(0));
        poly[k] = 1;
        if (k >= 1) poly[k - 1] -= Rational(k) * Fq / 2;
        for (unsigned j = 1; 2 * j <= k; ++j)
            poly[k - 2 * j] += binomial(k, 2 * j) * bernoulli_number(2 * j) * pow_int(F_, 2 * j);
        Integer L = lcm_of_denominators(poly);
        std::vector<Integer> ip(k + 1);
        for (unsigned i = 0; i <= k; ++i) ip[i] = Rational(poly[i] * L).get_num();
        std::vector<Integer> acc(u_, Integer(0));
        Integer h;
        auto add = [&](std::uint64_t r, unsigned t) {
            h = ip[k];
            for (unsigned i = k; i-- > 0;) {
                h *= static_cast<unsigned long>(r);
                h += ip[i];
            }
            acc[t] += h;
        };
        if (F_ == 1) add(0, 0);
        for (std::uint64_t r = 1; r < F_; ++r)
            if (texp_[r - 1] != u_) add(r, texp_[r - 1]);
        return from_buckets(acc) * Rational(1 / (Fq * L));
    }
    case BernoulliVariant::direct3: {
        Cyclotomic acc(u_);
        for (unsigned j = 1; j <= k + 1; ++j) {
            Rational c = Rational(binomial(k + 1, j)) / j;
            if (j % 2 == 0) c = -c;
            acc += power_sum(F_ * j, k) * c;
        }
        return acc * Rational(1 / Fq);
    }
    case BernoulliVariant::recursion_S:
        return rec_S(k);
    case BernoulliVariant::recursion_half:
        if (chi_.is_trivial()) throw Error(ErrorKind::VariantInapplicable, "recursion_half needs a nontrivial character");
        return rec_half(k);
    case BernoulliVariant::recursion_lucas:
        if (chi_.is_trivial()) throw Error(ErrorKind::VariantInapplicable, "recursion_lucas needs a nontrivial character");
        if (k == 0) return Cyclotomic(u_);
        return rec_lucas(k);
    }
    return Cyclotomic(u_);
}

Cyclotomic chi_bernoulli(const DirichletCharacter& chi, unsigned k, BernoulliVariant v) {
    ChiBernoulliContext ctx(chi);
    return ctx.bernoulli(k, v);
}

std::vector<Cyclotomic> chi_bernoulli_series(const DirichletCharacter& chi, unsigned kmax) {
    ChiBernoulliContext ctx(chi);
    std::uint64_t F = chi.modulus();
    // (e^{FT} - 1)/T = sum F^{n+1} T^n/(n+1)!
    std::vector<Rational> E(kmax + 1);
    for (unsigned n = 0; n <= kmax; ++n) E[n] = Rational(ipow(to_integer_u(F), n + 1)) / Rational(factorial(n + 1));
    std::vector<Cyclotomic> b(kmax + 1);
    for (unsigned n = 0; n <= kmax; ++n) {
        Cyclotomic a = ctx.S(n) * Rational(Rational(1) / Rational(factorial(n)));
        for (unsigned i = 1; i <= n; ++i) a -= b[n - i] * E[i];
        b[n] = a * Rational(1 / E[0]);
    }
    for (unsigned n = 0; n <= kmax; ++n) b[n] *= Rational(factorial(n));
    return b;
}

Cyclotomic l_via_bernoulli(const DirichletCharacter& chi, unsigned k, BernoulliVariant v) {
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be positive");
    if (!chi.is_primitive()) {
        auto [f, prim] = conductor_and_primitive(chi);
        return l_via_bernoulli(prim, k, v) * induced_correction(prim, chi.modulus(), k);
    }
    if (chi.modulus() == 1 && k == 1) return Cyclotomic(Rational(-1, 2));
    if (chi.modulus() == 1 && (v == BernoulliVariant::recursion_half || v == BernoulliVariant::recursion_lucas))
        v = BernoulliVariant::recursion_S;
    return chi_bernoulli(chi, k, v) * Rational(Rational(-1) / k);
}

}  // namespace lneg
