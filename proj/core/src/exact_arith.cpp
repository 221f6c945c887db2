#include "lneg/exact_arith.hpp"

#include "lneg/errors.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>

namespace lneg {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::RoundingAmbiguous: return "RoundingAmbiguous";
        case ErrorKind::NotFundamental: return "NotFundamental";
        case ErrorKind::VariantInapplicable: return "VariantInapplicable";
        case ErrorKind::KTooSmall: return "KTooSmall";
        case ErrorKind::GcdViolation: return "GcdViolation";
        case ErrorKind::RankDeficient: return "RankDeficient";
        case ErrorKind::Inconsistent: return "Inconsistent";
        case ErrorKind::DeadLevel: return "DeadLevel";
        case ErrorKind::InadmissiblePair: return "InadmissiblePair";
        case ErrorKind::NoUsableRatio: return "NoUsableRatio";
        case ErrorKind::CacheCorrupt: return "CacheCorrupt";
        case ErrorKind::Mismatch: return "Mismatch";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational make_rational(long num, long den) { return make_rational(Integer(num), Integer(den)); }

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0) throw ParseError(0, "bad rational '" + text + "'");
    if (r.get_den() == 0) throw ParseError(0, "zero denominator");
    r.canonicalize();
    return r;
}

namespace {

// deque keeps references stable while the table grows
template <class T>
struct Memo {
    std::shared_mutex mu;
    std::deque<T> values;
};

}  // namespace

const Rational& bernoulli_number(unsigned n) {
    static Memo<Rational> memo;
    {
        std::shared_lock lock(memo.mu);
        if (n < memo.values.size()) return memo.values[n];
    }
    std::unique_lock lock(memo.mu);
    auto& B = memo.values;
    if (B.empty()) B.push_back(Rational(1));
    while (B.size() <= n) {
        unsigned m = static_cast<unsigned>(B.size());
        if (m > 1 && m % 2 == 1) {
            B.push_back(Rational(0));
            continue;
        }
        // sum_{j<m+1} C(m+1,j) B_j = 0
        Rational s = 0;
        Integer c = 1;  // C(m+1, j)
        for (unsigned j = 0; j < m; ++j) {
            if (B[j] != 0) s += c * B[j];
            c = c * (m + 1 - j) / (j + 1);
        }
        Rational v = -s / Integer(m + 1);
        v.canonicalize();
        B.push_back(v);
    }
    return B[n];
}

const Integer& euler_number(unsigned n) {
    if (n % 2 == 1) throw Error(ErrorKind::InvalidArgument, "euler_number: odd index");
    static Memo<Integer> memo;
    unsigned idx = n / 2;
    {
        std::shared_lock lock(memo.mu);
        if (idx < memo.values.size()) return memo.values[idx];
    }
    std::unique_lock lock(memo.mu);
    auto& E = memo.values;
    if (E.empty()) E.push_back(Integer(1));
    while (E.size() <= idx) {
        unsigned m = 2 * static_cast<unsigned>(E.size());
        Integer s = 0;
        for (unsigned j = 0; j < m; j += 2) s += binomial(m, j) * E[j / 2];
        E.push_back(-s);
    }
    return E[idx];
}

Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rational binomial(const Rational& x, unsigned k) {
    Rational r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (x - i);
        r /= Integer(i + 1);
    }
    r.canonicalize();
    return r;
}

Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer ipow(const Integer& base, unsigned e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rational rpow(const Rational& base, int e) {
    if (e >= 0) {
        Rational r(ipow(base.get_num(), e), ipow(base.get_den(), e));
        r.canonicalize();
        return r;
    }
    if (base == 0) throw Error(ErrorKind::InvalidArgument, "rpow: zero to negative power");
    Rational r(ipow(base.get_den(), -e), ipow(base.get_num(), -e));
    r.canonicalize();
    return r;
}

bool fits_u64(const Integer& z) { return sgn(z) >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64; }

bool fits_i64(const Integer& z) {
    return mpz_sizeinbase(z.get_mpz_t(), 2) <= 63;
}

std::uint64_t to_u64(const Integer& z) {
    if (!fits_u64(z)) throw Error(ErrorKind::InvalidArgument, "integer does not fit in 64 bits");
    static_assert(sizeof(unsigned long) == 8);
    return mpz_get_ui(z.get_mpz_t());
}

std::int64_t to_i64(const Integer& z) {
    if (!fits_i64(z)) throw Error(ErrorKind::InvalidArgument, "integer does not fit in 63 bits");
    return mpz_get_si(z.get_mpz_t());
}

Integer lcm_of_denominators(const std::vector<Rational>& xs) {
    Integer l = 1;
    for (const auto& x : xs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

}  // namespace lneg
