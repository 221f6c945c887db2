#include "lneg/cyclotomic.hpp"

#include "lneg/errors.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace lneg {

unsigned euler_phi(unsigned long n) {
    unsigned long r = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return static_cast<unsigned>(r);
}

const std::vector<Integer>& cyclotomic_polynomial(unsigned u) {
    static std::mutex mu;
    static std::map<unsigned, std::vector<Integer>> memo;
    std::lock_guard lock(mu);
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    // x^u - 1 divided by Phi_d for proper divisors d
    std::vector<Integer> num(u + 1, Integer(0));
    num[0] = -1;
    num[u] = 1;
    for (unsigned d = 1; d < u; ++d) {
        if (u % d) continue;
        auto jt = memo.find(d);
        std::vector<Integer> phi_d;
        if (jt == memo.end()) {
            // recursion without the lock held twice: compute inline
            mu.unlock();
            phi_d = cyclotomic_polynomial(d);
            mu.lock();
        } else {
            phi_d = jt->second;
        }
        // exact division of num by monic phi_d
        std::size_t dn = num.size() - 1, dd = phi_d.size() - 1;
        std::vector<Integer> q(dn - dd + 1, Integer(0));
        for (std::size_t i = dn + 1; i-- > dd;) {
            Integer c = num[i];
            q[i - dd] = c;
            if (c != 0)
                for (std::size_t t = 0; t <= dd; ++t) num[i - dd + t] -= c * phi_d[t];
        }
        num = q;
    }
    return memo.emplace(u, num).first->second;
}

Cyclotomic::Cyclotomic(unsigned order) : order_(canonical_order(order)) {
    if (order == 0) throw Error(ErrorKind::InvalidArgument, "cyclotomic order 0");
    coeffs_.assign(euler_phi(order_), Rational(0));
}

Cyclotomic::Cyclotomic(const Rational& r) : order_(1), coeffs_{r} {}

void Cyclotomic::reduce_poly(std::vector<Rational> poly) {
    unsigned u = order_;
    std::vector<Rational> red(u, Rational(0));
    for (std::size_t j = 0; j < poly.size(); ++j)
        if (poly[j] != 0) red[j % u] += poly[j];
    const auto& phi = cyclotomic_polynomial(u);
    std::size_t d = phi.size() - 1;
    for (std::size_t i = red.size(); i-- > d;) {
        if (red[i] == 0) continue;
        Rational c = red[i];
        for (std::size_t t = 0; t <= d; ++t)
            if (phi[t] != 0) red[i - d + t] -= c * phi[t];
    }
    red.resize(d);
    coeffs_ = std::move(red);
}

Cyclotomic Cyclotomic::from_poly(unsigned order, const std::vector<Rational>& poly) {
    Cyclotomic r(order);
    if (order % 4 == 2) {
        unsigned m = order / 2;
        std::vector<Rational> mapped(m, Rational(0));
        unsigned step = (m + 1) / 2;
        for (std::size_t j = 0; j < poly.size(); ++j) {
            if (poly[j] == 0) continue;
            unsigned idx = static_cast<unsigned>((j % order) * step % m);
            if (j % 2) mapped[idx] -= poly[j];
            else mapped[idx] += poly[j];
        }
        r.reduce_poly(std::move(mapped));
    } else {
        r.reduce_poly(poly);
    }
    return r;
}

Cyclotomic Cyclotomic::zeta_power(unsigned order, long e) {
    long u = order;
    long t = ((e % u) + u) % u;
    std::vector<Rational> p(t + 1, Rational(0));
    p[t] = 1;
    return from_poly(order, p);
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (std::size_t j = 1; j < coeffs_.size(); ++j)
        if (coeffs_[j] != 0) return false;
    return true;
}

Rational Cyclotomic::to_rational() const {
    if (!is_rational()) throw Error(ErrorKind::InvalidArgument, "cyclotomic element is not rational");
    return coeffs_[0];
}

bool Cyclotomic::is_integral() const {
    for (const auto& c : coeffs_)
        if (c.get_den() != 1) return false;
    return true;
}

Cyclotomic Cyclotomic::lift(unsigned order) const {
    unsigned target = canonical_order(order);
    if (target == order_) return *this;
    if (target % order_ != 0) throw Error(ErrorKind::InvalidArgument, "lift: order does not divide target");
    unsigned s = target / order_;
    std::vector<Rational> poly(coeffs_.empty() ? 1 : (coeffs_.size() - 1) * s + 1, Rational(0));
    for (std::size_t j = 0; j < coeffs_.size(); ++j) poly[j * s] = coeffs_[j];
    return from_poly(target, poly);
}

namespace {
unsigned common_order(unsigned a, unsigned b) { return std::lcm(a, b); }
}  // namespace

Cyclotomic Cyclotomic::galois(long a) const {
    long u = order_;
    long aa = ((a % u) + u) % u;
    if (std::gcd(aa, u) != 1 && u > 1) throw Error(ErrorKind::InvalidArgument, "galois: exponent not a unit");
    std::vector<Rational> poly(u, Rational(0));
    for (std::size_t j = 0; j < coeffs_.size(); ++j) poly[(j * aa) % u] += coeffs_[j];
    return from_poly(order_, poly);
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (o.order_ != order_) {
        unsigned L = common_order(order_, o.order_);
        *this = lift(L);
        return *this += o.lift(L);
    }
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    if (o.order_ != order_) {
        unsigned L = common_order(order_, o.order_);
        *this = lift(L);
        return *this -= o.lift(L);
    }
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
    for (auto& c : coeffs_) c *= r;
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    if (o.order_ != order_) {
        unsigned L = common_order(order_, o.order_);
        *this = lift(L);
        return *this *= o.lift(L);
    }
    if (order_ == 1) {
        coeffs_[0] *= o.coeffs_[0];
        return *this;
    }
    std::vector<Rational> poly(2 * coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            if (o.coeffs_[j] != 0) poly[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    reduce_poly(std::move(poly));
    return *this;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero cyclotomic element");
    if (order_ == 1) return Cyclotomic(Rational(1) / coeffs_[0]);
    // solve M x = e_0 where column j of M is this * zeta^j
    std::size_t n = coeffs_.size();
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n + 1, Rational(0)));
    for (std::size_t j = 0; j < n; ++j) {
        Cyclotomic col = *this * zeta_power(order_, static_cast<long>(j));
        for (std::size_t i = 0; i < n; ++i) M[i][j] = col.coeffs_[i];
    }
    M[0][n] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M[p][c] == 0) ++p;
        if (p == n) throw Error(ErrorKind::InvalidArgument, "singular multiplication matrix");
        std::swap(M[p], M[c]);
        Rational inv = Rational(1) / M[c][c];
        for (std::size_t t = c; t <= n; ++t) M[c][t] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || M[r][c] == 0) continue;
            Rational f = M[r][c];
            for (std::size_t t = c; t <= n; ++t) M[r][t] -= f * M[c][t];
        }
    }
    Cyclotomic res(order_);
    for (std::size_t i = 0; i < n; ++i) res.coeffs_[i] = M[i][n];
    return res;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) {
    if (o.is_rational()) {
        Rational r = o.coeffs_[0];
        if (r == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
        return *this *= Rational(1) / r;
    }
    return *this *= o.inverse();
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
    unsigned L = std::lcm(a.order_, b.order_);
    return a.lift(L).coeffs_ == b.lift(L).coeffs_;
}

std::complex<double> Cyclotomic::embed(long j) const {
    std::complex<double> s = 0;
    const double tau = 6.283185307179586476925286766559;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
        double ang = tau * static_cast<double>((static_cast<long>(t) * j) % static_cast<long>(order_)) / order_;
        s += coeffs_[t].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

BigComplex Cyclotomic::embed(long j, mpfr_prec_t prec) const {
    BigComplex s(prec);
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
        if (coeffs_[t] == 0) continue;
        BigComplex z = root_of_unity(static_cast<long>(t) * j, static_cast<long>(order_), prec);
        s = s + z * BigFloat(coeffs_[t], prec);
    }
    return s;
}

std::string Cyclotomic::to_string() const {
    if (is_rational()) return lneg::to_string(coeffs_[0]);
    std::string s = "[";
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (j) s += ",";
        s += lneg::to_string(coeffs_[j]);
    }
    return s + "]@" + std::to_string(order_);
}

Cyclotomic cyclotomic_round(const std::vector<BigFloat>& approx, unsigned u, unsigned slack) {
    if (slack < 16) throw Error(ErrorKind::InvalidArgument, "cyclotomic_round: slack below 16");
    std::vector<Rational> poly;
    poly.reserve(approx.size());
    for (const auto& x : approx) {
        BigFloat d = x.distance_to_integer();
        if (!d.is_zero() && d.exponent2() > -static_cast<long>(slack))
            throw Error(ErrorKind::RoundingAmbiguous,
                        "coordinate " + x.to_string(25) + " not within 2^-" + std::to_string(slack) + " of an integer");
        poly.emplace_back(x.round_to_integer());
    }
    return Cyclotomic::from_poly(u, poly);
}

}  // namespace lneg
