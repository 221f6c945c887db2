#include "lneg/modular_forms.hpp"

#include "lneg/bernoulli.hpp"
#include "lneg/characters.hpp"
#include "lneg/errors.hpp"
#include "lneg/linear_algebra.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace lneg {

QSeries::QSeries(long valuation, std::vector<Rational> coeffs, long n_max) : v_(valuation), n_max_(n_max) {
    long len = n_max - valuation + 1;
    if (len < 0) len = 0;
    coeffs.resize(static_cast<std::size_t>(len));
    std::size_t z = 0;
    while (z < coeffs.size() && coeffs[z] == 0) ++z;
    v_ += static_cast<long>(z);
    a_.assign(coeffs.begin() + static_cast<long>(z), coeffs.end());
}

QSeries QSeries::constant(const Rational& c, long n_max) { return QSeries(0, {c}, n_max); }

QSeries QSeries::from_coefficients(std::vector<Rational> a) {
    long n = static_cast<long>(a.size()) - 1;
    return QSeries(0, std::move(a), n);
}

Rational QSeries::coefficient(long n) const {
    if (n > n_max_)
        throw Error(ErrorKind::InvalidArgument,
                    "coefficient of q^" + std::to_string(n) + " beyond precision " + std::to_string(n_max_));
    if (n < v_) return 0;
    return a_[static_cast<std::size_t>(n - v_)];
}

long QSeries::order() const { return a_.empty() ? n_max_ + 1 : v_; }

QSeries QSeries::truncate(long n_max) const {
    if (n_max >= n_max_) return *this;
    QSeries r = *this;
    r.n_max_ = n_max;
    long len = std::max(0L, n_max - v_ + 1);
    if (static_cast<std::size_t>(len) < r.a_.size()) r.a_.resize(static_cast<std::size_t>(len));
    return r;
}

QSeries& QSeries::operator+=(const QSeries& o) {
    long v = std::min(order(), o.order());
    long n = std::min(n_max_, o.n_max_);
    std::vector<Rational> c(static_cast<std::size_t>(std::max(0L, n - v + 1)));
    for (long e = v; e <= n; ++e) {
        Rational& t = c[static_cast<std::size_t>(e - v)];
        if (e >= v_ && e - v_ < static_cast<long>(a_.size())) t += a_[static_cast<std::size_t>(e - v_)];
        if (e >= o.v_ && e - o.v_ < static_cast<long>(o.a_.size())) t += o.a_[static_cast<std::size_t>(e - o.v_)];
    }
    *this = QSeries(v, std::move(c), n);
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += o * Rational(-1); }

QSeries& QSeries::operator*=(const Rational& c) {
    if (c == 0) {
        a_.clear();
        v_ = n_max_ + 1;
        return *this;
    }
    for (auto& x : a_) x *= c;
    return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    long va = a.order(), vb = b.order();
    long n = std::min(va + b.n_max_, vb + a.n_max_);
    long v = va + vb;
    std::vector<Rational> c(static_cast<std::size_t>(std::max(0L, n - v + 1)));
    long len = static_cast<long>(c.size());
    Rational t;
    for (long i = 0; i < static_cast<long>(a.a_.size()) && i < len; ++i) {
        const Rational& x = a.a_[static_cast<std::size_t>(i)];
        if (x == 0) continue;
        long lim = std::min(static_cast<long>(b.a_.size()), len - i);
        for (long j = 0; j < lim; ++j) {
            const Rational& y = b.a_[static_cast<std::size_t>(j)];
            if (y == 0) continue;
            mpq_mul(t.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
            c[static_cast<std::size_t>(i + j)] += t;
        }
    }
    return QSeries(v, std::move(c), n);
}

QSeries QSeries::inverse() const {
    if (a_.empty()) throw Error(ErrorKind::InvalidArgument, "inverse of a series with no known nonzero term");
    long v = v_;
    long n = n_max_ - 2 * v;
    long len = n_max_ - v + 1;
    std::vector<Rational> b(static_cast<std::size_t>(len));
    Rational inv0 = 1 / a_[0];
    b[0] = inv0;
    for (long i = 1; i < len; ++i) {
        Rational s = 0;
        for (long j = 1; j <= i && j < static_cast<long>(a_.size()); ++j)
            if (a_[static_cast<std::size_t>(j)] != 0) s += a_[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i - j)];
        b[static_cast<std::size_t>(i)] = -s * inv0;
    }
    return QSeries(-v, std::move(b), n);
}

QSeries QSeries::pow(unsigned e) const {
    if (e == 0) return constant(1, n_max_ - order());
    QSeries r, b = *this;
    bool first = true;
    while (e) {
        if (e & 1) {
            r = first ? b : r * b;
            first = false;
        }
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

QSeries QSeries::sqrt() const {
    if (a_.empty() || v_ != 0 || a_[0] != 1)
        throw Error(ErrorKind::InvalidArgument, "sqrt needs a series 1 + O(q)");
    long len = n_max_ + 1;
    std::vector<Rational> b(static_cast<std::size_t>(len));
    b[0] = 1;
    // (sum b)^2 = a gives 2 b_n = a_n - sum_{0<i<n} b_i b_{n-i}
    for (long n = 1; n < len; ++n) {
        Rational s = n < static_cast<long>(a_.size()) ? a_[static_cast<std::size_t>(n)] : Rational(0);
        for (long i = 1; i < n; ++i) s -= b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(n - i)];
        b[static_cast<std::size_t>(n)] = s / 2;
    }
    return QSeries(0, std::move(b), n_max_);
}

bool QSeries::agrees_with(const QSeries& o) const {
    long n = std::min(n_max_, o.n_max_);
    long lo = std::min(order(), o.order());
    for (long e = lo; e <= n; ++e)
        if (coefficient(e) != o.coefficient(e)) return false;
    return true;
}

std::string QSeries::to_string(long terms) const {
    std::ostringstream out;
    long shown = 0;
    for (std::size_t i = 0; i < a_.size() && shown < terms; ++i) {
        if (a_[i] == 0) continue;
        if (shown) out << " + ";
        out << lneg::to_string(a_[i]) << "*q^" << (v_ + static_cast<long>(i));
        ++shown;
    }
    if (!shown) out << "0";
    out << " + O(q^" << (n_max_ + 1) << ")";
    return out.str();
}

QSeries v_operator(const QSeries& f, unsigned d) {
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "V operator needs d >= 1");
    long v = f.order();
    long n = static_cast<long>(d) * (f.n_max() + 1) - 1;
    std::vector<Rational> c(static_cast<std::size_t>(std::max(0L, n - static_cast<long>(d) * v + 1)));
    for (long e = v; e <= f.n_max(); ++e) c[static_cast<std::size_t>((e - v) * static_cast<long>(d))] = f.coefficient(e);
    return QSeries(static_cast<long>(d) * v, std::move(c), n);
}

QSeries derivative_D(const QSeries& f) {
    long v = f.order();
    std::vector<Rational> c;
    for (long e = v; e <= f.n_max(); ++e) c.push_back(f.coefficient(e) * e);
    return QSeries(v, std::move(c), f.n_max());
}

std::vector<Integer> divisor_sum_table(SigmaKind kind, unsigned k, long n_max) {
    std::vector<Integer> s(static_cast<std::size_t>(std::max(0L, n_max) + 1), Integer(0));
    for (long d = 1; d <= n_max; ++d) {
        for (long m = d; m <= n_max; m += d) {
            long e = d;
            int c = 1;
            if (kind == SigmaKind::type1) {
                if (d % 2 == 0) continue;
                c = (d % 4 == 1) ? 1 : -1;
            } else if (kind == SigmaKind::type2) {
                long q = m / d;
                if (q % 2 == 0) continue;
                c = (q % 4 == 1) ? 1 : -1;
            }
            Integer t = ipow(Integer(e), k);
            if (c > 0) s[static_cast<std::size_t>(m)] += t;
            else s[static_cast<std::size_t>(m)] -= t;
        }
    }
    return s;
}

QSeries eisenstein_normalized(unsigned r, long n_max) {
    if (r < 2 || r % 2) throw Error(ErrorKind::InvalidArgument, "eisenstein_normalized: weight must be even >= 2");
    auto sig = divisor_sum_table(SigmaKind::plain, r - 1, n_max);
    std::vector<Rational> c(static_cast<std::size_t>(n_max + 1));
    c[0] = -bernoulli_number(r) / (2 * r);
    for (long n = 1; n <= n_max; ++n) c[static_cast<std::size_t>(n)] = sig[static_cast<std::size_t>(n)];
    return QSeries(0, std::move(c), n_max);
}

QSeries eisenstein(unsigned k, long n_max) {
    if (k == 0) return QSeries::constant(1, n_max);
    QSeries f = eisenstein_normalized(k, n_max);
    return f * (1 / f.coefficient(0));
}

QSeries eisenstein_chi4(SigmaKind kind, unsigned l, long n_max) {
    if (kind == SigmaKind::plain || l % 2 == 0)
        throw Error(ErrorKind::InvalidArgument, "eisenstein_chi4: twisted kind and odd weight required");
    auto sig = divisor_sum_table(kind, l - 1, n_max);
    std::vector<Rational> c(static_cast<std::size_t>(n_max + 1));
    if (kind == SigmaKind::type1)
        c[0] = l_via_bernoulli(DirichletCharacter::from_discriminant(-4), l).to_rational() / 2;
    for (long n = 1; n <= n_max; ++n) c[static_cast<std::size_t>(n)] = sig[static_cast<std::size_t>(n)];
    return QSeries(0, std::move(c), n_max);
}

QSeries theta(long n_max) {
    std::vector<Rational> c(static_cast<std::size_t>(n_max + 1));
    c[0] = 1;
    for (long s = 1; s * s <= n_max; ++s) c[static_cast<std::size_t>(s * s)] = 2;
    return QSeries(0, std::move(c), n_max);
}

namespace {

// prod (1 - q^n) by the pentagonal number theorem
QSeries euler_function(long n_max) {
    std::vector<Rational> c(static_cast<std::size_t>(n_max + 1));
    c[0] = 1;
    for (long j = 1;; ++j) {
        long a = j * (3 * j - 1) / 2, b = j * (3 * j + 1) / 2;
        if (a > n_max) break;
        int sg = (j % 2) ? -1 : 1;
        c[static_cast<std::size_t>(a)] = sg;
        if (b <= n_max) c[static_cast<std::size_t>(b)] = sg;
    }
    return QSeries(0, std::move(c), n_max);
}

QSeries shift(const QSeries& f, long s) {
    std::vector<Rational> c;
    for (long e = f.order(); e <= f.n_max(); ++e) c.push_back(f.coefficient(e));
    return QSeries(f.order() + s, std::move(c), f.n_max() + s);
}

}  // namespace

QSeries eta_product(const std::vector<std::pair<unsigned, int>>& factors, long n_max) {
    long num = 0;
    for (auto [d, e] : factors) num += static_cast<long>(d) * e;
    if (num % 24) throw Error(ErrorKind::InvalidArgument, "eta product has non-integral q-exponent");
    long s = num / 24;
    long M = n_max - s;
    if (M < 0) return QSeries(0, {}, n_max);
    QSeries prod = QSeries::constant(1, M);
    for (auto [d, e] : factors) {
        if (d == 0) throw Error(ErrorKind::InvalidArgument, "eta product: d must be positive");
        QSeries base = euler_function(M / static_cast<long>(d) + 1);
        QSeries p = base.pow(static_cast<unsigned>(std::abs(e)));
        if (e < 0) p = p.inverse();
        prod = prod * v_operator(p, d).truncate(M);
    }
    return shift(prod.truncate(M), s);
}

const char* level_form_name(LevelForm f) {
    switch (f) {
        case LevelForm::F2_level2: return "F2_level2";
        case LevelForm::F4_level2: return "F4_level2";
        case LevelForm::Delta4_level2: return "Delta4_level2";
        case LevelForm::F2_level4: return "F2_level4";
        case LevelForm::Delta4_level4: return "Delta4_level4";
    }
    return "?";
}

unsigned level_form_weight(LevelForm f) {
    return (f == LevelForm::F2_level2 || f == LevelForm::F2_level4) ? 2 : 4;
}

unsigned level_form_level(LevelForm f) {
    return (f == LevelForm::F2_level4 || f == LevelForm::Delta4_level4) ? 4 : 2;
}

std::vector<LevelForm> all_level_forms() {
    return {LevelForm::F2_level2, LevelForm::F4_level2, LevelForm::Delta4_level2, LevelForm::F2_level4,
            LevelForm::Delta4_level4};
}

QSeries level_form_eisenstein(LevelForm f, long n_max) {
    auto E = [&](unsigned k, unsigned d) { return v_operator(eisenstein(k, n_max / d + 1), d).truncate(n_max); };
    switch (f) {
        case LevelForm::F2_level2: return E(2, 2) * Rational(2) - E(2, 1);
        case LevelForm::F4_level2: return (E(4, 2) * Rational(16) - E(4, 1)) * make_rational(1, 15);
        case LevelForm::Delta4_level2: return (E(4, 1) - E(4, 2)) * make_rational(1, 240);
        case LevelForm::F2_level4:
            return (E(2, 1) - E(2, 2) * Rational(3) + E(2, 4) * Rational(2)) * make_rational(-1, 24);
        case LevelForm::Delta4_level4:
            return (E(4, 1) - E(4, 2) * Rational(17) + E(4, 4) * Rational(16)) * make_rational(1, 240);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown level form");
}

QSeries level_form_eta(LevelForm f, long n_max) {
    switch (f) {
        case LevelForm::F4_level2: return eta_product({{1, 16}, {2, -8}}, n_max);
        case LevelForm::Delta4_level2: return eta_product({{1, -8}, {2, 16}}, n_max);
        case LevelForm::F2_level2: {
            // F2^2 lies in the span of the two weight-4 quotients
            QSeries sq = eta_product({{1, 16}, {2, -8}}, n_max) + eta_product({{1, -8}, {2, 16}}, n_max) * Rational(64);
            return sq.sqrt();
        }
        case LevelForm::F2_level4: return eta_product({{2, -4}, {4, 8}}, n_max);
        case LevelForm::Delta4_level4: return eta_product({{1, 8}, {2, -8}, {4, 8}}, n_max);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown level form");
}

WeightPolynomial gegenbauer(unsigned n, unsigned r) {
    std::vector<Rational> c(n + 1);
    Rational half = make_rational(1, 2);
    for (unsigned l = 0; l <= n; ++l) {
        Rational t = binomial(Rational(n) - half, l) *
                     binomial(Rational(2 * n + r) - Rational(l) - make_rational(3, 2), n - l);
        c[n - l] = (l % 2) ? Rational(-t) : t;
    }
    return WeightPolynomial(std::move(c));
}

QSeries bracket_theta(unsigned n, unsigned r, unsigned N, long n_max, SigmaKind kind) {
    if (r < 1 || N < 1) throw Error(ErrorKind::InvalidArgument, "bracket_theta: need r >= 1 and N >= 1");
    WeightPolynomial P = gegenbauer(n, r);
    std::vector<Rational> c(static_cast<std::size_t>(std::max(0L, n_max) + 1));
    for (long m = 1; m <= n_max; ++m) c[static_cast<std::size_t>(m)] = s_sum(kind, r - 1, static_cast<std::uint64_t>(m), N, &P);
    if (n == 0) {
        if (kind == SigmaKind::plain) {
            if (r % 2 == 0) c[0] = -bernoulli_number(r) / (2 * r);
        } else if (kind == SigmaKind::type1 && r % 2 == 1) {
            c[0] = l_via_bernoulli(DirichletCharacter::from_discriminant(-4), r).to_rational() / 2;
        }
    }
    return QSeries(0, std::move(c), n_max);
}

QSeries rankin_cohen(const QSeries& f, const Rational& kf, const QSeries& g, const Rational& kg, unsigned n) {
    std::vector<QSeries> df{f}, dg{g};
    for (unsigned i = 0; i < n; ++i) {
        df.push_back(derivative_D(df.back()));
        dg.push_back(derivative_D(dg.back()));
    }
    long nm = std::min(f.order() + g.n_max(), g.order() + f.n_max());
    QSeries out(0, {}, nm);
    for (unsigned l = 0; l <= n; ++l) {
        Rational c = binomial(kf + n - 1, n - l) * binomial(kg + n - 1, l);
        if (l % 2) c = -c;
        if (c == 0) continue;
        out += (df[l] * dg[n - l]) * c;
    }
    return out;
}

std::vector<QSeries> kohnen_basis(unsigned k, long n_max) {
    if (k < 2 || k % 2) throw Error(ErrorKind::InvalidArgument, "kohnen_basis: k must be even >= 2");
    QSeries th = theta(n_max);
    auto E4tau = [&](unsigned w) { return v_operator(eisenstein(w, n_max / 4 + 1), 4).truncate(n_max); };
    if (k == 2) return {th * E4tau(2) - derivative_D(th) * Rational(6)};
    std::vector<QSeries> out;
    for (unsigned j = 0; j <= k / 6; ++j)
        out.push_back(rankin_cohen(th, make_rational(1, 2), E4tau(k - 2 * j), Rational(k - 2 * j), j));
    return out;
}

unsigned kohnen_plus_dimension(unsigned k) {
    // w = k + 1/2; 6 | (w - 3/2) exactly when k = 1 mod 6
    return (k % 6 == 1) ? k / 6 : 1 + k / 6;
}

unsigned dim_modular_forms(unsigned weight, unsigned level) {
    if (weight % 2) return 0;
    switch (level) {
        case 1:
            if (weight == 0) return 1;
            return weight / 12 + (weight % 12 == 2 ? 0 : 1);
        case 2: return weight / 4 + 1;
        case 4: return weight / 2 + 1;
    }
    throw Error(ErrorKind::InvalidArgument, "dimension formula only for levels 1, 2, 4");
}

const Rational& SiegelCoefficients::at(long i) const {
    if (i > 0 || -i > static_cast<long>(r)) throw Error(ErrorKind::InvalidArgument, "Siegel index out of range");
    return c[static_cast<std::size_t>(-i)];
}

SiegelCoefficients siegel_coefficients(unsigned weight, unsigned level) {
    if (weight % 2 || (level != 1 && level != 2))
        throw Error(ErrorKind::InvalidArgument, "Siegel coefficients need even weight and level 1 or 2");
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, SiegelCoefficients> memo;
    {
        std::lock_guard lock(mu);
        auto it = memo.find({weight, level});
        if (it != memo.end()) return it->second;
    }
    SiegelCoefficients s;
    s.weight = weight;
    s.level = level;
    QSeries series;
    if (level == 1) {
        s.r = dim_modular_forms(weight, 1);
        long nm = s.r + 2;
        QSeries delta = eta_product({{1, 24}}, nm + static_cast<long>(s.r) + 2);
        series = delta.inverse().pow(s.r) * eisenstein(12 * s.r - weight + 2, nm);
    } else {
        s.r = weight / 4 + 1;
        long nm = s.r + 2;
        long big = nm + 2 * static_cast<long>(s.r) + 2;
        QSeries E = level_form_eisenstein(LevelForm::F4_level2, big);
        if (weight % 4 == 0) E = level_form_eisenstein(LevelForm::F2_level2, big) * E;
        series = level_form_eisenstein(LevelForm::Delta4_level2, big).inverse().pow(s.r) * E;
    }
    for (long i = 0; i <= static_cast<long>(s.r); ++i) s.c.push_back(series.coefficient(-i));
    std::lock_guard lock(mu);
    memo.emplace(std::make_pair(weight, level), s);
    return s;
}

Rational siegel_pairing(const SiegelCoefficients& s, const QSeries& f) {
    Rational t = 0;
    for (long n = 0; n <= static_cast<long>(s.r); ++n) t += f.coefficient(n) * s.c[static_cast<std::size_t>(n)];
    return t;
}

std::vector<Rational> solve_in_basis(const QSeries& target, const std::vector<QSeries>& basis,
                                     const std::vector<long>& rows) {
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (long n : rows) {
        std::vector<Rational> row;
        for (const auto& f : basis) row.push_back(f.coefficient(n));
        A.push_back(std::move(row));
        b.push_back(target.coefficient(n));
    }
    if (A.empty() && !basis.empty()) throw Error(ErrorKind::RankDeficient, "no rows to read coordinates from");
    return solve_rational(std::move(A), std::move(b), true).x;
}

}  // namespace lneg
