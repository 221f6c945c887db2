#include "lneg/lvalue_eisenstein.hpp"

#include "lneg/bernoulli.hpp"
#include "lneg/errors.hpp"
#include "lneg/functional_equation.hpp"
#include "lneg/linear_algebra.hpp"
#include "lneg/modular_forms.hpp"
#include "lneg/number_theory.hpp"

#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <fcntl.h>
#include <fstream>
#include <numeric>
#include <sstream>

namespace lneg {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::uint64_t uabs(std::int64_t x) { return x < 0 ? static_cast<std::uint64_t>(-x) : static_cast<std::uint64_t>(x); }

void require_fundamental(std::int64_t D) {
    if (!is_fundamental_discriminant(D))
        throw Error(ErrorKind::NotFundamental, std::to_string(D) + " is not a fundamental discriminant");
}

const WeightPolynomial& gegenbauer_cached(unsigned n, unsigned r) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<WeightPolynomial>> memo;
    std::lock_guard lock(mu);
    auto& slot = memo[{n, r}];
    if (!slot) slot = std::make_unique<WeightPolynomial>(gegenbauer(n, r));
    return *slot;
}

std::uint64_t checked_square_times(std::uint64_t m, std::uint64_t D) {
    unsigned __int128 v = static_cast<unsigned __int128>(m) * m * D;
    if (v >> 63) throw Error(ErrorKind::InvalidArgument, "argument m^2 |D| exceeds 63 bits");
    return static_cast<std::uint64_t>(v);
}

}  // namespace

const char* coefficient_kind_name(CoefficientKind kind) {
    switch (kind) {
        case CoefficientKind::siegel_even: return "siegel_even";
        case CoefficientKind::siegel_odd_level2: return "siegel_odd_level2";
        case CoefficientKind::half_even: return "half_even";
        case CoefficientKind::half_odd: return "half_odd";
    }
    return "?";
}

CoefficientKind parse_coefficient_kind(const std::string& name) {
    for (auto k : {CoefficientKind::siegel_even, CoefficientKind::siegel_odd_level2, CoefficientKind::half_even,
                   CoefficientKind::half_odd})
        if (name == coefficient_kind_name(k)) return k;
    throw Error(ErrorKind::InvalidArgument, "unknown coefficient kind '" + name + "'");
}

Rational reference_l_value(std::int64_t D, unsigned k) {
    auto chi = DirichletCharacter::from_discriminant(D);
    if (k >= 2 && static_cast<double>(k) * static_cast<double>(uabs(D)) > 1e5)
        return l_via_functional_equation(chi, k).to_rational();
    return l_via_bernoulli(chi, k).to_rational();
}

Cyclotomic hecke_fourier_coefficient(unsigned k, const DirichletCharacter& psi, std::uint64_t N, std::int64_t D,
                                     std::uint64_t n) {
    if (!psi.is_real() || !psi.is_primitive())
        throw Error(ErrorKind::InvalidArgument, "hecke_fourier_coefficient: psi must be real and primitive");
    if (D <= 0) throw Error(ErrorKind::InvalidArgument, "hecke_fourier_coefficient: D must be positive");
    require_fundamental(D);
    if (N == 0 || !is_squarefree_u64(N)) throw Error(ErrorKind::InvalidArgument, "N must be squarefree");
    std::uint64_t F = psi.modulus();
    Integer g = gcd(to_integer_u(F), to_integer_u(N) * to_integer(D));
    if (g != 1) throw Error(ErrorKind::GcdViolation, "gcd(F_psi, N D) = " + to_string(g));
    if (psi.is_even() != (k % 2 == 0)) throw Error(ErrorKind::InvalidArgument, "psi(-1) must equal (-1)^k");
    std::int64_t Dpsi = psi.quadratic_discriminant().value_or(1);
    std::int64_t Dprod = Dpsi * D;
    if (n == 0) {
        Rational euler = 1;
        for (const auto& f : factorize_u64(N)) {
            Integer pk = ipow(to_integer_u(f.prime), k - 1);
            euler *= Rational(1 - kronecker(Dprod, static_cast<std::int64_t>(f.prime)) * pk);
        }
        Rational a = l_via_bernoulli(psi, k).to_rational();
        Rational b = l_via_bernoulli(DirichletCharacter::from_discriminant(Dprod), k).to_rational();
        return Cyclotomic(euler * a * b / 4);
    }
    SigmaKind kind = SigmaKind::plain;
    bool direct = true;
    if (Dpsi == -4) kind = SigmaKind::type1;
    else if (Dpsi != 1) direct = false;
    Rational total = 0;
    for (std::uint64_t d = 1; d <= n; ++d) {
        if (n % d || std::gcd(d, N) != 1) continue;
        int c = kronecker(Dprod, static_cast<std::int64_t>(d));
        if (c == 0) continue;
        std::uint64_t m = checked_square_times(n / d, static_cast<std::uint64_t>(D));
        Rational inner;
        if (direct) {
            inner = s_sum(kind, k - 1, m, 4 * N);
        } else {
            Integer acc = 0;
            auto chi_psi = [&](const Integer& x) { return kronecker(to_integer(Dpsi), x); };
            for (std::uint64_t s = 0; s * s < m; ++s) {
                if ((m - s * s) % (4 * N)) continue;
                Integer v = divisor_sum_psi(chi_psi, k - 1, to_integer_u((m - s * s) / (4 * N)));
                acc += (s == 0) ? v : 2 * v;
            }
            inner = acc;
        }
        Integer dk = ipow(to_integer_u(d), k - 1);
        total += inner * Rational(c * dk);
    }
    return Cyclotomic(total);
}

Rational l_hecke_even(std::int64_t D, unsigned k) {
    if (k < 2 || k % 2) throw Error(ErrorKind::InvalidArgument, "l_hecke_even needs k even >= 2");
    if (D <= 1) throw Error(ErrorKind::InvalidArgument, "l_hecke_even needs D > 1");
    require_fundamental(D);
    auto s = siegel_coefficients(2 * k, 1);
    long r = s.r;
    Rational total = 0;
    for (long m = 1; m <= r; ++m) {
        Rational inner = 0;
        for (long d = 1; d <= r / m; ++d) {
            int c = kronecker(D, d);
            if (c == 0) continue;
            inner += Rational(c * ipow(Integer(static_cast<unsigned long>(d)), k - 1)) * s.at(-d * m);
        }
        if (inner == 0) continue;
        total += s_sum(SigmaKind::plain, k - 1, checked_square_times(m, static_cast<std::uint64_t>(D)), 4) * inner;
    }
    return Rational(4 * k) * total / (s.at(0) * bernoulli_number(k));
}

Rational l_hecke_odd(std::int64_t D, unsigned k) {
    if (k < 3 || k % 2 == 0) throw Error(ErrorKind::InvalidArgument, "l_hecke_odd needs k odd >= 3");
    if (D >= -4) throw Error(ErrorKind::InvalidArgument, "l_hecke_odd needs D < -4");
    require_fundamental(D);
    std::int64_t delta = (mod(D, 4) == 0) ? 4 : 1;
    std::uint64_t base = uabs(D) / static_cast<std::uint64_t>(delta);
    std::int64_t kd = 4 * D / delta;
    auto s = siegel_coefficients(2 * k, 2);
    long r = s.r;
    Rational total = 0;
    for (long m = 1; m <= r; ++m) {
        Rational inner = 0;
        for (long d = 1; d <= r / m; ++d) {
            int c = kronecker(kd, d);
            if (c == 0) continue;
            inner += Rational(c * ipow(Integer(static_cast<unsigned long>(d)), k - 1)) * s.at(-d * m);
        }
        if (inner == 0) continue;
        total += s_sum(SigmaKind::type1, k - 1, checked_square_times(m, base), 1) * inner;
    }
    Rational A = s.at(0) * Rational(ipow(Integer(2), k - 1) * kronecker(D, 2) - 1) * Rational(euler_number(k - 1));
    return 8 * total / A;
}

unsigned half_even_m(unsigned N) {
    switch (N) {
        case 4: return 6;
        case 8: return 4;
        case 12: return 3;
        case 16: return 4;
    }
    throw Error(ErrorKind::InvalidArgument, "even level must be one of 4, 8, 12, 16");
}

unsigned half_even_length(unsigned k, unsigned N) { return k / half_even_m(N) + 1; }

int half_even_factor(std::int64_t D, unsigned N) {
    half_even_m(N);
    if (N == 16 && mod(D, 8) != 1) return 0;
    return 1 + kronecker(D, static_cast<std::int64_t>(N / 4));
}

unsigned select_level_even(std::int64_t D) {
    if (D <= 0) throw Error(ErrorKind::InvalidArgument, "select_level_even needs D > 0");
    require_fundamental(D);
    if (D % 3 == 0) return 12;
    if (D % 8 == 1) return 16;
    if (D % 4 == 0) return 8;
    if (D % 3 == 1) return 12;
    return 4;
}

std::vector<Rational> half_even_row(std::int64_t D, unsigned k, unsigned N, unsigned len, unsigned threads) {
    std::vector<SumChannel> ch;
    for (unsigned j = 0; j < len; ++j) ch.push_back({SigmaKind::plain, k - 2 * j - 1, &gegenbauer_cached(j, k - 2 * j)});
    return s_sum_multi(static_cast<std::uint64_t>(D), N, ch, threads);
}

bool half_odd_admissible(unsigned N, int e) {
    if (e < -1 || e > 1) return false;
    switch (N) {
        case 1: case 2: case 3: case 5: return true;
        case 6: return e != -1;
        case 7: return e == -1;
    }
    return false;
}

unsigned half_odd_length(unsigned k, unsigned N, int e) {
    if (!half_odd_admissible(N, e))
        throw Error(ErrorKind::InadmissiblePair,
                    "(N, e) = (" + std::to_string(N) + ", " + std::to_string(e) + ") is not admissible");
    long K = k;
    long b = 0;  // floor of the listed bound
    auto fl = [](long a, long d) { return a < 0 ? -((-a + d - 1) / d) : a / d; };
    switch (N) {
        case 1: b = e == -1 ? fl(K - 1, 4) : e == 0 ? fl(K - 1, 3) : fl(K - 3, 4); break;
        case 2:
            // for e = +-1 the listed bound only counts j1; each j1 carries both twists
            if (e == 0) b = fl(K - 1, 2);
            else b = 2 * (e == -1 ? fl(K - 1, 4) : fl(K - 3, 4)) + 1;
            break;
        case 3: b = e == 0 ? fl(2 * K - 1, 3) : fl(K - 1, 2); break;
        case 5: b = e == -1 ? fl(3 * K - 2, 4) : e == 0 ? K - 1 : fl(3 * K - 5, 4); break;
        case 6: b = K - 1; break;
        case 7: b = K - 1; break;
    }
    b = std::min(b, K - 1);
    return static_cast<unsigned>(b + 1);
}

int half_odd_factor(std::int64_t D, unsigned N) {
    std::int64_t N2 = (N % 2 == 0) ? N / 2 : N;
    return 1 + kronecker(static_cast<std::int64_t>(uabs(D)), N2);
}

unsigned select_level_odd(std::int64_t D) {
    if (D >= 0) throw Error(ErrorKind::InvalidArgument, "select_level_odd needs D < 0");
    require_fundamental(D);
    auto m = [&](std::int64_t q) { return mod(D, q); };
    if (m(4) == 0) {
        if (m(3) == 0) return 6;
        if (m(5) == 0) return 5;
        if (m(3) == 2) return 6;
        if (m(5) == 1 || m(5) == 4) return 5;
        return 2;
    }
    if (m(7) == 0 && m(8) == 5) return 7;
    if (m(3) == 0 && m(8) == 1) return 6;
    if (m(5) == 0) return 5;
    if (m(8) == 5 && (m(7) == 3 || m(7) == 5 || m(7) == 6)) return 7;
    if (m(3) == 2 && m(8) == 1) return 6;
    if (m(3) == 0) return 3;
    if (m(5) == 1 || m(5) == 4) return 5;
    return 2;
}

std::vector<Rational> half_odd_row(std::int64_t D, unsigned k, unsigned N, unsigned len, unsigned threads) {
    std::uint64_t delta = (mod(D, 4) == 0) ? 4 : 1;
    std::vector<SumChannel> ch;
    for (unsigned j = 0; j < len; ++j) {
        unsigned j1 = j / 2;
        SigmaKind kind = (j % 2) ? SigmaKind::type2 : SigmaKind::type1;
        ch.push_back({kind, k - 2 * j1 - 1, &gegenbauer_cached(j1, k - 2 * j1)});
    }
    return s_sum_multi(uabs(D) / delta, N, ch, threads);
}

std::vector<std::int64_t> admissible_discriminants(CoefficientKind kind, unsigned N, int e, std::size_t skip,
                                                   std::size_t count) {
    std::vector<std::int64_t> out;
    std::size_t seen = 0;
    bool even = kind == CoefficientKind::half_even;
    for (std::int64_t a = even ? 5 : 3; out.size() < count; ++a) {
        std::int64_t D = even ? a : -a;
        if (!is_fundamental_discriminant(D)) continue;
        if (even) {
            if (half_even_factor(D, N) == 0) continue;
        } else {
            if (D == -4 || kronecker(D, 2) != e || half_odd_factor(D, N) == 0) continue;
        }
        if (seen++ < skip) continue;
        out.push_back(D);
    }
    return out;
}

namespace {

std::vector<Rational> row_for(const CoefficientSet& set, std::int64_t D, unsigned len, unsigned threads) {
    if (set.kind == CoefficientKind::half_even) return half_even_row(D, set.k, set.N, len, threads);
    return half_odd_row(D, set.k, set.N, len, threads);
}

int factor_for(const CoefficientSet& set, std::int64_t D) {
    return set.kind == CoefficientKind::half_even ? half_even_factor(D, set.N) : half_odd_factor(D, set.N);
}

CoefficientSet solve_set(CoefficientSet set, unsigned len, const SolveOptions& opt) {
    std::size_t want = len + opt.extra_rows;
    std::size_t cap = 4 * static_cast<std::size_t>(len) + 40;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    std::vector<std::int64_t> used;
    LinearSolution sol;
    while (true) {
        auto Ds = admissible_discriminants(set.kind, set.N, set.e, used.size(), want - used.size());
        for (auto D : Ds) {
            A.push_back(row_for(set, D, len, opt.threads));
            b.push_back(Rational(factor_for(set, D)) * reference_l_value(D, set.k));
            used.push_back(D);
        }
        try {
            sol = solve_rational(A, b, false);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::Inconsistent) throw;
            throw Error(ErrorKind::Inconsistent, std::string(coefficient_kind_name(set.kind)) + " k=" +
                                                    std::to_string(set.k) + " N=" + std::to_string(set.N) +
                                                    " e=" + std::to_string(set.e) + ": no solution on " +
                                                    std::to_string(used.size()) + " fundamental rows");
        }
        if (sol.rank == len || want >= cap) break;
        want = std::min(cap, 2 * want);
    }
    set.coefficients = sol.x;
    if (set.kind == CoefficientKind::half_odd)
        while (set.coefficients.size() > 1 && set.coefficients.back() == 0) set.coefficients.pop_back();
    auto held = admissible_discriminants(set.kind, set.N, set.e, used.size(), opt.validation);
    auto bad = validate_coefficients(set, held);
    if (!bad.empty())
        throw Error(ErrorKind::Inconsistent, std::string(coefficient_kind_name(set.kind)) + " k=" +
                                                std::to_string(set.k) + " N=" + std::to_string(set.N) +
                                                " e=" + std::to_string(set.e) + ": identity fails at D=" +
                                                std::to_string(bad.front()) + " (" + std::to_string(bad.size()) +
                                                " of " + std::to_string(held.size()) + " held-out)");
    set.validation_count = static_cast<unsigned>(held.size());
    return set;
}

}  // namespace

std::vector<std::int64_t> validate_coefficients(const CoefficientSet& set, const std::vector<std::int64_t>& Ds) {
    std::vector<std::int64_t> bad;
    unsigned len = static_cast<unsigned>(set.coefficients.size());
    for (auto D : Ds) {
        auto row = row_for(set, D, len, 1);
        Rational lhs = 0;
        for (unsigned j = 0; j < len; ++j) lhs += set.coefficients[j] * row[j];
        if (lhs != Rational(factor_for(set, D)) * reference_l_value(D, set.k)) bad.push_back(D);
    }
    return bad;
}

CoefficientSet half_even_coefficients(unsigned k, unsigned N, const SolveOptions& opt) {
    if (k < 2 || k % 2) throw Error(ErrorKind::InvalidArgument, "half_even needs k even >= 2");
    CoefficientSet set;
    set.kind = CoefficientKind::half_even;
    set.k = k;
    set.N = N;
    return solve_set(set, half_even_length(k, N), opt);
}

CoefficientSet half_odd_coefficients(unsigned k, unsigned N, int e, const SolveOptions& opt) {
    if (k < 3 || k % 2 == 0) throw Error(ErrorKind::InvalidArgument, "half_odd needs k odd >= 3");
    unsigned len = half_odd_length(k, N, e);
    CoefficientSet set;
    set.kind = CoefficientKind::half_odd;
    set.k = k;
    set.N = N;
    set.e = e;
    return solve_set(set, len, opt);
}

// cache

namespace {

std::string sha256_hex(const std::string& text) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr))
        throw Error(ErrorKind::CacheCorrupt, "sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string records_text(const CoefficientSet& set) {
    std::ostringstream out;
    for (std::size_t j = 0; j < set.coefficients.size(); ++j)
        out << coefficient_kind_name(set.kind) << '\t' << set.k << '\t' << set.N << '\t' << set.e << '\t' << j
            << '\t' << to_string(set.coefficients[j].get_num()) << '\t' << to_string(set.coefficients[j].get_den())
            << '\t' << set.validation_count << '\n';
    return out.str();
}

class FileLock {
public:
    FileLock(const std::filesystem::path& p, int op) {
        fd_ = ::open(p.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ >= 0) ::flock(fd_, op);
    }
    ~FileLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

}  // namespace

std::string serialize_coefficient_set(const CoefficientSet& set) {
    if (set.coefficients.empty()) throw Error(ErrorKind::InvalidArgument, "cannot serialize an empty set");
    std::string body = records_text(set);
    return body + "sha256\t" + sha256_hex(body) + "\n";
}

CoefficientSet parse_coefficient_set(const std::string& text) {
    std::istringstream in(text);
    std::string line, body, digest;
    std::vector<std::vector<std::string>> recs;
    while (std::getline(in, line)) {
        if (line.rfind("sha256\t", 0) == 0) {
            digest = line.substr(7);
            break;
        }
        body += line + "\n";
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, '\t')) f.push_back(cell);
        if (f.size() != 8) throw Error(ErrorKind::CacheCorrupt, "record with " + std::to_string(f.size()) + " fields");
        recs.push_back(std::move(f));
    }
    if (digest.empty()) throw Error(ErrorKind::CacheCorrupt, "missing checksum line");
    if (digest != sha256_hex(body)) throw Error(ErrorKind::CacheCorrupt, "checksum mismatch");
    if (recs.empty()) throw Error(ErrorKind::CacheCorrupt, "no records");
    CoefficientSet set;
    try {
        set.kind = parse_coefficient_kind(recs[0][0]);
        set.k = static_cast<unsigned>(std::stoul(recs[0][1]));
        set.N = static_cast<unsigned>(std::stoul(recs[0][2]));
        set.e = std::stoi(recs[0][3]);
        set.validation_count = static_cast<unsigned>(std::stoul(recs[0][7]));
        for (std::size_t j = 0; j < recs.size(); ++j) {
            const auto& f = recs[j];
            if (f[0] != recs[0][0] || f[1] != recs[0][1] || f[2] != recs[0][2] || f[3] != recs[0][3] ||
                std::stoul(f[4]) != j)
                throw Error(ErrorKind::CacheCorrupt, "inconsistent record " + std::to_string(j));
            set.coefficients.push_back(make_rational(Integer(f[5]), Integer(f[6])));
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& ex) {
        throw Error(ErrorKind::CacheCorrupt, std::string("bad field: ") + ex.what());
    }
    return set;
}

CoefficientCache::CoefficientCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path CoefficientCache::path_for(CoefficientKind kind, unsigned k, unsigned N, int e) const {
    return dir_ / (std::string(coefficient_kind_name(kind)) + "_k" + std::to_string(k) + "_N" + std::to_string(N) +
                   "_e" + std::to_string(e) + ".tsv");
}

std::optional<CoefficientSet> CoefficientCache::load(CoefficientKind kind, unsigned k, unsigned N, int e) const {
    auto p = path_for(kind, k, N, e);
    if (!std::filesystem::exists(p)) return std::nullopt;
    std::string text;
    {
        FileLock lock(dir_ / ".lock", LOCK_SH);
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    CoefficientSet set = parse_coefficient_set(text);
    if (set.kind != kind || set.k != k || set.N != N || set.e != e)
        throw Error(ErrorKind::CacheCorrupt, p.string() + " holds a different set");
    return set;
}

void CoefficientCache::store(const CoefficientSet& set) const {
    if (set.validation_count < 10)
        throw Error(ErrorKind::InvalidArgument, "refusing to persist a set validated on fewer than 10 discriminants");
    std::filesystem::create_directories(dir_);
    auto p = path_for(set.kind, set.k, set.N, set.e);
    auto tmp = p;
    tmp += ".tmp." + std::to_string(::getpid());
    std::string text = serialize_coefficient_set(set);
    FileLock lock(dir_ / ".lock", LOCK_EX);
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << text;
        if (!out) throw Error(ErrorKind::CacheCorrupt, "cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, p);
}

CoefficientStore& CoefficientStore::global() {
    static CoefficientStore store;
    return store;
}

void CoefficientStore::set_cache_directory(std::optional<std::filesystem::path> dir) {
    std::lock_guard lock(mu_);
    if (dir) cache_.emplace(*dir);
    else cache_.reset();
}

void CoefficientStore::set_solve_options(const SolveOptions& opt) {
    std::lock_guard lock(mu_);
    opt_ = opt;
}

void CoefficientStore::clear_memory() {
    std::lock_guard lock(mu_);
    memo_.clear();
}

CoefficientSet CoefficientStore::get(CoefficientKind kind, unsigned k, unsigned N, int e, bool* hit) {
    auto key = std::make_tuple(static_cast<int>(kind), k, N, e);
    std::shared_ptr<std::mutex> gate;
    std::optional<CoefficientCache> cache;
    SolveOptions opt;
    {
        std::lock_guard lock(mu_);
        if (auto it = memo_.find(key); it != memo_.end()) {
            if (hit) *hit = true;
            return *it->second;
        }
        auto& g = inflight_[key];
        if (!g) g = std::make_shared<std::mutex>();
        gate = g;
        cache = cache_;
        opt = opt_;
    }
    std::lock_guard solving(*gate);
    {
        std::lock_guard lock(mu_);
        if (auto it = memo_.find(key); it != memo_.end()) {
            if (hit) *hit = true;
            return *it->second;
        }
    }
    std::optional<CoefficientSet> set;
    if (cache) set = cache->load(kind, k, N, e);
    bool from_disk = set.has_value();
    if (!set) {
        if (kind == CoefficientKind::half_even) set = half_even_coefficients(k, N, opt);
        else if (kind == CoefficientKind::half_odd) set = half_odd_coefficients(k, N, e, opt);
        else throw Error(ErrorKind::InvalidArgument, "Siegel sets are computed directly, not stored");
        if (cache && set->validation_count >= 10) cache->store(*set);
    }
    if (hit) *hit = from_disk;
    std::lock_guard lock(mu_);
    memo_[key] = std::make_shared<CoefficientSet>(*set);
    return *set;
}

Rational evaluate_half_even(const CoefficientSet& set, std::int64_t D, unsigned threads) {
    int f = half_even_factor(D, set.N);
    if (f == 0) throw Error(ErrorKind::DeadLevel, "N=" + std::to_string(set.N) + " unusable for D=" + std::to_string(D));
    auto row = half_even_row(D, set.k, set.N, static_cast<unsigned>(set.coefficients.size()), threads);
    Rational t = 0;
    for (std::size_t j = 0; j < row.size(); ++j) t += set.coefficients[j] * row[j];
    return t / f;
}

Rational evaluate_half_odd(const CoefficientSet& set, std::int64_t D, unsigned threads) {
    if (kronecker(D, 2) != set.e) throw Error(ErrorKind::InvalidArgument, "coefficient set has the wrong 2-class");
    int f = half_odd_factor(D, set.N);
    if (f == 0) throw Error(ErrorKind::DeadLevel, "N=" + std::to_string(set.N) + " unusable for D=" + std::to_string(D));
    auto row = half_odd_row(D, set.k, set.N, static_cast<unsigned>(set.coefficients.size()), threads);
    Rational t = 0;
    for (std::size_t j = 0; j < row.size(); ++j) t += set.coefficients[j] * row[j];
    return t / f;
}

Rational l_half_even(std::int64_t D, unsigned k, std::optional<unsigned> N, const EvalOptions& opt) {
    if (k < 2 || k % 2) throw Error(ErrorKind::InvalidArgument, "l_half_even needs k even >= 2");
    if (D <= 1) throw Error(ErrorKind::InvalidArgument, "l_half_even needs D > 1");
    require_fundamental(D);
    unsigned level = N ? *N : (static_cast<double>(D) > opt.level_threshold ? select_level_even(D) : 4);
    if (half_even_factor(D, level) == 0)
        throw Error(ErrorKind::DeadLevel, "1 + (D/(N/4)) vanishes for D=" + std::to_string(D) + ", N=" + std::to_string(level));
    auto set = CoefficientStore::global().get(CoefficientKind::half_even, k, level);
    return evaluate_half_even(set, D, opt.threads);
}

Rational l_half_odd(std::int64_t D, unsigned k, std::optional<unsigned> N, const EvalOptions& opt) {
    if (k < 3 || k % 2 == 0) throw Error(ErrorKind::InvalidArgument, "l_half_odd needs k odd >= 3");
    if (D >= 0 || D == -4) throw Error(ErrorKind::InvalidArgument, "l_half_odd needs D < 0, D != -4");
    require_fundamental(D);
    int e = kronecker(D, 2);
    unsigned level = N ? *N : (static_cast<double>(uabs(D)) > opt.level_threshold ? select_level_odd(D) : 1);
    if (!half_odd_admissible(level, e))
        throw Error(ErrorKind::InadmissiblePair, "N=" + std::to_string(level) + " with e=" + std::to_string(e));
    if (half_odd_factor(D, level) == 0)
        throw Error(ErrorKind::DeadLevel, "1 + (|D|/N_2) vanishes for D=" + std::to_string(D) + ", N=" + std::to_string(level));
    auto set = CoefficientStore::global().get(CoefficientKind::half_odd, k, level, e);
    return evaluate_half_odd(set, D, opt.threads);
}

Rational weight_one_ratio(std::int64_t D, unsigned N, unsigned delta) {
    int e = kronecker(D, 2);
    int c3 = kronecker(D, 3), c5 = kronecker(D, 5), c7 = kronecker(D, 7);
    auto unlisted = [&] {
        return Error(ErrorKind::NoUsableRatio, "no table row for N=" + std::to_string(N) + ", delta=" +
                                                   std::to_string(delta) + ", D=" + std::to_string(D));
    };
    if (delta == 1) {
        switch (N) {
            case 1: case 2: return Rational(3 * (1 - e));
            case 3: return make_rational((1 - c3) * (5 - e), 2);
            case 5: return make_rational((1 + c5) * (1 - e), 2);
            case 6: return make_rational((1 - c3) * (1 + e), 2);
            case 7: if (e == -1) return Rational(1 - c7); break;
        }
        throw unlisted();
    }
    if (delta != 4 || mod(D, 4) != 0) throw Error(ErrorKind::InvalidArgument, "delta = 4 needs 4 | D");
    switch (N) {
        case 1: return Rational(3);
        case 2: return Rational(1);
        case 3: case 6: return make_rational(1 - c3, 2);
        case 5: return make_rational(1 + c5, 2);
    }
    throw unlisted();
}

WeightOneResult l_weight_one(std::int64_t D, std::optional<unsigned> N) {
    if (D >= -4) throw Error(ErrorKind::InvalidArgument, "l_weight_one needs D < -4");
    require_fundamental(D);
    WeightOneResult res;
    res.delta = (mod(D, 4) == 0) ? 4 : 1;
    std::uint64_t m = uabs(D) / res.delta;
    auto use = [&](unsigned level) -> bool {
        Rational ratio;
        try {
            ratio = weight_one_ratio(D, level, res.delta);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::NoUsableRatio) throw;
            return false;
        }
        if (ratio == 0) return false;
        Rational h = s_sum(SigmaKind::type1, 0, m, level) / ratio;
        if (h.get_den() != 1 || h <= 0) throw Error(ErrorKind::Mismatch, "table ratio gives non-integral h for D=" + std::to_string(D));
        res.h = to_u64(h.get_num());
        res.N = level;
        return true;
    };
    if (N) {
        if (!use(*N))
            throw Error(ErrorKind::NoUsableRatio, "ratio vanishes for N=" + std::to_string(*N) + ", D=" + std::to_string(D));
        return res;
    }
    for (unsigned level : {2u, 1u, 3u, 5u, 6u, 7u})
        if (use(level)) return res;
    // table gap, see the class-number oracle
    res.h = class_number(D);
    res.N = 0;
    return res;
}

Rational weight_one_coefficient(unsigned N, int e, unsigned delta) {
    auto inv = [&](int num, int den) {
        if (den == 0) throw Error(ErrorKind::NoUsableRatio, "coefficient undefined for this (N, e)");
        return make_rational(num, den);
    };
    if (delta == 1) {
        switch (N) {
            case 1: case 2: return inv(2, 3 * (1 - e));
            case 3: return inv(2, 5 - e);
            case 5: return inv(2, 1 - e);
            case 6: return inv(2, 1 + e);
            case 7: return Rational(1);
        }
    } else if (delta == 4) {
        switch (N) {
            case 1: return make_rational(2, 3);
            case 2: case 3: case 5: case 6: return Rational(2);
        }
    }
    throw Error(ErrorKind::NoUsableRatio, "no listed coefficient for N=" + std::to_string(N));
}

}  // namespace lneg
