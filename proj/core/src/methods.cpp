#include "lneg/methods.hpp"

#include "lneg/bernoulli.hpp"
#include "lneg/errors.hpp"
#include "lneg/functional_equation.hpp"
#include "lneg/lvalue_eisenstein.hpp"

#include <chrono>
#include <cmath>

namespace lneg {

const char* method_name(Method m) {
    switch (m) {
        case Method::bernoulli: return "bernoulli";
        case Method::functional_equation: return "functional_equation";
        case Method::hecke_eisenstein: return "hecke_eisenstein";
        case Method::half_integral: return "half_integral";
        case Method::automatic: return "auto";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    for (auto m : {Method::bernoulli, Method::functional_equation, Method::hecke_eisenstein, Method::half_integral,
                   Method::automatic})
        if (name == method_name(m)) return m;
    if (name == "fe") return Method::functional_equation;
    if (name == "hecke") return Method::hecke_eisenstein;
    if (name == "half") return Method::half_integral;
    throw Error(ErrorKind::InvalidArgument, "unknown method '" + name + "'");
}

std::vector<Method> concrete_methods() {
    return {Method::bernoulli, Method::functional_equation, Method::hecke_eisenstein, Method::half_integral};
}

bool parity_zero(const DirichletCharacter& chi, unsigned k) {
    if (chi.modulus() == 1 && k == 1) return false;
    return chi.is_even() == (k % 2 == 1);
}

namespace {

std::optional<std::int64_t> quadratic_disc(const DirichletCharacter& chi) {
    auto prim = chi.primitive();
    return prim.quadratic_discriminant();
}

}  // namespace

std::optional<std::string> method_inapplicable(Method m, const DirichletCharacter& chi, unsigned k) {
    if (k < 1) return "k must be >= 1";
    switch (m) {
        case Method::bernoulli:
        case Method::automatic: return std::nullopt;
        case Method::functional_equation:
            if (k < 2) return "functional equation needs k >= 2";
            return std::nullopt;
        case Method::hecke_eisenstein: {
            auto D = quadratic_disc(chi);
            if (!D) return "not a quadratic character";
            if (k % 2 == 0 && *D > 1) return std::nullopt;
            if (k % 2 == 1 && k >= 3 && *D < -4) return std::nullopt;
            return "needs D > 1 with k even, or D < -4 with k odd >= 3";
        }
        case Method::half_integral: {
            auto D = quadratic_disc(chi);
            if (!D) return "not a quadratic character";
            if (k % 2 == 0 && *D > 1) return std::nullopt;
            if (k % 2 == 1 && k >= 3 && *D < 0 && *D != -4) return std::nullopt;
            if (k == 1 && *D < -4) return std::nullopt;
            return "needs D > 1 with k even, D < 0 (D != -4) with k odd, or D < -4 with k = 1";
        }
    }
    return "unknown method";
}

MethodChoice choose_method(const DirichletCharacter& chi, unsigned k, const AutoPolicy& policy) {
    double F = static_cast<double>(chi.modulus());
    bool half = !method_inapplicable(Method::half_integral, chi, k);
    if (k <= policy.k_small) {
        if (half) return {Method::half_integral, "k <= " + std::to_string(policy.k_small) + ", quadratic"};
        return {Method::bernoulli, "k <= " + std::to_string(policy.k_small) + ", not usable by half_integral"};
    }
    if (F > policy.large_conductor && half)
        return {Method::half_integral, "large k and conductor above the cutoff"};
    return {Method::functional_equation, "large k"};
}

LValueReport compute_l_value(const DirichletCharacter& chi, unsigned k, Method m, const ComputeOptions& opt) {
    LValueReport rep;
    rep.chi = chi.spec();
    rep.k = k;
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
    if (m == Method::automatic) {
        auto c = choose_method(chi, k, opt.policy);
        rep.method = c.method;
        rep.rationale = c.rationale;
    } else {
        rep.method = m;
        if (auto why = method_inapplicable(m, chi, k)) {
            if (!parity_zero(chi, k)) throw Error(ErrorKind::VariantInapplicable, std::string(method_name(m)) + ": " + *why);
        }
        rep.rationale = "requested";
    }
    auto t0 = std::chrono::steady_clock::now();
    if (parity_zero(chi, k)) {
        rep.value = Cyclotomic(Rational(0));
        rep.parity_shortcut = true;
        rep.rationale = "parity";
    } else {
        auto [f, prim] = conductor_and_primitive(chi);
        Cyclotomic corr = induced_correction(prim, chi.modulus(), k);
        switch (rep.method) {
            case Method::bernoulli: rep.value = l_via_bernoulli(chi, k); break;
            case Method::functional_equation: rep.value = l_via_functional_equation(chi, k); break;
            case Method::hecke_eisenstein: {
                std::int64_t D = *prim.quadratic_discriminant();
                Rational v = (k % 2 == 0) ? l_hecke_even(D, k) : l_hecke_odd(D, k);
                rep.value = corr * Cyclotomic(v);
                break;
            }
            case Method::half_integral: {
                std::int64_t D = *prim.quadratic_discriminant();
                EvalOptions eo;
                eo.level_threshold = opt.policy.level_threshold;
                eo.threads = opt.threads;
                Rational v;
                if (k == 1) v = Rational(to_integer_u(l_weight_one(D).h));
                else if (k % 2 == 0) v = l_half_even(D, k, std::nullopt, eo);
                else v = l_half_odd(D, k, std::nullopt, eo);
                rep.value = corr * Cyclotomic(v);
                break;
            }
            case Method::automatic: break;
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

VerifyResult verify_l_value(const DirichletCharacter& chi, unsigned k, const std::vector<Method>& methods,
                            const ComputeOptions& opt) {
    VerifyResult res;
    for (auto m : methods) res.reports.push_back(compute_l_value(chi, k, m, opt));
    for (std::size_t i = 1; i < res.reports.size() && res.agree; ++i)
        if (res.reports[i].value != res.reports[0].value) {
            res.agree = false;
            res.mismatch = std::make_pair(std::size_t{0}, i);
        }
    if (res.agree && res.reports.size() >= 2)
        for (auto& r : res.reports) r.cross_checked = true;
    return res;
}

double fit_exponent(const std::vector<double>& x, const std::vector<double>& t) {
    if (x.size() != t.size() || x.size() < 2) throw Error(ErrorKind::InvalidArgument, "fit_exponent needs >= 2 points");
    double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double a = std::log(x[i]), b = std::log(t[i]);
        sx += a;
        sy += b;
        sxx += a * a;
        sxy += a * b;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace lneg
