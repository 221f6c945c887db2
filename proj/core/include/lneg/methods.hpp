#pragma once

#include "lneg/characters.hpp"
#include "lneg/cyclotomic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lneg {

enum class Method { bernoulli, functional_equation, hecke_eisenstein, half_integral, automatic };
const char* method_name(Method m);
Method parse_method(const std::string& name);
std::vector<Method> concrete_methods();

struct AutoPolicy {
    unsigned k_small = 100;
    double large_conductor = 1e7;
    double level_threshold = 1e8;
};

struct MethodChoice {
    Method method = Method::bernoulli;
    std::string rationale;
};

// empty when applicable, else the reason
std::optional<std::string> method_inapplicable(Method m, const DirichletCharacter& chi, unsigned k);
MethodChoice choose_method(const DirichletCharacter& chi, unsigned k, const AutoPolicy& policy = {});
// L(chi, 1-k) vanishes for parity reasons
bool parity_zero(const DirichletCharacter& chi, unsigned k);

struct ComputeOptions {
    AutoPolicy policy;
    unsigned threads = 1;
};

struct LValueReport {
    Cyclotomic value;
    Method method = Method::bernoulli;
    std::string rationale;
    std::string chi;
    unsigned k = 0;
    double seconds = 0;
    bool parity_shortcut = false;
    bool cross_checked = false;
};

LValueReport compute_l_value(const DirichletCharacter& chi, unsigned k, Method m, const ComputeOptions& opt = {});

struct VerifyResult {
    std::vector<LValueReport> reports;
    bool agree = true;
    // first disagreeing pair
    std::optional<std::pair<std::size_t, std::size_t>> mismatch;
};
VerifyResult verify_l_value(const DirichletCharacter& chi, unsigned k, const std::vector<Method>& methods,
                            const ComputeOptions& opt = {});

// least-squares slope of log t against log x
double fit_exponent(const std::vector<double>& x, const std::vector<double>& t);

}  // namespace lneg
