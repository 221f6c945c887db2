#include "lneg/errors.hpp"
#include "lneg/lvalue_eisenstein.hpp"
#include "lneg/methods.hpp"
#include "lneg/number_theory.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

using namespace lneg;
using nlohmann::json;

namespace {

enum Exit { ok = 0, failure = 1, usage = 2, mismatch = 3, inconsistent = 4 };

int exit_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::ParseError:
        case ErrorKind::InvalidArgument:
        case ErrorKind::InadmissiblePair:
        case ErrorKind::DeadLevel:
        case ErrorKind::NotFundamental:
        case ErrorKind::VariantInapplicable:
        case ErrorKind::KTooSmall: return usage;
        case ErrorKind::Mismatch: return mismatch;
        case ErrorKind::Inconsistent: return inconsistent;
        default: return failure;
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

// "2..24", "2..24:2", "3,5,7"
std::vector<long> parse_int_list(const std::string& s) {
    std::vector<long> out;
    for (const auto& part : split(s, ',')) {
        auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::stol(part));
            continue;
        }
        long a = std::stol(part.substr(0, dots));
        std::string rest = part.substr(dots + 2);
        long step = 1;
        if (auto c = rest.find(':'); c != std::string::npos) {
            step = std::stol(rest.substr(c + 1));
            rest = rest.substr(0, c);
        }
        long b = std::stol(rest);
        if (step <= 0) throw Error(ErrorKind::ParseError, "bad step in '" + part + "'");
        for (long x = a; x <= b; x += step) out.push_back(x);
    }
    return out;
}

std::string fmt_seconds(double s) {
    std::ostringstream o;
    o << std::setprecision(3) << s;
    return o.str();
}

json value_json(const Cyclotomic& v) {
    json j;
    j["value"] = v.to_string();
    j["order"] = v.order();
    json c = json::array();
    for (const auto& q : v.coefficients()) c.push_back(to_string(q));
    j["coefficients"] = c;
    return j;
}

void print_report(const LValueReport& r, bool as_json) {
    if (as_json) {
        json j = value_json(r.value);
        j["method"] = method_name(r.method);
        j["chi"] = r.chi;
        j["k"] = r.k;
        j["rationale"] = r.rationale;
        j["parity_shortcut"] = r.parity_shortcut;
        j["cross_checked"] = r.cross_checked;
        j["seconds"] = r.seconds;
        std::cout << j.dump() << "\n";
        return;
    }
    std::cout << "value=" << r.value.to_string() << " method=" << method_name(r.method) << " chi=" << r.chi
              << " k=" << r.k;
    if (r.parity_shortcut) std::cout << " note=parity";
    std::cout << " seconds=" << fmt_seconds(r.seconds) << "\n";
}

struct Common {
    std::string cache_dir;
    unsigned threads = 1;
    bool as_json = false;
};

void apply_cache(const Common& c) {
    std::string dir = c.cache_dir;
    if (dir.empty())
        if (const char* env = std::getenv("LNEG_CACHE_DIR")) dir = env;
    if (!dir.empty()) CoefficientStore::global().set_cache_directory(std::filesystem::path(dir));
    SolveOptions so;
    so.threads = c.threads;
    CoefficientStore::global().set_solve_options(so);
}

int cmd_compute(const Common& c, const std::string& chi_spec, unsigned k, const std::string& method, bool strict) {
    apply_cache(c);
    auto chi = parse_character(chi_spec);
    ComputeOptions opt;
    opt.threads = c.threads;
    auto rep = compute_l_value(chi, k, parse_method(method), opt);
    print_report(rep, c.as_json);
    if (strict && rep.parity_shortcut) {
        std::cerr << "strict: L(chi, 1-k) vanishes by parity\n";
        return usage;
    }
    return ok;
}

int cmd_verify(const Common& c, const std::string& chi_spec, unsigned k, const std::string& methods,
               const std::string& fault) {
    apply_cache(c);
    auto chi = parse_character(chi_spec);
    std::vector<Method> list;
    if (methods == "all") {
        for (auto m : concrete_methods())
            if (!method_inapplicable(m, chi, k)) list.push_back(m);
    } else {
        for (const auto& name : split(methods, ',')) list.push_back(parse_method(name));
    }
    if (list.size() < 2) {
        std::cerr << "verify needs at least two applicable methods\n";
        return usage;
    }
    ComputeOptions opt;
    opt.threads = c.threads;
    VerifyResult res;
    for (auto m : list) {
        auto r = compute_l_value(chi, k, m, opt);
        if (!fault.empty() && parse_method(fault) == m) r.value += Cyclotomic(Rational(1));
        res.reports.push_back(std::move(r));
    }
    for (std::size_t i = 1; i < res.reports.size() && res.agree; ++i)
        if (res.reports[i].value != res.reports[0].value) {
            res.agree = false;
            res.mismatch = std::make_pair(std::size_t{0}, i);
        }
    if (c.as_json) {
        json j;
        j["chi"] = chi.spec();
        j["k"] = k;
        j["agree"] = res.agree;
        json ms = json::array();
        for (const auto& r : res.reports) {
            json e = value_json(r.value);
            e["method"] = method_name(r.method);
            e["seconds"] = r.seconds;
            ms.push_back(e);
        }
        j["methods"] = ms;
        std::cout << j.dump() << "\n";
    } else {
        for (const auto& r : res.reports)
            std::cout << "method=" << method_name(r.method) << " value=" << r.value.to_string()
                      << " seconds=" << fmt_seconds(r.seconds) << "\n";
        if (res.agree) {
            std::cout << "verify=ok methods=" << res.reports.size() << "\n";
        } else {
            const auto& a = res.reports[res.mismatch->first];
            const auto& b = res.reports[res.mismatch->second];
            std::cout << "verify=mismatch " << method_name(a.method) << "=" << a.value.to_string() << " "
                      << method_name(b.method) << "=" << b.value.to_string() << "\n";
        }
    }
    return res.agree ? ok : mismatch;
}

int cmd_precompute(const Common& c, const std::string& kind_name, const std::string& ks, const std::string& Ns,
                   const std::string& es) {
    std::string dir = c.cache_dir;
    if (dir.empty())
        if (const char* env = std::getenv("LNEG_CACHE_DIR")) dir = env;
    if (dir.empty()) {
        std::cerr << "precompute needs --cache-dir or LNEG_CACHE_DIR\n";
        return usage;
    }
    auto kind = parse_coefficient_kind(kind_name);
    if (kind != CoefficientKind::half_even && kind != CoefficientKind::half_odd)
        throw Error(ErrorKind::InvalidArgument, "precompute handles half_even and half_odd");
    bool even = kind == CoefficientKind::half_even;
    std::vector<long> kl = parse_int_list(ks);
    std::vector<long> Nl = parse_int_list(Ns.empty() ? (even ? "4" : "1") : Ns);
    bool explicit_e = !es.empty();
    std::vector<long> el = even ? std::vector<long>{0} : parse_int_list(explicit_e ? es : "-1,0,1");
    struct Job {
        unsigned k, N;
        int e;
    };
    std::vector<Job> jobs;
    for (long k : kl)
        for (long N : Nl)
            for (long e : el) {
                if (!even && !half_odd_admissible(static_cast<unsigned>(N), static_cast<int>(e))) {
                    if (explicit_e)
                        throw Error(ErrorKind::InadmissiblePair,
                                    "(N, e) = (" + std::to_string(N) + ", " + std::to_string(e) + ")");
                    continue;
                }
                jobs.push_back({static_cast<unsigned>(k), static_cast<unsigned>(N), static_cast<int>(e)});
            }
    CoefficientStore& store = CoefficientStore::global();
    store.set_cache_directory(std::filesystem::path(dir));
    SolveOptions so;
    so.validation = 10;
    store.set_solve_options(so);
    struct Outcome {
        std::optional<CoefficientSet> set;
        bool hit = false;
        std::string error;
        int code = ok;
    };
    std::vector<Outcome> out(jobs.size());
    auto run = [&](std::size_t i) {
        try {
            out[i].set = store.get(kind, jobs[i].k, jobs[i].N, jobs[i].e, &out[i].hit);
        } catch (const Error& e) {
            out[i].error = e.what();
            out[i].code = exit_for(e);
        }
    };
    unsigned workers = std::max(1u, c.threads);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < jobs.size();) run(i);
        });
    for (auto& t : pool) t.join();
    int code = ok;
    std::size_t solved = 0, cached = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        std::cout << "set kind=" << kind_name << " k=" << jobs[i].k << " N=" << jobs[i].N << " e=" << jobs[i].e;
        if (!out[i].set) {
            std::cout << " status=error " << out[i].error << "\n";
            code = std::max(code, out[i].code);
            continue;
        }
        (out[i].hit ? cached : solved)++;
        std::cout << " status=" << (out[i].hit ? "cached" : "solved") << " coefficients=";
        for (std::size_t j = 0; j < out[i].set->coefficients.size(); ++j)
            std::cout << (j ? "," : "") << to_string(out[i].set->coefficients[j]);
        std::cout << "\n";
    }
    std::cout << "sets=" << jobs.size() << " solved=" << solved << " cached=" << cached << "\n";
    return code;
}

std::int64_t next_fundamental(std::int64_t x) {
    std::int64_t step = x < 0 ? -1 : 1;
    while (!is_fundamental_discriminant(x)) x += step;
    return x;
}

// "D=1e6,1e7;k=4,8;methods=half_integral,bernoulli;reps=3"
int cmd_bench(const Common& c, const std::string& grid) {
    apply_cache(c);
    std::vector<double> Ds{1e4, 1e5, 1e6};
    std::vector<long> ks{4};
    std::vector<Method> methods{Method::half_integral, Method::bernoulli};
    int reps = 3;
    for (const auto& field : split(grid, ';')) {
        auto eq = field.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "grid field '" + field + "' lacks '='");
        std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "D") {
            Ds.clear();
            for (const auto& v : split(val, ',')) Ds.push_back(std::stod(v));
        } else if (key == "k") {
            ks = parse_int_list(val);
        } else if (key == "methods") {
            methods.clear();
            for (const auto& v : split(val, ',')) methods.push_back(parse_method(v));
        } else if (key == "reps") {
            reps = std::stoi(val);
        } else {
            throw Error(ErrorKind::ParseError, "unknown grid key '" + key + "'");
        }
    }
    std::vector<std::int64_t> Dv;
    for (double d : Ds) Dv.push_back(next_fundamental(static_cast<std::int64_t>(std::llround(d))));
    ComputeOptions opt;
    opt.threads = c.threads;
    // t[m][i][j]: best of reps, negative when inapplicable
    std::vector<std::vector<std::vector<double>>> t(methods.size(),
                                                    std::vector<std::vector<double>>(Dv.size(), std::vector<double>(ks.size(), -1)));
    for (std::size_t m = 0; m < methods.size(); ++m)
        for (std::size_t i = 0; i < Dv.size(); ++i)
            for (std::size_t j = 0; j < ks.size(); ++j) {
                auto chi = DirichletCharacter::from_discriminant(Dv[i]);
                unsigned k = static_cast<unsigned>(ks[j]);
                if (method_inapplicable(methods[m], chi, k) || parity_zero(chi, k)) continue;
                compute_l_value(chi, k, methods[m], opt);  // warm caches
                double best = 1e300;
                for (int r = 0; r < reps; ++r) best = std::min(best, compute_l_value(chi, k, methods[m], opt).seconds);
                t[m][i][j] = best;
            }
    json j;
    for (std::size_t m = 0; m < methods.size(); ++m) {
        if (!c.as_json) {
            std::cout << "method=" << method_name(methods[m]) << "\n" << std::setw(14) << "D\\k";
            for (long k : ks) std::cout << std::setw(11) << k;
            std::cout << "\n";
            for (std::size_t i = 0; i < Dv.size(); ++i) {
                std::cout << std::setw(14) << Dv[i];
                for (std::size_t jj = 0; jj < ks.size(); ++jj)
                    std::cout << std::setw(11) << (t[m][i][jj] < 0 ? std::string("*") : fmt_seconds(t[m][i][jj]));
                std::cout << "\n";
            }
        }
        for (std::size_t jj = 0; jj < ks.size(); ++jj) {
            std::vector<double> x, y;
            for (std::size_t i = 0; i < Dv.size(); ++i)
                if (t[m][i][jj] > 0) {
                    x.push_back(std::fabs(static_cast<double>(Dv[i])));
                    y.push_back(t[m][i][jj]);
                }
            if (x.size() < 2) continue;
            double ex = fit_exponent(x, y);
            if (c.as_json) j["exponents"].push_back({{"method", method_name(methods[m])}, {"k", ks[jj]}, {"D_exponent", ex}});
            else std::cout << "exponent method=" << method_name(methods[m]) << " k=" << ks[jj] << " D_exponent=" << std::setprecision(3) << ex << "\n";
        }
    }
    if (c.as_json) {
        j["D"] = Dv;
        j["k"] = ks;
        for (std::size_t m = 0; m < methods.size(); ++m) j["seconds"][method_name(methods[m])] = t[m];
        std::cout << j.dump() << "\n";
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact values of Dirichlet L-functions at negative integers"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--cache-dir", common.cache_dir, "coefficient cache directory (default $LNEG_CACHE_DIR)");
    app.add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--json", common.as_json, "JSON output");

    std::string chi, method = "auto", methods = "all", fault, kind = "half_even", ks, Ns, es, grid;
    unsigned k = 0;
    bool strict = false;

    auto* compute = app.add_subcommand("compute", "compute L(chi, 1-k)");
    compute->add_option("--chi", chi, "D:<disc> or m:<F>:g:<gens>:e:<exps>")->required();
    compute->add_option("--k", k, "k >= 1")->required();
    compute->add_option("--method", method, "bernoulli, functional_equation, hecke_eisenstein, half_integral, auto");
    compute->add_flag("--strict", strict, "exit 2 when the value vanishes by parity");

    auto* verify = app.add_subcommand("verify", "run several methods and compare exactly");
    verify->add_option("--chi", chi)->required();
    verify->add_option("--k", k)->required();
    verify->add_option("--methods,--method", methods, "comma list or all");
    verify->add_option("--inject-fault", fault, "perturb one method's value (harness testing)");

    auto* pre = app.add_subcommand("precompute", "solve and cache universal coefficients");
    pre->add_option("--kind", kind, "half_even or half_odd");
    pre->add_option("--k", ks, "list or range, e.g. 2..24:2")->required();
    pre->add_option("--N", Ns, "levels");
    pre->add_option("--e", es, "2-classes for half_odd");

    auto* bench = app.add_subcommand("bench", "timing grid with fitted exponents");
    bench->add_option("--bench-grid", grid, "D=1e6,1e7;k=4,8;methods=half_integral,bernoulli;reps=3");

    for (auto* sub : {compute, verify, pre, bench}) {
        sub->add_option("--cache-dir", common.cache_dir);
        sub->add_option("--threads", common.threads)->check(CLI::PositiveNumber);
        sub->add_flag("--json", common.as_json);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }
    try {
        if (*compute) return cmd_compute(common, chi, k, method, strict);
        if (*verify) return cmd_verify(common, chi, k, methods, fault);
        if (*pre) return cmd_precompute(common, kind, ks, Ns, es);
        if (*bench) return cmd_bench(common, grid);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}
