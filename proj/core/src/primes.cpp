#include "lneg/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace lneg {

namespace {

constexpr std::uint32_t kTableCap = 1u << 28;

std::vector<std::uint32_t> sieve(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> comp(static_cast<std::size_t>(limit) + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (comp[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    }
    return out;
}

}  // namespace

std::shared_ptr<const std::vector<std::uint32_t>> prime_table(std::uint32_t limit) {
    static std::mutex mu;
    static std::shared_ptr<const std::vector<std::uint32_t>> table;
    static std::uint32_t covered = 0;
    std::lock_guard lock(mu);
    if (!table || covered < limit) {
        std::uint32_t target = std::max<std::uint32_t>(limit, std::min<std::uint64_t>(2ull * covered, kTableCap));
        target = std::max<std::uint32_t>(target, 1u << 16);
        table = std::make_shared<const std::vector<std::uint32_t>>(sieve(target));
        covered = target;
    }
    return table;
}

void for_each_prime(std::uint64_t limit, const std::function<void(std::uint64_t)>& f) {
    std::uint32_t first = static_cast<std::uint32_t>(std::min<std::uint64_t>(limit, kTableCap));
    auto tab = prime_table(first);
    for (std::uint32_t p : *tab) {
        if (p > limit) return;
        f(p);
    }
    if (limit <= kTableCap) return;
    auto base = prime_table(static_cast<std::uint32_t>(std::sqrt(static_cast<double>(limit))) + 2);
    const std::uint64_t seg = 1u << 20;
    std::vector<char> comp(seg);
    for (std::uint64_t lo = static_cast<std::uint64_t>(tab->back()) + 1; lo <= limit; lo += seg) {
        std::uint64_t hi = std::min(limit + 1, lo + seg);
        std::fill(comp.begin(), comp.end(), 0);
        for (std::uint32_t p : *base) {
            std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
            if (pp >= hi) break;
            std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
            for (std::uint64_t j = start; j < hi; j += p) comp[j - lo] = 1;
        }
        for (std::uint64_t n = lo; n < hi; ++n)
            if (!comp[n - lo]) f(n);
    }
}

}  // namespace lneg
