#include "lzlab/primes.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "lzlab/error.hpp"

namespace lzlab {

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    if (limit > kSieveCap) {
        throw DomainError("primes_up_to: limit exceeds sieve cap of 1e8");
    }
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    // odd-only sieve
    const std::uint64_t half = (limit - 1) / 2;  // index i <-> 2i+3
    std::vector<bool> composite(half, false);
    out.push_back(2);
    for (std::uint64_t i = 0; i < half; ++i) {
        if (composite[i]) continue;
        const std::uint64_t p = 2 * i + 3;
        out.push_back(p);
        for (std::uint64_t j = (p * p - 3) / 2; j < half; j += p) composite[j] = true;
    }
    return out;
}

std::span<const std::uint64_t> prime_table(std::uint64_t limit) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::unique_ptr<const std::vector<std::uint64_t>>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(limit);
    if (it == cache.end()) {
        it = cache.emplace(limit, std::make_unique<const std::vector<std::uint64_t>>(
                                      primes_up_to(limit)))
                 .first;
    }
    return {it->second->data(), it->second->size()};
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    std::uint64_t d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t phi = n;
    for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

double von_mangoldt(std::uint64_t n) {
    if (n < 2) return 0.0;
    auto f = factorize(n);
    return f.size() == 1 ? std::log(static_cast<double>(f.front().first)) : 0.0;
}

}  // namespace lzlab
