#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lzlab {

// Upper limit of the prime sieve (desk-scale cap on X^2).
inline constexpr std::uint64_t kSieveCap = 100'000'000;

// All primes <= limit, ascending. Throws DomainError above kSieveCap.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// Shared read-only table of primes <= limit; built once per limit.
std::span<const std::uint64_t> prime_table(std::uint64_t limit);

bool is_prime(std::uint64_t n);

// Prime-power factorization, ascending primes.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// von Mangoldt function: log p if n = p^k (k >= 1), else 0.
double von_mangoldt(std::uint64_t n);

}  // namespace lzlab
