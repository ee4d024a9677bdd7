#include <gtest/gtest.h>

#include <cmath>

#include "lzlab/error.hpp"
#include "lzlab/primes.hpp"

using namespace lzlab;

TEST(Primes, SmallSieve) {
    const std::vector<std::uint64_t> expected = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    EXPECT_EQ(primes_up_to(30), expected);
    EXPECT_TRUE(primes_up_to(1).empty());
    EXPECT_EQ(primes_up_to(2), std::vector<std::uint64_t>{2});
}

TEST(Primes, CountsMatchPi) {
    EXPECT_EQ(primes_up_to(1000).size(), 168u);
    EXPECT_EQ(primes_up_to(1'000'000).size(), 78498u);
}

TEST(Primes, TableIsShared) {
    const auto a = prime_table(500), b = prime_table(500);
    EXPECT_EQ(a.data(), b.data());
    EXPECT_EQ(a.size(), 95u);
}

TEST(Primes, SieveCap) { EXPECT_THROW(primes_up_to(kSieveCap + 1), DomainError); }

TEST(Primes, MillerRabinAgreesWithSieve) {
    const auto table = primes_up_to(20000);
    std::size_t k = 0;
    for (std::uint64_t n = 0; n <= 20000; ++n) {
        const bool in_table = k < table.size() && table[k] == n;
        if (in_table) ++k;
        ASSERT_EQ(is_prime(n), in_table) << n;
    }
    EXPECT_TRUE(is_prime(1'000'000'007ULL));
    EXPECT_FALSE(is_prime(1'000'000'007ULL * 3));
}

TEST(Primes, Factorize) {
    const auto f = factorize(360);
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0], std::make_pair(std::uint64_t{2}, 3u));
    EXPECT_EQ(f[1], std::make_pair(std::uint64_t{3}, 2u));
    EXPECT_EQ(f[2], std::make_pair(std::uint64_t{5}, 1u));
    EXPECT_TRUE(factorize(1).empty());
}

TEST(Primes, EulerPhi) {
    EXPECT_EQ(euler_phi(1), 1u);
    EXPECT_EQ(euler_phi(12), 4u);
    EXPECT_EQ(euler_phi(97), 96u);
    EXPECT_EQ(euler_phi(200), 80u);
}

TEST(Primes, VonMangoldt) {
    EXPECT_EQ(von_mangoldt(1), 0.0);
    EXPECT_EQ(von_mangoldt(6), 0.0);
    EXPECT_DOUBLE_EQ(von_mangoldt(8), std::log(2.0));
    EXPECT_DOUBLE_EQ(von_mangoldt(49), std::log(7.0));
    EXPECT_DOUBLE_EQ(von_mangoldt(13), std::log(13.0));
}

TEST(Primes, ModularArithmetic) {
    EXPECT_EQ(powmod(3, 200, 1000003), powmod(9, 100, 1000003));
    EXPECT_EQ(mulmod(~0ULL, ~0ULL, 1'000'000'007ULL),
              static_cast<std::uint64_t>(static_cast<unsigned __int128>(~0ULL) * ~0ULL %
                                         1'000'000'007ULL));
}
