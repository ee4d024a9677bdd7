#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "lzlab/characters.hpp"
#include "lzlab/error.hpp"
#include "lzlab/primes.hpp"

using namespace lzlab;

namespace {

void expect_near(cplx a, cplx b, double tol) {
    EXPECT_NEAR(a.real(), b.real(), tol);
    EXPECT_NEAR(a.imag(), b.imag(), tol);
}

}  // namespace

TEST(Characters, ChiFourValues) {
    const DirichletCharacter chi(4, 1);
    EXPECT_EQ(chi(1), cplx(1.0, 0.0));
    EXPECT_EQ(chi(3), cplx(-1.0, 0.0));
    EXPECT_EQ(chi(2), cplx(0.0, 0.0));
    EXPECT_EQ(chi(-1), cplx(-1.0, 0.0));
    EXPECT_EQ(chi.parity(), 1);
    EXPECT_EQ(chi.conductor(), 4u);
    EXPECT_TRUE(chi.primitive());
    EXPECT_EQ(chi.selector(), "4.1");
}

TEST(Characters, ChiThreeValues) {
    const DirichletCharacter chi(3, 1);
    EXPECT_EQ(chi(2), cplx(-1.0, 0.0));
    EXPECT_EQ(chi(5), cplx(-1.0, 0.0));
    EXPECT_EQ(chi(3), cplx(0.0, 0.0));
    EXPECT_EQ(chi.parity(), 1);
}

TEST(Characters, QuadraticModFive) {
    const DirichletCharacter chi(5, 2);
    for (int n : {1, 4}) EXPECT_EQ(chi(n), cplx(1.0, 0.0)) << n;
    for (int n : {2, 3}) EXPECT_EQ(chi(n), cplx(-1.0, 0.0)) << n;
    EXPECT_EQ(chi.order(), 2u);
    EXPECT_EQ(chi.parity(), 0);
}

TEST(Characters, PrincipalIsIndexZero) {
    for (std::uint64_t M : {1, 2, 8, 12, 35, 64}) {
        const DirichletCharacter chi(M, 0);
        EXPECT_TRUE(chi.principal());
        EXPECT_EQ(chi.conductor(), 1u) << M;
        for (std::uint64_t n = 0; n < M; ++n) {
            const bool unit = std::gcd(n, M) == 1;
            EXPECT_EQ(chi(static_cast<std::int64_t>(n)), unit ? cplx(1.0, 0.0) : cplx(0.0, 0.0));
        }
    }
}

TEST(Characters, Multiplicative) {
    for (std::uint64_t M : {15, 16, 24, 49, 63}) {
        for (const auto& chi : enumerate_characters(M)) {
            for (std::int64_t a = 0; a < static_cast<std::int64_t>(M); ++a) {
                for (std::int64_t b = 0; b < static_cast<std::int64_t>(M); ++b) {
                    ASSERT_LT(std::abs(chi(a * b) - chi(a) * chi(b)), 1e-12)
                        << chi.selector() << " " << a << " " << b;
                }
            }
        }
    }
}

TEST(Characters, CountEqualsPhi) {
    for (std::uint64_t M = 1; M <= 60; ++M) {
        EXPECT_EQ(enumerate_characters(M).size(), euler_phi(M)) << M;
    }
}

TEST(Characters, OrthogonalityOverCharacters) {
    // sum_chi chi(a) conj(chi(b)) = phi(M) [a = b, gcd(a, M) = 1]
    for (std::uint64_t M : {7, 12, 16, 30, 45}) {
        const auto chars = enumerate_characters(M);
        for (std::uint64_t a = 0; a < M; ++a) {
            for (std::uint64_t b = 0; b < M; ++b) {
                cplx s{0.0, 0.0};
                for (const auto& chi : chars) {
                    s += chi(static_cast<std::int64_t>(a)) * std::conj(chi(static_cast<std::int64_t>(b)));
                }
                const double expected = (a == b && std::gcd(a, M) == 1) ? double(euler_phi(M)) : 0.0;
                ASSERT_LT(std::abs(s - expected), 1e-10) << M << " " << a << " " << b;
            }
        }
    }
}

TEST(Characters, PrimitiveCounts) {
    // number of primitive characters mod M for M = 1..12
    const int expected[] = {1, 0, 1, 1, 3, 0, 5, 2, 4, 0, 9, 1};
    for (std::uint64_t M = 1; M <= 12; ++M) {
        int count = 0;
        for (const auto& chi : enumerate_characters(M)) count += chi.primitive();
        EXPECT_EQ(count, expected[M - 1]) << M;
    }
}

TEST(Characters, InducedCharacterConductor) {
    // chi_4 lifted to modulus 12 has conductor 4
    bool found = false;
    for (const auto& chi : enumerate_characters(12)) {
        if (chi(5) == cplx(1.0, 0.0) && chi(7) == cplx(-1.0, 0.0) && chi(11) == cplx(-1.0, 0.0)) {
            EXPECT_EQ(chi.conductor(), 4u);
            EXPECT_FALSE(chi.primitive());
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(Characters, GaussSumModulus) {
    for (std::uint64_t M = 3; M <= 80; ++M) {
        for (const auto& chi : enumerate_characters(M)) {
            if (!chi.primitive()) continue;
            EXPECT_NEAR(std::norm(gauss_sum(chi)), static_cast<double>(M), 1e-10 * M)
                << chi.selector();
            EXPECT_NEAR(std::abs(root_number(chi)), 1.0, 1e-12);
        }
    }
}

TEST(Characters, RealCharacterRootNumberIsOne) {
    for (const char* sel : {"4.1", "3.1", "5.2", "8.1", "8.3"}) {
        const auto chi = character_from_selector(sel);
        if (!chi.primitive()) continue;
        expect_near(root_number(chi), cplx(1.0, 0.0), 1e-12);
    }
}

TEST(Characters, GaussSumRejectsImprimitive) {
    EXPECT_THROW(gauss_sum(DirichletCharacter(12, 0)), DomainError);
}

TEST(Characters, ConjugateAndProduct) {
    for (const auto& chi : enumerate_characters(13)) {
        const auto bar = conjugate(chi);
        for (std::int64_t n = 0; n < 13; ++n) expect_near(bar(n), std::conj(chi(n)), 1e-14);
    }
    const auto chi4 = DirichletCharacter(4, 1), chi3 = DirichletCharacter(3, 1);
    const auto prod = product_conj(chi4, chi3);
    EXPECT_EQ(prod.modulus(), 12u);
    for (std::int64_t n = 0; n < 12; ++n) expect_near(prod(n), chi4(n) * std::conj(chi3(n)), 1e-14);
    EXPECT_TRUE(product_conj(chi4, chi4).principal());
}

TEST(Characters, SelectorParsing) {
    EXPECT_EQ(character_from_selector("5.2").index(), 2u);
    EXPECT_THROW(character_from_selector("5"), ConfigError);
    EXPECT_THROW(character_from_selector("5.x"), ConfigError);
    EXPECT_THROW(character_from_selector("0.0"), ConfigError);
    EXPECT_THROW(character_from_selector("5.4"), ConfigError);
    EXPECT_THROW(character_from_selector("5.2 "), ConfigError);
}

TEST(Characters, IndexRoundTrip) {
    const UnitGroup g(720);
    for (std::uint64_t k = 0; k < g.order(); k += 7) {
        const auto e = g.exponents_of(k);
        EXPECT_EQ(g.index_of(e), k);
    }
    EXPECT_THROW(g.exponents_of(g.order()), DomainError);
}

TEST(Characters, LiftedGeneratorsAreIndependent) {
    const UnitGroup g(2 * 2 * 2 * 9 * 5);
    for (std::size_t c = 0; c < g.components().size(); ++c) {
        const std::uint64_t n = g.lifted_generator(c);
        for (std::size_t d = 0; d < g.components().size(); ++d) {
            const auto& comp = g.components()[d];
            const auto r = n % comp.prime_power;
            if (d == c) {
                EXPECT_EQ(r, comp.generator % comp.prime_power);
            } else if (comp.prime_power != g.components()[c].prime_power) {
                EXPECT_EQ(r, 1u);
            }
        }
    }
}
