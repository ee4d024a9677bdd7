#pragma once

/**
 * @file characters.hpp
 * @brief Dirichlet characters modulo M.
 *
 * The unit group (Z/MZ)* is split by CRT into cyclic components: one per odd
 * prime power (generated by a primitive root), plus <-1> and <5> for 2^e with
 * e >= 3 (just <-1> for e = 2). A character is fixed by one exponent per
 * component, chi(g_c) = exp(2*pi*i*k_c/ord_c). The canonical index is the
 * mixed-radix number formed by (k_1, ..., k_r), first component most
 * significant, so index 0 is always the principal character.
 *
 * Values are stored densely (one entry per residue class) together with the
 * exact phase of each value as a fraction of a full turn.
 */

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lzlab {

using cplx = std::complex<double>;

// A value chi(n) = exp(2*pi*i*num/den) expressed as a fraction of a turn.
struct Turn {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
};

// One cyclic factor of (Z/MZ)*.
struct UnitComponent {
    std::uint64_t prime_power;  // modulus q of the factor (shared by the two 2-adic factors)
    std::uint64_t generator;    // generator residue mod q
    std::uint64_t order;        // order of the generator
    std::vector<std::int64_t> dlog;  // discrete log of r mod q, -1 where undefined
};

// CRT decomposition of (Z/MZ)* into cyclic components.
class UnitGroup {
public:
    explicit UnitGroup(std::uint64_t modulus);

    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t order() const { return order_; }
    const std::vector<UnitComponent>& components() const { return components_; }

    // Residue mod M that is g_c on component c and 1 on every other prime power.
    std::uint64_t lifted_generator(std::size_t c) const;

    // Exponent vector <-> canonical index.
    std::vector<std::uint64_t> exponents_of(std::uint64_t index) const;
    std::uint64_t index_of(std::span<const std::uint64_t> exponents) const;

private:
    std::uint64_t modulus_;
    std::uint64_t order_;
    std::vector<UnitComponent> components_;
};

class DirichletCharacter {
public:
    // Character with canonical index `index` modulo `modulus`.
    DirichletCharacter(std::uint64_t modulus, std::uint64_t index);
    DirichletCharacter(const UnitGroup& group, std::uint64_t index);

    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t index() const { return index_; }
    // "M.k" selector.
    std::string selector() const;

    cplx operator()(std::int64_t n) const { return values_[reduce(n)]; }
    cplx value(std::int64_t n) const { return (*this)(n); }
    std::optional<Turn> phase(std::int64_t n) const;

    // 0 if chi(-1) = 1, 1 if chi(-1) = -1.
    int parity() const { return parity_; }
    std::uint64_t conductor() const { return conductor_; }
    bool primitive() const { return conductor_ == modulus_; }
    bool principal() const { return index_ == 0; }
    // Least common order of all values (the character's order).
    std::uint64_t order() const;

    std::span<const cplx> values() const { return values_; }

    bool operator==(const DirichletCharacter& o) const {
        return modulus_ == o.modulus_ && index_ == o.index_;
    }

private:
    std::uint64_t reduce(std::int64_t n) const {
        const auto m = static_cast<std::int64_t>(modulus_);
        const std::int64_t r = n % m;
        return static_cast<std::uint64_t>(r < 0 ? r + m : r);
    }
    void build(const UnitGroup& group);

    std::uint64_t modulus_;
    std::uint64_t index_;
    std::uint64_t turn_den_ = 1;               // common denominator of all phases
    std::vector<std::int64_t> turn_num_;       // numerator per residue, -1 where chi = 0
    std::vector<cplx> values_;
    int parity_ = 0;
    std::uint64_t conductor_ = 1;
};

// All phi(M) characters modulo M in canonical order.
std::vector<DirichletCharacter> enumerate_characters(std::uint64_t modulus);

// Parses "M.k"; throws ConfigError on malformed input or k >= phi(M).
DirichletCharacter character_from_selector(std::string_view selector);

// tau(chi) = sum_a chi(a) e(a/M). Primitive characters only (DomainError otherwise).
cplx gauss_sum(const DirichletCharacter& chi);

// epsilon(chi) = tau(chi) / (i^a sqrt(M)); unimodular.
cplx root_number(const DirichletCharacter& chi);

// Complex conjugate character, same modulus.
DirichletCharacter conjugate(const DirichletCharacter& chi);

// chi1 * conj(chi2) as a character modulo lcm(M1, M2).
DirichletCharacter product_conj(const DirichletCharacter& chi1, const DirichletCharacter& chi2);

}  // namespace lzlab
