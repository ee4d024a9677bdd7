#include "lzlab/characters.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include "lzlab/error.hpp"
#include "lzlab/primes.hpp"

namespace lzlab {

namespace {

std::uint64_t primitive_root_mod_p(std::uint64_t p) {
    if (p == 2) return 1;
    auto factors = factorize(p - 1);
    for (std::uint64_t g = 2;; ++g) {
        bool ok = true;
        for (auto [r, e] : factors) {
            if (powmod(g, (p - 1) / r, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
}

// Inverse of a mod m, gcd(a, m) = 1.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, new_t = 1;
    auto r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

cplx root_of_unity(std::uint64_t num, std::uint64_t den) {
    num %= den;
    if ((4 * num) % den == 0) {
        switch (4 * num / den) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

UnitGroup::UnitGroup(std::uint64_t modulus) : modulus_(modulus), order_(1) {
    if (modulus == 0) throw DomainError("UnitGroup: modulus must be positive");
    for (auto [p, e] : factorize(modulus)) {
        std::uint64_t q = 1;
        for (unsigned i = 0; i < e; ++i) q *= p;
        if (p == 2) {
            if (e == 1) continue;
            if (e == 2) {
                UnitComponent c{q, 3, 2, std::vector<std::int64_t>(q, -1)};
                c.dlog[1] = 0;
                c.dlog[3] = 1;
                components_.push_back(std::move(c));
                order_ *= 2;
                continue;
            }
            // (Z/2^e)* = <-1> x <5>
            const std::uint64_t ord5 = q / 4;
            UnitComponent sign{q, q - 1, 2, std::vector<std::int64_t>(q, -1)};
            UnitComponent five{q, 5, ord5, std::vector<std::int64_t>(q, -1)};
            std::uint64_t v = 1;
            for (std::uint64_t k = 0; k < ord5; ++k) {
                sign.dlog[v] = 0;
                five.dlog[v] = static_cast<std::int64_t>(k);
                sign.dlog[q - v] = 1;
                five.dlog[q - v] = static_cast<std::int64_t>(k);
                v = v * 5 % q;
            }
            components_.push_back(std::move(sign));
            components_.push_back(std::move(five));
            order_ *= q / 2;
            continue;
        }
        std::uint64_t g = primitive_root_mod_p(p);
        if (e >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
        const std::uint64_t ord = q / p * (p - 1);
        UnitComponent c{q, g % q, ord, std::vector<std::int64_t>(q, -1)};
        std::uint64_t v = 1;
        for (std::uint64_t k = 0; k < ord; ++k) {
            c.dlog[v] = static_cast<std::int64_t>(k);
            v = mulmod(v, g, q);
        }
        components_.push_back(std::move(c));
        order_ *= ord;
    }
}

std::uint64_t UnitGroup::lifted_generator(std::size_t c) const {
    const auto& comp = components_.at(c);
    const std::uint64_t q = comp.prime_power;
    const std::uint64_t rest = modulus_ / q;
    if (rest == 1) return comp.generator;
    // n = 1 + rest * t with n = g (mod q)
    const std::uint64_t t = mulmod((comp.generator + q - 1) % q, inverse_mod(rest % q, q), q);
    return (1 + mulmod(rest, t, modulus_)) % modulus_;
}

std::vector<std::uint64_t> UnitGroup::exponents_of(std::uint64_t index) const {
    if (index >= order_) throw DomainError("character index out of range");
    std::vector<std::uint64_t> exps(components_.size());
    for (std::size_t c = components_.size(); c-- > 0;) {
        exps[c] = index % components_[c].order;
        index /= components_[c].order;
    }
    return exps;
}

std::uint64_t UnitGroup::index_of(std::span<const std::uint64_t> exponents) const {
    std::uint64_t index = 0;
    for (std::size_t c = 0; c < components_.size(); ++c) {
        index = index * components_[c].order + exponents[c] % components_[c].order;
    }
    return index;
}

DirichletCharacter::DirichletCharacter(std::uint64_t modulus, std::uint64_t index)
    : modulus_(modulus), index_(index) {
    build(UnitGroup(modulus));
}

DirichletCharacter::DirichletCharacter(const UnitGroup& group, std::uint64_t index)
    : modulus_(group.modulus()), index_(index) {
    build(group);
}

void DirichletCharacter::build(const UnitGroup& group) {
    const auto exps = group.exponents_of(index_);
    const auto& comps = group.components();

    // reduced fraction k_c / ord_c per component
    std::vector<std::uint64_t> red_num(comps.size()), red_den(comps.size());
    std::uint64_t den = 1;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const std::uint64_t g = std::gcd(exps[c], comps[c].order);
        red_num[c] = exps[c] / g;
        red_den[c] = comps[c].order / g;
        den = std::lcm(den, red_den[c]);
    }
    turn_den_ = den;

    const std::uint64_t M = modulus_;
    turn_num_.assign(M, -1);
    values_.assign(M, cplx{0.0, 0.0});
    for (std::uint64_t n = 0; n < M; ++n) {
        if (std::gcd(n, M) != 1 && M != 1) continue;
        std::uint64_t num = 0;
        for (std::size_t c = 0; c < comps.size(); ++c) {
            const auto e = static_cast<std::uint64_t>(comps[c].dlog[n % comps[c].prime_power]);
            const std::uint64_t part = mulmod(red_num[c], e, red_den[c]);
            num = (num + mulmod(part, den / red_den[c], den)) % den;
        }
        turn_num_[n] = static_cast<std::int64_t>(num);
        values_[n] = root_of_unity(num, den);
    }

    parity_ = (M > 2 && 2 * static_cast<std::uint64_t>(turn_num_[M - 1]) == den) ? 1 : 0;

    // smallest d | M with chi trivial on units n = 1 (mod d)
    conductor_ = M;
    for (std::uint64_t d = 1; d < M; ++d) {
        if (M % d != 0) continue;
        bool trivial = true;
        for (std::uint64_t n = 1; n < M; n += d) {
            if (turn_num_[n] > 0) {
                trivial = false;
                break;
            }
        }
        if (trivial) {
            conductor_ = d;
            break;
        }
    }
}

std::string DirichletCharacter::selector() const {
    return std::to_string(modulus_) + "." + std::to_string(index_);
}

std::optional<Turn> DirichletCharacter::phase(std::int64_t n) const {
    const std::int64_t num = turn_num_[reduce(n)];
    if (num < 0) return std::nullopt;
    return Turn{static_cast<std::uint64_t>(num), turn_den_};
}

std::uint64_t DirichletCharacter::order() const { return turn_den_; }

std::vector<DirichletCharacter> enumerate_characters(std::uint64_t modulus) {
    const UnitGroup group(modulus);
    std::vector<DirichletCharacter> out;
    out.reserve(group.order());
    for (std::uint64_t k = 0; k < group.order(); ++k) out.emplace_back(group, k);
    return out;
}

DirichletCharacter character_from_selector(std::string_view selector) {
    const auto dot = selector.find('.');
    if (dot == std::string_view::npos) {
        throw ConfigError("character selector must look like M.k, got '" + std::string(selector) + "'");
    }
    std::uint64_t M = 0, k = 0;
    const auto head = selector.substr(0, dot), tail = selector.substr(dot + 1);
    auto r1 = std::from_chars(head.data(), head.data() + head.size(), M);
    auto r2 = std::from_chars(tail.data(), tail.data() + tail.size(), k);
    if (r1.ec != std::errc{} || r1.ptr != head.data() + head.size() || r2.ec != std::errc{} ||
        r2.ptr != tail.data() + tail.size() || M == 0) {
        throw ConfigError("malformed character selector '" + std::string(selector) + "'");
    }
    if (k >= euler_phi(M)) {
        throw ConfigError("character index out of range in '" + std::string(selector) + "'");
    }
    return DirichletCharacter(M, k);
}

cplx gauss_sum(const DirichletCharacter& chi) {
    if (!chi.primitive()) {
        throw DomainError("gauss_sum: character " + chi.selector() + " is not primitive");
    }
    const std::uint64_t M = chi.modulus();
    cplx tau{0.0, 0.0};
    for (std::uint64_t a = 0; a < M; ++a) {
        const auto ph = chi.phase(static_cast<std::int64_t>(a));
        if (!ph) continue;
        // e(num/den + a/M) combined exactly
        const std::uint64_t den = std::lcm(ph->den, M);
        const std::uint64_t num =
            (mulmod(ph->num, den / ph->den, den) + mulmod(a, den / M, den)) % den;
        tau += root_of_unity(num, den);
    }
    return tau;
}

cplx root_number(const DirichletCharacter& chi) {
    const cplx ia = chi.parity() == 0 ? cplx{1.0, 0.0} : cplx{0.0, 1.0};
    return gauss_sum(chi) / (ia * std::sqrt(static_cast<double>(chi.modulus())));
}

DirichletCharacter conjugate(const DirichletCharacter& chi) {
    const UnitGroup group(chi.modulus());
    auto exps = group.exponents_of(chi.index());
    for (std::size_t c = 0; c < exps.size(); ++c) {
        const std::uint64_t ord = group.components()[c].order;
        exps[c] = (ord - exps[c] % ord) % ord;
    }
    return DirichletCharacter(group, group.index_of(exps));
}

DirichletCharacter product_conj(const DirichletCharacter& chi1, const DirichletCharacter& chi2) {
    const std::uint64_t M = std::lcm(chi1.modulus(), chi2.modulus());
    const UnitGroup group(M);
    std::vector<std::uint64_t> exps(group.components().size());
    for (std::size_t c = 0; c < exps.size(); ++c) {
        const auto n = static_cast<std::int64_t>(group.lifted_generator(c));
        const auto p1 = chi1.phase(n), p2 = chi2.phase(n);
        const std::uint64_t ord = group.components()[c].order;
        // value at g_c is an ord-th root of unity: exponent = ord * (p1 - p2)
        const auto k1 = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(p1->num) * ord / p1->den % ord);
        const auto k2 = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(p2->num) * ord / p2->den % ord);
        exps[c] = (k1 + ord - k2) % ord;
    }
    return DirichletCharacter(group, group.index_of(exps));
}

}  // namespace lzlab
