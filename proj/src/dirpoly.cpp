#include "lzlab/dirpoly.hpp"

#include <cmath>
#include <cstdio>

#include "lzlab/error.hpp"
#include "lzlab/primes.hpp"
#include "lzlab/quadrature.hpp"

namespace lzlab {

namespace {

// p^{-sigma - i gamma}
cplx prime_power_term(double log_p, double sigma, double gamma) {
    return std::polar(std::exp(-sigma * log_p), -gamma * log_p);
}

double prime_reciprocal_sum(std::uint64_t limit) {
    double sum = 0.0;
    for (std::uint64_t p : prime_table(limit)) sum += 1.0 / static_cast<double>(p);
    return sum;
}

std::uint64_t floor_nudged(double x) {
    if (!(x >= 0.0)) return 0;
    return static_cast<std::uint64_t>(std::floor(x * (1.0 + 1e-12)));
}

}  // namespace

std::uint64_t prime_cutoff(double X) { return floor_nudged(X * X); }

double weight_w(double X, std::uint64_t n) {
    if (n < 1 || n > prime_cutoff(X)) {
        throw DomainError("weight_w: n = " + std::to_string(n) + " outside [1, X^2]");
    }
    if (n <= floor_nudged(X)) return 1.0;
    return std::max(0.0, std::log(X * X / static_cast<double>(n)) / std::log(X));
}

double lambda_X(double X, std::uint64_t n) {
    const double w = weight_w(X, n);
    return w == 0.0 ? 0.0 : von_mangoldt(n) * w;
}

double prime_sum_psi(double X) {
    if (X < 1.0) throw DomainError("prime_sum_psi: X must be >= 1");
    return prime_reciprocal_sum(prime_cutoff(X));
}

double psi_of_T(double T) {
    if (T < 1.0) throw DomainError("psi_of_T: T must be >= 1");
    return prime_reciprocal_sum(floor_nudged(T));
}

cplx poly_P_chi(const DirichletCharacter& chi, double X, double gamma) {
    cplx sum{0.0, 0.0};
    for (std::uint64_t p : prime_table(prime_cutoff(X))) {
        const cplx c = chi(static_cast<std::int64_t>(p));
        if (c == cplx{0.0, 0.0}) continue;
        sum += c * prime_power_term(std::log(static_cast<double>(p)), 0.5, gamma);
    }
    return sum;
}

CombinationSpec::CombinationSpec(std::vector<double> coefficients,
                                 std::vector<DirichletCharacter> characters, double X)
    : coefficients_(std::move(coefficients)), characters_(std::move(characters)), X_(X) {
    if (coefficients_.empty()) throw ConfigError("combination: empty coefficient list");
    if (coefficients_.size() != characters_.size()) {
        throw ConfigError("combination: " + std::to_string(coefficients_.size()) +
                          " coefficients but " + std::to_string(characters_.size()) + " characters");
    }
    for (double a : coefficients_) {
        if (!std::isfinite(a)) throw ConfigError("combination: non-finite coefficient");
    }
    for (std::size_t i = 0; i < characters_.size(); ++i) {
        if (!characters_[i].primitive()) {
            throw ConfigError("combination: character " + characters_[i].selector() +
                              " is not primitive");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (characters_[i] == characters_[j]) {
                throw ConfigError("combination: characters must be distinct (" +
                                  characters_[i].selector() + " repeated)");
            }
        }
    }
    if (!(X_ > 1.0) || prime_cutoff(X_) > kSieveCap) {
        throw ConfigError("combination: X must satisfy 1 < X and X^2 <= 1e8");
    }
}

cplx CombinationSpec::combined(std::uint64_t n) const {
    cplx sum{0.0, 0.0};
    for (std::size_t j = 0; j < size(); ++j) {
        sum += coefficients_[j] * characters_[j](static_cast<std::int64_t>(n));
    }
    return sum;
}

double CombinationSpec::coefficient_norm2() const {
    double s = 0.0;
    for (double a : coefficients_) s += a * a;
    return s;
}

cplx poly_P_L(const CombinationSpec& spec, double gamma) {
    cplx sum{0.0, 0.0};
    for (std::size_t j = 0; j < spec.size(); ++j) {
        sum += spec.coefficients()[j] * poly_P_chi(spec.characters()[j], spec.X(), gamma);
    }
    return sum;
}

double remainder(const CombinationSpec& spec, double gamma, std::span<const LValueSample> lvals) {
    if (lvals.size() != spec.size()) {
        throw DomainError("remainder: expected one sample per character");
    }
    double L = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        if (lvals[j].near_L_zero) {
            throw DomainError("remainder: sample for " + lvals[j].character + " at gamma=" +
                              std::to_string(gamma) + " is flagged near an L-zero and excluded");
        }
        L += spec.coefficients()[j] * lvals[j].log_abs;
    }
    return L - poly_P_L(spec, gamma).real();
}

RemainderBreakdown remainder_breakdown(const DirichletCharacter& chi, double X, double gamma,
                                       const ZeroSet& l_zeros) {
    if (!(gamma > 0.0)) throw DomainError("remainder_breakdown: gamma must be positive");
    if (!(X > 1.0)) throw DomainError("remainder_breakdown: X must exceed 1");
    const double log_X = std::log(X);
    const std::uint64_t cut = prime_cutoff(X);
    const auto primes = prime_table(cut);

    RemainderBreakdown out;
    out.sigma1 = 0.5 + 4.0 / log_X;

    struct Term {
        double log_p;
        cplx chi_p;
        double lambda;
    };
    std::vector<Term> terms;
    cplx r1{0.0, 0.0}, r2{0.0, 0.0};
    for (std::uint64_t p : primes) {
        const cplx c = chi(static_cast<std::int64_t>(p));
        if (c == cplx{0.0, 0.0}) continue;
        const double log_p = std::log(static_cast<double>(p));
        const double w = weight_w(X, p);
        r1 += (1.0 - w) * c * prime_power_term(log_p, 0.5, gamma);
        if (p <= floor_nudged(X)) {
            r2 += weight_w(X, p * p) * c * c * prime_power_term(log_p, 1.0, 2.0 * gamma);
        }
        terms.push_back({log_p, c, w * log_p});
    }
    out.r1 = std::abs(r1);
    out.r2 = std::abs(r2);

    auto integrand = [&](double sigma) {
        cplx s{0.0, 0.0};
        for (const auto& t : terms) {
            s += t.lambda * t.chi_p * (log_X + t.log_p) * prime_power_term(t.log_p, sigma, gamma);
        }
        return std::exp((0.5 - sigma) * log_X) * std::abs(s);
    };
    const auto q = adaptive_simpson(integrand, 0.5, 0.5 + kR3Cut / log_X, kR3Tolerance);
    if (!q.converged) {
        throw NumericalError("remainder_breakdown: r3 quadrature did not converge (gamma=" +
                             std::to_string(gamma) + ", X=" + std::to_string(X) +
                             ", error estimate " + std::to_string(q.error) + ")");
    }
    out.r3 = q.value / log_X;

    cplx e_sum{0.0, 0.0};
    for (std::uint64_t n = 2; n <= cut; ++n) {
        const double lam = von_mangoldt(n);
        if (lam == 0.0) continue;
        const cplx c = chi(static_cast<std::int64_t>(n));
        if (c == cplx{0.0, 0.0}) continue;
        e_sum += lam * weight_w(X, n) * c *
                 prime_power_term(std::log(static_cast<double>(n)), out.sigma1, gamma);
    }
    out.E_chi = std::abs(e_sum) + std::log(static_cast<double>(chi.modulus()) * gamma);

    out.eta = eta_chi(gamma, l_zeros).eta;
    const double log_plus = std::max(0.0, std::log(1.0 / (out.eta * log_X)));
    out.r4 = (1.0 + log_plus) * out.E_chi / log_X;
    return out;
}

MomentResult moment_diagnostic(const CombinationSpec& spec, const ZeroSet& zeros,
                               std::span<const std::vector<LValueSample>> lvals, int k,
                               MomentMode mode, double delta) {
    if (k < 0) throw DomainError("moment_diagnostic: k must be nonnegative");
    MomentResult out;
    if (k == 0) {
        out.value = 1.0;
        out.used = zeros.size();
        return out;
    }
    const double T = zeros.height();
    const double lo = std::pow(T, delta / (16.0 * k)), hi = std::pow(T, 1.0 / (16.0 * k));
    const double X = spec.X();
    if (X < lo * (1.0 - 1e-12)) {
        throw ConfigError("moment_diagnostic: X = " + std::to_string(X) +
                          " below the lower bound T^{delta/16k} = " + std::to_string(lo));
    }
    if (X > hi * (1.0 + 1e-12)) {
        throw ConfigError("moment_diagnostic: X = " + std::to_string(X) +
                          " above the upper bound T^{1/16k} = " + std::to_string(hi));
    }
    if (mode == MomentMode::remainder) {
        if (lvals.size() != spec.size()) {
            throw DomainError("moment_diagnostic: expected one sample list per character");
        }
        for (const auto& list : lvals) {
            if (list.size() != zeros.size()) {
                throw DomainError("moment_diagnostic: sample list not aligned with the zeros");
            }
        }
    }

    double sum = 0.0;
    std::vector<LValueSample> at(spec.size());
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        const double gamma = zeros[i];
        double v;
        if (mode == MomentMode::reP) {
            v = std::pow(std::abs(poly_P_L(spec, gamma).real()), k);
        } else {
            bool flagged = false;
            for (std::size_t j = 0; j < spec.size(); ++j) {
                at[j] = lvals[j][i];
                if (std::abs(at[j].gamma - gamma) > 1e-9) {
                    throw DomainError("moment_diagnostic: sample ordinate mismatch at index " +
                                      std::to_string(i));
                }
                flagged = flagged || at[j].near_L_zero;
            }
            if (flagged) {
                ++out.excluded;
                continue;
            }
            v = std::pow(remainder(spec, gamma, at), 2 * k);
        }
        sum += v;
        ++out.used;
    }
    out.value = out.used == 0 ? 0.0 : sum / static_cast<double>(out.used);
    return out;
}

XChoice default_X(double T) {
    if (!(T > std::exp(1.0))) throw DomainError("default_X: T must exceed e");
    const double ll = std::log(std::log(T));
    const double X = std::pow(T, 1.0 / (16.0 * std::pow(ll, 6)));
    if (X < 4.0) return {4.0, true};
    return {X, false};
}

std::string diagnostics_csv(std::span<const ZeroDiagnostic> rows) {
    std::string out = "gamma,reP,remainder,r1,r2,r3,r4,eta\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", r.gamma,
                      r.reP, r.remainder, r.parts.r1, r.parts.r2, r.parts.r3, r.parts.r4,
                      r.parts.eta);
        out += buf;
    }
    return out;
}

}  // namespace lzlab
