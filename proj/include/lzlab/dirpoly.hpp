#pragma once

/**
 * @file dirpoly.hpp
 * @brief Prime Dirichlet polynomials approximating log |L(rho, chi)|.
 *
 * Everything here is a finite sum over primes (or prime powers) n <= X^2,
 * weighted by the Selberg-type taper w_X. The cutoff floor(X^2) is computed
 * once by prime_cutoff() so that all sums agree on their support.
 */

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lzlab/characters.hpp"
#include "lzlab/leval.hpp"
#include "lzlab/zeros.hpp"

namespace lzlab {

// floor(X^2), nudged so exact squares are not lost to rounding.
std::uint64_t prime_cutoff(double X);

// 1 for n <= X, log(X^2/n)/log X for X < n <= X^2. DomainError for n > X^2.
double weight_w(double X, std::uint64_t n);
// von Mangoldt times weight_w.
double lambda_X(double X, std::uint64_t n);

// sum over p <= X^2 of 1/p.
double prime_sum_psi(double X);
// sum over p <= T of 1/p.
double psi_of_T(double T);

// sum over p <= X^2 of chi(p) p^{-1/2 - i gamma}.
cplx poly_P_chi(const DirichletCharacter& chi, double X, double gamma);

// a_1 log|L(., chi_1)| + ... + a_n log|L(., chi_n)| together with its cutoff X.
// Characters must be primitive and pairwise distinct; X > 1.
class CombinationSpec {
public:
    CombinationSpec(std::vector<double> coefficients, std::vector<DirichletCharacter> characters,
                    double X);

    std::size_t size() const { return coefficients_.size(); }
    std::span<const double> coefficients() const { return coefficients_; }
    std::span<const DirichletCharacter> characters() const { return characters_; }
    double X() const { return X_; }
    std::uint64_t cutoff() const { return prime_cutoff(X_); }
    // a_1 chi_1(n) + ... + a_n chi_n(n)
    cplx combined(std::uint64_t n) const;
    // sum of a_j^2
    double coefficient_norm2() const;

private:
    std::vector<double> coefficients_;
    std::vector<DirichletCharacter> characters_;
    double X_;
};

// sum over p <= X^2 of (a_1 chi_1(p) + ... ) p^{-1/2 - i gamma}.
cplx poly_P_L(const CombinationSpec& spec, double gamma);

// sum_j a_j log|L(rho, chi_j)| - Re P_L(gamma). lvals[j] is the sample for
// chi_j at gamma. DomainError when a sample is flagged as near an L-zero.
double remainder(const CombinationSpec& spec, double gamma, std::span<const LValueSample> lvals);

struct RemainderBreakdown {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
    double r4 = 0.0;
    double E_chi = 0.0;
    double sigma1 = 0.0;  // 1/2 + 4/log X
    double eta = 0.0;
};

// Upper edge of the sigma-integral in r3, in units of 1/log X.
inline constexpr double kR3Cut = 40.0;
inline constexpr double kR3Tolerance = 1e-8;

// The four error terms bounding log|L(rho, chi)| - Re P_chi(gamma).
// Throws NumericalError if the r3 quadrature does not converge.
RemainderBreakdown remainder_breakdown(const DirichletCharacter& chi, double X, double gamma,
                                       const ZeroSet& l_zeros);

enum class MomentMode { remainder, reP };

struct MomentResult {
    double value = 0.0;
    std::size_t used = 0;
    std::size_t excluded = 0;
};

// Default lower exponent delta of the admissible window T^{delta/16k} <= X <= T^{1/16k}.
inline constexpr double kMomentDelta = 0.5;

// remainder mode: (1/N) sum (L(rho) - Re P_L(gamma))^{2k};
// reP mode: (1/N) sum |Re P_L(gamma)|^k, over the zeros with unflagged samples.
// lvals[j] holds the samples for chi_j aligned with `zeros` (ignored in reP mode).
// ConfigError when X leaves the admissible window; k = 0 returns 1.
MomentResult moment_diagnostic(const CombinationSpec& spec, const ZeroSet& zeros,
                               std::span<const std::vector<LValueSample>> lvals, int k,
                               MomentMode mode, double delta = kMomentDelta);

struct XChoice {
    double X = 0.0;
    bool floor_applied = false;  // the X >= 4 floor overrode the formula
};

// X = T^{1/(16 (log log T)^6)}, floored at 4.
XChoice default_X(double T);

struct ZeroDiagnostic {
    double gamma;
    double reP;
    double remainder;
    RemainderBreakdown parts;
};

// CSV `gamma,reP,remainder,r1,r2,r3,r4,eta`.
std::string diagnostics_csv(std::span<const ZeroDiagnostic> rows);

}  // namespace lzlab
