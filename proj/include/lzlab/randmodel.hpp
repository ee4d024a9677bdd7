#pragma once

/**
 * @file randmodel.hpp
 * @brief Random Euler-product model for Re P_L.
 *
 * Each prime p gets an independent uniform phase theta_p in [0, 1), and
 * Re P_L(theta) = sum_p nu_p cos(2 pi (theta_p + beta_p)) / sqrt(p), where
 * a_1 chi_1(p) + ... + a_n chi_n(p) = nu_p exp(2 pi i beta_p). Moments and
 * the characteristic function are available in closed form (the latter as a
 * product of Bessel functions) and by Monte Carlo.
 */

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lzlab/characters.hpp"
#include "lzlab/dirpoly.hpp"

namespace lzlab {

// 64-bit finalizer used to derive every random stream.
std::uint64_t splitmix64(std::uint64_t x);

// theta_p for each sample index, a pure function of (seed, index, p).
class PhaseAssignment {
public:
    explicit PhaseAssignment(std::uint64_t seed) : seed_(seed) {}
    std::uint64_t seed() const { return seed_; }
    double theta(std::uint64_t index, std::uint64_t p) const;
    // theta_n = sum of mu_i theta_{p_i} over n = prod p_i^{mu_i}, reduced mod 1.
    double theta_of_integer(std::uint64_t index, std::uint64_t n) const;

private:
    std::uint64_t seed_;
};

struct PolarCoefficient {
    std::uint64_t p;
    double nu;
    double beta;  // in [0, 1); 0 when nu = 0
};

// One entry per prime p <= X^2.
std::vector<PolarCoefficient> polar_coefficients(const CombinationSpec& spec);

// count draws of Re P_L(theta); draw i uses PhaseAssignment(seed) at index i.
std::vector<double> sample_reP(const CombinationSpec& spec, std::uint64_t seed, std::size_t count);

// (1/2) sum over p <= X^2 of nu_p^2 / p.
double exact_moment2(const CombinationSpec& spec);

struct Moment2Decomposition {
    double diagonal = 0.0;  // (sum a_j^2) Psi / 2
    double cross = 0.0;     // sum_{j<k} a_j a_k cross_term(chi_j, chi_k, X)
    double ramified = 0.0;  // -(1/2) sum_j a_j^2 sum_{p | M_j, p <= X^2} 1/p
    double total = 0.0;     // diagonal + cross + ramified
    double direct = 0.0;    // exact_moment2
};
Moment2Decomposition moment2_decomposition(const CombinationSpec& spec);

// Re sum over p <= X^2 of chi1(p) conj(chi2(p)) / p. DomainError for chi1 = chi2.
double cross_term(const DirichletCharacter& chi1, const DirichletCharacter& chi2, double X);

inline constexpr int kBesselMaxOrder = 200;
inline constexpr double kBesselMaxArg = 1000.0;

// J_ell(z) for integer 0 <= ell <= 200, |z| <= 1000. DomainError outside.
double bessel_j(int ell, double z);

// (i e^{-2 pi i beta_q})^ell J_ell(2 pi nu_q w / sqrt q) prod_{p != q} J_0(2 pi nu_p w / sqrt p).
// With q absent (ell must be 0) this is prod_p J_0(2 pi nu_p w / sqrt p).
cplx charfn_J(const CombinationSpec& spec, double omega, std::optional<std::uint64_t> q, int ell);
// E[exp(2 pi i w Re P) Re(e^{2 pi i ell theta_q})]
//   = i^ell cos(2 pi ell beta_q) J_ell(...) prod_{p != q} J_0(...).
cplx charfn_J_re(const CombinationSpec& spec, double omega, std::optional<std::uint64_t> q,
                 int ell);

struct McEstimate {
    cplx mean;
    double stderr_re = 0.0;
    double stderr_im = 0.0;
};

inline constexpr std::size_t kMcMinSamples = 1000;

// Monte Carlo estimate of E[exp(2 pi i w Re P(theta)) Re(e^{2 pi i ell theta_q})].
McEstimate mc_charfn(const CombinationSpec& spec, double omega, std::optional<std::uint64_t> q,
                     int ell, std::uint64_t seed, std::size_t count);

struct CharFnConfig {
    double omega_max = 1.0;   // Omega
    int ell_max = 12;         // K
    std::vector<double> omega_grid;

    // DomainError unless Omega > 0 and K >= 1.
    void validate() const;
};

inline constexpr int kDefaultEllMax = 12;

// Omega = Psi(T)^2, K = 12, grid {0, 0.05, 0.1, 0.2}.
CharFnConfig default_charfn_config(double T);

// CSV `index,value`.
std::string samples_csv(std::span<const double> samples);

}  // namespace lzlab
