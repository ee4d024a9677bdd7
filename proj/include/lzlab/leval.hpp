#pragma once

/**
 * @file leval.hpp
 * @brief Evaluation of L(s, chi) near the critical line.
 *
 * L(s, chi) = M^{-s} sum_{a=1}^{M} chi(a) zeta(s, a/M), with the Hurwitz zeta
 * function evaluated by Euler-Maclaurin summation. For nonprincipal
 * characters the regularized Hurwitz value zeta(s, a) - 1/(s-1) is used, so
 * the pole at s = 1 cancels exactly and L(1, chi) is finite.
 */

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "lzlab/characters.hpp"

namespace lzlab {

// Euler-Maclaurin parameters. The head length grows with |s| so the
// Bernoulli tail stays convergent at large heights (see hurwitz_terms()).
inline constexpr int kHurwitzMinTerms = 30;
inline constexpr int kHurwitzTailOrder = 12;

// Cutoff below which |L(1/2 + i gamma)| counts as a zero of L.
inline constexpr double kNearZeroCutoff = 1e-10;

// Principal-branch log Gamma(z) for complex z, Re z > -20 away from poles.
cplx log_gamma(cplx z);

// Number of directly summed Hurwitz terms used at s.
int hurwitz_terms(cplx s);

struct HurwitzValue {
    cplx value;
    double error;  // estimated absolute error (truncation + rounding)
};

// zeta(s, a) for a in (0, 1], s != 1. Throws DomainError at the pole or for
// Re s < -1 (outside the desk range).
cplx hurwitz_zeta(cplx s, double a);
// zeta(s, a) - 1/(s - 1); finite at s = 1 where it equals -digamma(a).
HurwitzValue hurwitz_zeta_regularized(cplx s, double a);

struct LValue {
    cplx value;
    double error;
};

LValue L_value_with_error(const DirichletCharacter& chi, cplx s);
cplx L_value(const DirichletCharacter& chi, cplx s);

// log of the gamma factor (M/pi)^{(s+a)/2} Gamma((s+a)/2).
cplx log_gamma_factor(const DirichletCharacter& chi, cplx s);

// Lambda(s, chi) = gamma factor * L(s, chi). Checks the functional equation
// Lambda(s, chi) = eps(chi) Lambda(1-s, conj chi) and throws NumericalError
// when the normalized residual exceeds 1e-6. May underflow for |Im s| > 500.
cplx completed_L(const DirichletCharacter& chi, cplx s);

// |Lambda(s, chi) - eps Lambda(1 - s, conj chi)| / |gamma factor at s|: the
// functional-equation mismatch measured in units of |L(s, chi)|.
double functional_equation_residual(const DirichletCharacter& chi, cplx s);

// Hardy-type function: exp(i*Im log G(s)) L(s, chi) / sqrt(eps) at
// s = 1/2 + i t. Real up to rounding for primitive chi. For the trivial
// character mod 1 this is the Riemann-Siegel Z function.
cplx hardy_phase_rotated(const DirichletCharacter& chi, double t);
double hardy_Z(const DirichletCharacter& chi, double t);

struct LValueSample {
    double gamma = 0.0;
    std::string character;
    double log_abs = 0.0;
    double arg = 0.0;  // NaN unless computed
    double quality = 0.0;
    bool near_L_zero = false;
};

// log |L(1/2 + i gamma, chi)|; flags |L| < kNearZeroCutoff.
LValueSample log_abs_L(const DirichletCharacter& chi, double gamma);
// The same quantity through the functional equation: log |L(1/2 - i gamma, conj chi)|.
double log_abs_L_reflected(const DirichletCharacter& chi, double gamma);

// Continuous arg L(1/2 + i gamma, chi), continued from sigma = 2 along the
// horizontal segment. Throws NumericalError ("branch ambiguity") when a step
// still turns by >= pi/2 after three halvings.
double arg_L(const DirichletCharacter& chi, double gamma);

// log_abs_L at many ordinates, order preserved; optionally with arg_L.
std::vector<LValueSample> log_abs_L_bulk(const DirichletCharacter& chi,
                                         std::span<const double> gammas, bool with_arg = false);

// CSV `gamma,log_abs,arg,flag` with 12 significant digits.
std::string lvalues_csv(std::span<const LValueSample> samples);

}  // namespace lzlab
