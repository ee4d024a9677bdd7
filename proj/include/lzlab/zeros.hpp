#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lzlab/characters.hpp"

namespace lzlab {

enum class Provenance { computed, loaded };

std::string to_string(Provenance p);

// Sorted ordinates of nontrivial zeros of one L-function up to a height.
class ZeroSet {
public:
    // Validates: strictly increasing, all in (0, height].
    ZeroSet(std::vector<double> ordinates, double height, std::string owner,
            Provenance provenance, double precision);

    std::span<const double> ordinates() const { return ordinates_; }
    std::size_t size() const { return ordinates_.size(); }
    bool empty() const { return ordinates_.empty(); }
    double operator[](std::size_t i) const { return ordinates_[i]; }
    double height() const { return height_; }
    const std::string& owner() const { return owner_; }
    Provenance provenance() const { return provenance_; }
    double precision() const { return precision_; }

    // Number of ordinates <= t.
    std::size_t count_up_to(double t) const;
    // The zeros up to a lower height (same owner and provenance).
    ZeroSet truncated(double height) const;

private:
    std::vector<double> ordinates_;
    double height_;
    std::string owner_;
    Provenance provenance_;
    double precision_;
};

// Below this height Z(t) is evaluated through Euler-Maclaurin.
inline constexpr double kRiemannSiegelThreshold = 200.0;
inline constexpr double kZetaScanStep = 0.05;
inline constexpr double kLScanStep = 0.04;
inline constexpr double kRefineTolerance = 1e-9;

// Riemann-Siegel theta function (asymptotic expansion, t >= 1).
double riemann_siegel_theta(double t);

// Hardy Z function of zeta.
double zeta_Z(double t);
// Riemann-Siegel formula with the C0..C4 correction terms; t >= 10.
double zeta_Z_riemann_siegel(double t, int correction_terms = 5);
// exp(i theta(t)) zeta(1/2 + it) with zeta by Euler-Maclaurin.
double zeta_Z_euler_maclaurin(double t);

// (T/2pi) log(T/2pi) - T/2pi + 7/8, T > 2pi.
double riemann_von_mangoldt(double T);

ZeroSet find_zeros_zeta(double T);

// Zeros of L(s, chi) via sign changes of the Hardy-type Z_chi. Primitive chi only.
ZeroSet find_zeros_L(const DirichletCharacter& chi, double T);

struct EtaResult {
    double eta;
    double nearest;
    bool boundary_warning;  // zero list does not reach gamma + kEtaMargin
};
inline constexpr double kEtaMargin = 5.0;

// min over the set of |gamma - gamma_chi|.
EtaResult eta_chi(double gamma, const ZeroSet& zeros);

struct Coincidence {
    double zeta_ordinate;
    double l_ordinate;
    double distance;
};

// Pairs with |gamma - gamma_chi| < tol.
std::vector<Coincidence> hypothesis_D_audit(const ZeroSet& zeta_zeros, const ZeroSet& l_zeros,
                                            double tol);

// For each C, the fraction of zeta ordinates <= T with an L-ordinate within C / log T.
std::vector<double> hypothesis_H_profile(const ZeroSet& zeta_zeros, const ZeroSet& l_zeros,
                                         std::span<const double> c_grid, double T);

// Zero cache CSV: header `gamma`, one ordinate per line, 12 significant digits.
std::string zeros_csv(const ZeroSet& zeros);
std::string zero_cache_filename(const std::string& owner, double T);
// Parses the cache CSV; throws NumericalError naming the first bad line.
ZeroSet parse_zeros_csv(const std::string& text, double height, const std::string& owner,
                        double precision);

}  // namespace lzlab
