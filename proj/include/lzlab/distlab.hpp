#pragma once

/**
 * @file distlab.hpp
 * @brief Beurling-Selberg approximation and distribution reports.
 */

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include <json.hpp>

#include "lzlab/dirpoly.hpp"
#include "lzlab/leval.hpp"
#include "lzlab/randmodel.hpp"
#include "lzlab/zeros.hpp"

namespace lzlab {

// G(u) = 2u/pi + 2u(1-u) cot(pi u) on [0, 1], with G(0) = 2/pi and G(1) = 0.
double G_func(double u);

inline constexpr double kFOmegaTolerance = 1e-9;

// F_Omega(x) = int_0^Omega G(w/Omega) sin(2 pi x w) dw / w. Odd in x.
// Throws NumericalError if the quadrature does not converge.
double F_omega(double Omega, double x);

// (1/2) F_Omega(x - A) - (1/2) F_Omega(x - B); A or B may be infinite.
double indicator_approx(double A, double B, double Omega, double x);

// Standard normal CDF.
double normal_cdf(double x);

// Right-continuous step CDF of a sample.
class EmpiricalCdf {
public:
    // DomainError for an empty sample.
    explicit EmpiricalCdf(std::vector<double> samples);
    double operator()(double x) const;
    // Left limit F(x-).
    double left(double x) const;
    std::span<const double> sorted() const { return sorted_; }
    std::size_t size() const { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

// sup |F_hat - reference| over the sample points (both one-sided limits) and
// 512 equally spaced points of [-5, 5].
double ks_distance(const EmpiricalCdf& cdf, const std::function<double(double)>& reference);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct DistributionReport {
    std::size_t sample_count = 0;
    double normalization = 0.0;
    std::vector<double> grid;       // cell endpoints; cells are (grid[i], grid[i+1]]
    std::vector<double> empirical;  // one probability per cell
    std::vector<double> gaussian;
    double ks = 0.0;
    std::size_t excluded = 0;
    // Normalized samples; not serialized.
    std::vector<double> samples;
};

// -3, -2.5, ..., 3
std::vector<double> default_clt_grid();

// Report for already-normalized samples.
DistributionReport distribution_report(std::vector<double> normalized, double normalization,
                                       std::size_t excluded,
                                       std::span<const double> grid);

// sqrt((1/2)(sum a_j^2) log log T)
double clt_normalization(const CombinationSpec& spec, double T);

// sum_j a_j log|L(rho, chi_j)| / clt_normalization over aligned sample lists,
// skipping (and counting) flagged ordinates. DomainError on misalignment.
DistributionReport clt_report(std::span<const std::vector<LValueSample>> lvals,
                              const CombinationSpec& spec, double T,
                              std::span<const double> grid);

struct Rectangle {
    double a1, b1;  // (a1, b1] for the first statistic
    double a2, b2;  // (a2, b2] for the second
};

struct JointReport {
    std::vector<Rectangle> rectangles;
    std::vector<double> joint;
    std::vector<double> product;
    double max_gap = 0.0;
    std::size_t excluded = 0;  // not serialized
};

// {-inf, -0.5, 0.5, inf}
std::vector<double> default_joint_edges();
// All products of consecutive-edge cells.
std::vector<Rectangle> rectangle_grid(std::span<const double> edges);

JointReport joint_report(std::span<const double> x, std::span<const double> y,
                         std::span<const Rectangle> rectangles);

// log|L(rho, chi_j)| / sqrt((1/2) log log T) for j = 1, 2, flagged ordinates excluded.
JointReport independence_report(std::span<const LValueSample> lvals1,
                                std::span<const LValueSample> lvals2,
                                std::span<const Rectangle> rectangles, double T);

struct FourierRow {
    double omega;
    cplx lhs;        // sum over zeros of exp(2 pi i w Re P_L(gamma))
    cplx main;       // N J_0(w)
    cplx correction; // (T/pi) sum_q sum_l (log q / q^{l/2}) Re-variant integral
    cplx rhs;        // main - correction
    double gap;      // |lhs - rhs|
    double relative_gap;  // gap / N
};

std::vector<FourierRow> fourier_side_by_side(const CombinationSpec& spec, const ZeroSet& zeros,
                                             const CharFnConfig& cfg);

// Infinite endpoints are written as the strings "-inf" / "inf".
nlohmann::json endpoint_json(double x);
nlohmann::json to_json(const DistributionReport& r);
nlohmann::json to_json(const JointReport& r);
nlohmann::json to_json(std::span<const FourierRow> rows);

}  // namespace lzlab
