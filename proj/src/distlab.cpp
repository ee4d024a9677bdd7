#include "lzlab/distlab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lzlab/error.hpp"
#include "lzlab/primes.hpp"
#include "lzlab/quadrature.hpp"

namespace lzlab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_aligned(std::span<const LValueSample> a, std::span<const LValueSample> b) {
    if (a.size() != b.size()) {
        throw DomainError("alignment error: sample lists have lengths " + std::to_string(a.size()) +
                          " and " + std::to_string(b.size()));
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i].gamma - b[i].gamma) > 1e-9 * std::max(1.0, std::abs(a[i].gamma))) {
            throw DomainError("alignment error: ordinates differ at index " + std::to_string(i));
        }
    }
}

bool in_cell(double v, double lo, double hi) { return v > lo && v <= hi; }

}  // namespace

double G_func(double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("G_func: u must lie in [0, 1]");
    if (u == 0.0) return 2.0 / kPi;
    if (u == 1.0) return 0.0;
    // sin(pi u) through the nearer endpoint keeps cot accurate near u = 1
    const double s = u <= 0.5 ? std::sin(kPi * u) : std::sin(kPi * (1.0 - u));
    return 2.0 * u / kPi + 2.0 * u * (1.0 - u) * std::cos(kPi * u) / s;
}

double F_omega(double Omega, double x) {
    if (!(Omega > 0.0)) throw DomainError("F_omega: Omega must be positive");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return x > 0.0 ? 1.0 : -1.0;
    const double ax = std::abs(x);
    const double c = 2.0 * kPi * ax * Omega;
    // u = w / Omega
    auto integrand = [c](double u) {
        if (u < 1e-8) return c * G_func(0.0);
        return G_func(u) * std::sin(c * u) / u;
    };
    const int panels = static_cast<int>(std::min(1e5, std::ceil(4.0 * ax * Omega) + 1.0));
    const auto q = adaptive_gauss_kronrod(integrand, 0.0, 1.0, kFOmegaTolerance, panels);
    if (!q.converged) {
        throw NumericalError("F_omega: quadrature did not converge (Omega=" + std::to_string(Omega) +
                             ", x=" + std::to_string(x) + ")");
    }
    return x > 0.0 ? q.value : -q.value;
}

double indicator_approx(double A, double B, double Omega, double x) {
    if (!(A < B)) throw DomainError("indicator_approx: requires A < B");
    return 0.5 * F_omega(Omega, x - A) - 0.5 * F_omega(Omega, x - B);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw DomainError("EmpiricalCdf: empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    const auto k = std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
    return static_cast<double>(k) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::left(double x) const {
    const auto k = std::lower_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
    return static_cast<double>(k) / static_cast<double>(sorted_.size());
}

double ks_distance(const EmpiricalCdf& cdf, const std::function<double(double)>& reference) {
    double d = 0.0;
    const auto s = cdf.sorted();
    const auto n = static_cast<double>(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i + 1 < s.size() && s[i + 1] == s[i]) continue;
        const double r = reference(s[i]);
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, std::abs(hi - r), std::abs(cdf.left(s[i]) - r)});
    }
    constexpr int kGrid = 512;
    for (int k = 0; k < kGrid; ++k) {
        const double x = -5.0 + 10.0 * k / (kGrid - 1);
        d = std::max(d, std::abs(cdf(x) - reference(x)));
    }
    return d;
}

std::vector<double> default_clt_grid() {
    std::vector<double> g;
    for (int k = -6; k <= 6; ++k) g.push_back(0.5 * k);
    return g;
}

DistributionReport distribution_report(std::vector<double> normalized, double normalization,
                                       std::size_t excluded, std::span<const double> grid) {
    if (grid.size() < 2) throw DomainError("distribution_report: grid needs two endpoints");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw DomainError("distribution_report: grid not increasing");
    }
    DistributionReport r;
    r.sample_count = normalized.size();
    r.normalization = normalization;
    r.grid.assign(grid.begin(), grid.end());
    r.excluded = excluded;
    const EmpiricalCdf cdf(normalized);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        r.empirical.push_back(cdf(grid[i + 1]) - cdf(grid[i]));
        r.gaussian.push_back(normal_cdf(grid[i + 1]) - normal_cdf(grid[i]));
    }
    r.ks = ks_distance(cdf, normal_cdf);
    r.samples = std::move(normalized);
    return r;
}

double clt_normalization(const CombinationSpec& spec, double T) {
    if (!(T > std::exp(1.0))) throw DomainError("clt_normalization: T must exceed e");
    const double a2 = spec.coefficient_norm2();
    if (!(a2 > 0.0)) throw DomainError("clt_normalization: all coefficients are zero");
    return std::sqrt(0.5 * a2 * std::log(std::log(T)));
}

DistributionReport clt_report(std::span<const std::vector<LValueSample>> lvals,
                              const CombinationSpec& spec, double T,
                              std::span<const double> grid) {
    if (lvals.size() != spec.size()) {
        throw DomainError("clt_report: expected one sample list per character");
    }
    for (std::size_t j = 1; j < lvals.size(); ++j) check_aligned(lvals[0], lvals[j]);
    const double norm = clt_normalization(spec, T);
    std::vector<double> values;
    std::size_t excluded = 0;
    const std::size_t n = lvals.empty() ? 0 : lvals[0].size();
    for (std::size_t i = 0; i < n; ++i) {
        double L = 0.0;
        bool flagged = false;
        for (std::size_t j = 0; j < spec.size(); ++j) {
            flagged = flagged || lvals[j][i].near_L_zero;
            L += spec.coefficients()[j] * lvals[j][i].log_abs;
        }
        if (flagged) {
            ++excluded;
            continue;
        }
        values.push_back(L / norm);
    }
    if (values.empty()) throw DomainError("clt_report: no unflagged samples");
    return distribution_report(std::move(values), norm, excluded, grid);
}

std::vector<double> default_joint_edges() { return {-kInf, -0.5, 0.5, kInf}; }

std::vector<Rectangle> rectangle_grid(std::span<const double> edges) {
    std::vector<Rectangle> out;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
            out.push_back({edges[i], edges[i + 1], edges[j], edges[j + 1]});
        }
    }
    return out;
}

JointReport joint_report(std::span<const double> x, std::span<const double> y,
                         std::span<const Rectangle> rectangles) {
    if (x.size() != y.size()) throw DomainError("alignment error: joint samples differ in length");
    if (x.empty()) throw DomainError("joint_report: empty sample");
    JointReport r;
    r.rectangles.assign(rectangles.begin(), rectangles.end());
    const auto n = static_cast<double>(x.size());
    for (const auto& rect : rectangles) {
        std::size_t both = 0, in_x = 0, in_y = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const bool a = in_cell(x[i], rect.a1, rect.b1), b = in_cell(y[i], rect.a2, rect.b2);
            in_x += a;
            in_y += b;
            both += a && b;
        }
        const double joint = static_cast<double>(both) / n;
        const double product = (static_cast<double>(in_x) / n) * (static_cast<double>(in_y) / n);
        r.joint.push_back(joint);
        r.product.push_back(product);
        r.max_gap = std::max(r.max_gap, std::abs(joint - product));
    }
    return r;
}

JointReport independence_report(std::span<const LValueSample> lvals1,
                                std::span<const LValueSample> lvals2,
                                std::span<const Rectangle> rectangles, double T) {
    check_aligned(lvals1, lvals2);
    if (!(T > std::exp(1.0))) throw DomainError("independence_report: T must exceed e");
    const double norm = std::sqrt(0.5 * std::log(std::log(T)));
    std::vector<double> x, y;
    std::size_t excluded = 0;
    for (std::size_t i = 0; i < lvals1.size(); ++i) {
        if (lvals1[i].near_L_zero || lvals2[i].near_L_zero) {
            ++excluded;
            continue;
        }
        x.push_back(lvals1[i].log_abs / norm);
        y.push_back(lvals2[i].log_abs / norm);
    }
    auto r = joint_report(x, y, rectangles);
    r.excluded = excluded;
    return r;
}

std::vector<FourierRow> fourier_side_by_side(const CombinationSpec& spec, const ZeroSet& zeros,
                                             const CharFnConfig& cfg) {
    cfg.validate();
    const double T = zeros.height();
    const auto N = static_cast<double>(zeros.size());
    std::vector<double> reP(zeros.size());
    for (std::size_t i = 0; i < zeros.size(); ++i) reP[i] = poly_P_L(spec, zeros[i]).real();
    const auto primes = prime_table(spec.cutoff());

    std::vector<FourierRow> rows;
    for (double omega : cfg.omega_grid) {
        FourierRow row{};
        row.omega = omega;
        for (double v : reP) row.lhs += std::polar(1.0, 2.0 * kPi * omega * v);
        row.main = N * charfn_J(spec, omega, std::nullopt, 0);
        for (std::uint64_t q : primes) {
            const double log_q = std::log(static_cast<double>(q));
            for (int ell = 1; ell <= cfg.ell_max; ++ell) {
                const double weight = log_q * std::exp(-0.5 * ell * log_q);
                row.correction += weight * charfn_J_re(spec, omega, q, ell);
            }
        }
        row.correction *= T / kPi;
        row.rhs = row.main - row.correction;
        row.gap = std::abs(row.lhs - row.rhs);
        row.relative_gap = N > 0.0 ? row.gap / N : 0.0;
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json endpoint_json(double x) {
    if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
    return x;
}

nlohmann::json to_json(const DistributionReport& r) {
    nlohmann::json grid = nlohmann::json::array();
    for (double g : r.grid) grid.push_back(endpoint_json(g));
    return {{"sample_count", r.sample_count},
            {"normalization", r.normalization},
            {"grid", grid},
            {"empirical", r.empirical},
            {"gaussian", r.gaussian},
            {"ks", r.ks},
            {"excluded", r.excluded}};
}

nlohmann::json to_json(const JointReport& r) {
    nlohmann::json rects = nlohmann::json::array();
    for (const auto& rect : r.rectangles) {
        // explicit arrays: a leading "-inf" would otherwise turn a pair into an object
        rects.push_back(nlohmann::json::array(
            {nlohmann::json::array({endpoint_json(rect.a1), endpoint_json(rect.b1)}),
             nlohmann::json::array({endpoint_json(rect.a2), endpoint_json(rect.b2)})}));
    }
    return {{"rectangles", rects}, {"joint", r.joint}, {"product", r.product}, {"max_gap", r.max_gap}};
}

nlohmann::json to_json(std::span<const FourierRow> rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        out.push_back({{"omega", r.omega},
                       {"lhs", {r.lhs.real(), r.lhs.imag()}},
                       {"main", {r.main.real(), r.main.imag()}},
                       {"correction", {r.correction.real(), r.correction.imag()}},
                       {"rhs", {r.rhs.real(), r.rhs.imag()}},
                       {"gap", r.gap},
                       {"relative_gap", r.relative_gap}});
    }
    return out;
}

}  // namespace lzlab
