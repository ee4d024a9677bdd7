#include "lzlab/zeros.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "lzlab/error.hpp"
#include "lzlab/leval.hpp"
#include "lzlab/parallel.hpp"

namespace lzlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Psi(z) = cos(2 pi (z^2 - z - 1/16)) / cos(2 pi z); entire.
cplx rs_psi(cplx z) {
    return std::cos(2.0 * kPi * (z * z - z - 1.0 / 16.0)) / std::cos(2.0 * kPi * z);
}

// Derivatives Psi^{(k)}(p), k = 0..12, from the Cauchy integral on |z - p| = 1/2
// sampled at nodes that avoid the real axis.
std::array<double, 13> rs_psi_derivatives(double p) {
    constexpr int kNodes = 48;
    constexpr double kRadius = 0.5;
    std::array<cplx, 13> coef{};
    for (int j = 0; j < kNodes; ++j) {
        const double phi = 2.0 * kPi * (j + 0.5) / kNodes;
        const cplx u = std::polar(kRadius, phi);
        const cplx f = rs_psi(p + u);
        const cplx inv = 1.0 / u;
        cplx w = f;
        for (int k = 0; k <= 12; ++k) {
            coef[k] += w;
            w *= inv;
        }
    }
    std::array<double, 13> d{};
    double factorial = 1.0;
    for (int k = 0; k <= 12; ++k) {
        if (k > 0) factorial *= k;
        d[k] = factorial * coef[k].real() / kNodes;
    }
    return d;
}

// Brent's bracketing root finder; f(a), f(b) of opposite sign.
double brent_root(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                  double tol) {
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

// Sign changes of f on a uniform grid over [lo, hi], refined to tol.
std::vector<double> scan_sign_changes(const std::function<double(double)>& f, double lo, double hi,
                                      double step, double tol) {
    const auto n_steps = static_cast<std::size_t>(std::ceil((hi - lo) / step));
    if (n_steps == 0) return {};
    constexpr std::size_t kChunk = 1024;
    const std::size_t n_chunks = (n_steps + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> found(n_chunks);
    auto grid = [&](std::size_t k) { return k >= n_steps ? hi : lo + static_cast<double>(k) * step; };
    parallel_for(n_chunks, [&](std::size_t c) {
        const std::size_t k0 = c * kChunk, k1 = std::min(n_steps, k0 + kChunk);
        double t_prev = grid(k0), f_prev = f(t_prev);
        for (std::size_t k = k0 + 1; k <= k1; ++k) {
            const double t = grid(k), ft = f(t);
            if (f_prev == 0.0 && k == k0 + 1 && t_prev > lo) {
                // an exact grid hit is owned by the chunk that ends there
            } else if (f_prev == 0.0) {
                if (t_prev > lo) found[c].push_back(t_prev);
            } else if ((f_prev < 0.0) != (ft < 0.0) && ft != 0.0) {
                found[c].push_back(brent_root(f, t_prev, t, f_prev, ft, tol));
            }
            if (ft == 0.0 && k == k1 && t <= hi) found[c].push_back(t);
            t_prev = t;
            f_prev = ft;
        }
    });
    std::vector<double> out;
    for (auto& v : found) out.insert(out.end(), v.begin(), v.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string format_g(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

}  // namespace

std::string to_string(Provenance p) { return p == Provenance::computed ? "computed" : "loaded"; }

ZeroSet::ZeroSet(std::vector<double> ordinates, double height, std::string owner,
                 Provenance provenance, double precision)
    : ordinates_(std::move(ordinates)),
      height_(height),
      owner_(std::move(owner)),
      provenance_(provenance),
      precision_(precision) {
    for (std::size_t i = 0; i < ordinates_.size(); ++i) {
        if (!(ordinates_[i] > 0.0 && ordinates_[i] <= height_)) {
            throw DomainError("ZeroSet: ordinate " + std::to_string(ordinates_[i]) +
                              " outside (0, T]");
        }
        if (i > 0 && !(ordinates_[i] > ordinates_[i - 1])) {
            throw DomainError("ZeroSet: ordinates not strictly increasing at index " +
                              std::to_string(i));
        }
    }
}

std::size_t ZeroSet::count_up_to(double t) const {
    return static_cast<std::size_t>(std::upper_bound(ordinates_.begin(), ordinates_.end(), t) -
                                    ordinates_.begin());
}

ZeroSet ZeroSet::truncated(double height) const {
    if (height > height_) throw DomainError("ZeroSet::truncated: height above the set's coverage");
    std::vector<double> sub(ordinates_.begin(), ordinates_.begin() + count_up_to(height));
    return ZeroSet(std::move(sub), height, owner_, provenance_, precision_);
}

double riemann_siegel_theta(double t) {
    const double t2 = t * t;
    return 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0 + 1.0 / (48.0 * t) +
           7.0 / (5760.0 * t * t2) + 31.0 / (80640.0 * t * t2 * t2) +
           127.0 / (430080.0 * t * t2 * t2 * t2);
}

double zeta_Z_riemann_siegel(double t, int correction_terms) {
    t = std::abs(t);
    if (t < 10.0) throw DomainError("zeta_Z_riemann_siegel: requires t >= 10");
    const double tau = std::sqrt(t / (2.0 * kPi));
    const auto N = static_cast<long>(std::floor(tau));
    const double p = tau - static_cast<double>(N);
    const double theta = riemann_siegel_theta(t);

    double main = 0.0;
    for (long n = 1; n <= N; ++n) {
        const double ln = std::log(static_cast<double>(n));
        main += std::cos(theta - t * ln) / std::sqrt(static_cast<double>(n));
    }
    main *= 2.0;

    const auto d = rs_psi_derivatives(p);
    const double pi2 = kPi * kPi, pi4 = pi2 * pi2, pi6 = pi4 * pi2, pi8 = pi4 * pi4;
    const std::array<double, 5> C = {
        d[0],
        -d[3] / (96.0 * pi2),
        d[2] / (64.0 * pi2) + d[6] / (18432.0 * pi4),
        -d[1] / (64.0 * pi2) - d[5] / (3840.0 * pi4) - d[9] / (5308416.0 * pi6),
        d[0] / (128.0 * pi2) + 19.0 * d[4] / (24576.0 * pi4) + 11.0 * d[8] / (5898240.0 * pi6) +
            d[12] / (2038431744.0 * pi8),
    };
    double corr = 0.0, tau_pow = 1.0;
    for (int k = 0; k < std::min(correction_terms, 5); ++k) {
        corr += C[k] * tau_pow;
        tau_pow /= tau;
    }
    const double sign = (N - 1) % 2 == 0 ? 1.0 : -1.0;
    return main + sign * corr / std::sqrt(tau);
}

double zeta_Z_euler_maclaurin(double t) {
    static const DirichletCharacter trivial(1, 0);
    return hardy_Z(trivial, std::abs(t));
}

double zeta_Z(double t) {
    return std::abs(t) < kRiemannSiegelThreshold ? zeta_Z_euler_maclaurin(t)
                                                 : zeta_Z_riemann_siegel(t);
}

double riemann_von_mangoldt(double T) {
    if (!(T > 2.0 * kPi)) throw DomainError("riemann_von_mangoldt: requires T > 2 pi");
    const double x = T / (2.0 * kPi);
    return x * std::log(x) - x + 7.0 / 8.0;
}

ZeroSet find_zeros_zeta(double T) {
    constexpr double kStart = 10.0;  // first zero is at 14.13
    if (T <= kStart) return ZeroSet({}, T, "zeta", Provenance::computed, kRefineTolerance);

    auto census_gap = [&](std::size_t count) {
        return std::abs(static_cast<double>(count) - riemann_von_mangoldt(T));
    };
    std::vector<double> found = scan_sign_changes(zeta_Z, kStart, T, kZetaScanStep, kRefineTolerance);
    if (census_gap(found.size()) > 2.0) {
        // backtracking pass on a finer grid
        found = scan_sign_changes(zeta_Z, kStart, T, kZetaScanStep / 4.0, kRefineTolerance);
    }
    if (census_gap(found.size()) > 2.0) {
        // locate the window with the largest deficit against the smooth count
        constexpr double kWindow = 50.0;
        double worst_lo = kStart, worst_hi = T, worst = -1.0;
        for (double lo = kStart; lo < T; lo += kWindow) {
            const double hi = std::min(T, lo + kWindow);
            const double expected = riemann_von_mangoldt(std::max(hi, 7.0)) -
                                    riemann_von_mangoldt(std::max(lo, 7.0));
            const auto got = static_cast<double>(
                std::upper_bound(found.begin(), found.end(), hi) -
                std::upper_bound(found.begin(), found.end(), lo));
            if (expected - got > worst) {
                worst = expected - got;
                worst_lo = lo;
                worst_hi = hi;
            }
        }
        throw NumericalError("find_zeros_zeta: missed zeros (found " + std::to_string(found.size()) +
                             ", expected about " + std::to_string(riemann_von_mangoldt(T)) +
                             "); suspect window [" + format_g(worst_lo) + ", " + format_g(worst_hi) +
                             "]");
    }
    return ZeroSet(std::move(found), T, "zeta", Provenance::computed, kRefineTolerance);
}

ZeroSet find_zeros_L(const DirichletCharacter& chi, double T) {
    if (!chi.primitive()) throw DomainError("find_zeros_L: character must be primitive");
    for (double probe : {1.0, 0.5 * T, T}) {
        if (probe <= 0.0) continue;
        const cplx z = hardy_phase_rotated(chi, probe);
        if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) {
            throw NumericalError("find_zeros_L: root number error for " + chi.selector() +
                                 " at t=" + format_g(probe));
        }
    }
    auto f = [&chi](double t) { return hardy_Z(chi, t); };
    std::vector<double> found = scan_sign_changes(f, 0.0, T, kLScanStep, kRefineTolerance);
    std::erase_if(found, [](double g) { return g <= 0.0; });
    return ZeroSet(std::move(found), T, chi.selector(), Provenance::computed, kRefineTolerance);
}

EtaResult eta_chi(double gamma, const ZeroSet& zeros) {
    if (zeros.empty()) throw DomainError("eta_chi: empty zero set");
    const auto ords = zeros.ordinates();
    const auto it = std::lower_bound(ords.begin(), ords.end(), gamma);
    double best = std::numeric_limits<double>::infinity(), nearest = 0.0;
    if (it != ords.end()) {
        best = *it - gamma;
        nearest = *it;
    }
    if (it != ords.begin() && gamma - *(it - 1) < best) {
        best = gamma - *(it - 1);
        nearest = *(it - 1);
    }
    return {best, nearest, zeros.height() < gamma + kEtaMargin};
}

std::vector<Coincidence> hypothesis_D_audit(const ZeroSet& zeta_zeros, const ZeroSet& l_zeros,
                                            double tol) {
    if (std::abs(zeta_zeros.height() - l_zeros.height()) > 1e-9) {
        throw DomainError("hypothesis_D_audit: zero sets cover different heights");
    }
    std::vector<Coincidence> out;
    const auto ls = l_zeros.ordinates();
    for (double g : zeta_zeros.ordinates()) {
        auto it = std::lower_bound(ls.begin(), ls.end(), g - tol);
        for (; it != ls.end() && *it < g + tol; ++it) {
            const double dist = std::abs(*it - g);
            if (dist < tol) out.push_back({g, *it, dist});
        }
    }
    return out;
}

std::vector<double> hypothesis_H_profile(const ZeroSet& zeta_zeros, const ZeroSet& l_zeros,
                                         std::span<const double> c_grid, double T) {
    const std::size_t n = zeta_zeros.count_up_to(T);
    std::vector<double> nearest(n);
    for (std::size_t i = 0; i < n; ++i) {
        nearest[i] = l_zeros.empty() ? std::numeric_limits<double>::infinity()
                                     : eta_chi(zeta_zeros[i], l_zeros).eta;
    }
    std::vector<double> out;
    out.reserve(c_grid.size());
    for (double C : c_grid) {
        if (!(C > 0.0 && C < 1.0)) throw DomainError("hypothesis_H_profile: C must lie in (0, 1)");
        const double radius = C / std::log(T);
        const auto hits = std::count_if(nearest.begin(), nearest.end(),
                                        [radius](double e) { return e <= radius; });
        out.push_back(n == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(n));
    }
    return out;
}

std::string zeros_csv(const ZeroSet& zeros) {
    std::string out = "gamma\n";
    char buf[64];
    for (double g : zeros.ordinates()) {
        std::snprintf(buf, sizeof buf, "%.12g\n", g);
        out += buf;
    }
    return out;
}

std::string zero_cache_filename(const std::string& owner, double T) {
    return "zeros_" + owner + "_" + format_g(T) + ".csv";
}

ZeroSet parse_zeros_csv(const std::string& text, double height, const std::string& owner,
                        double precision) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::vector<double> ords;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1) {
            if (line != "gamma") {
                throw NumericalError("zero cache: line 1: expected header 'gamma'");
            }
            continue;
        }
        if (line.empty()) continue;
        char* end = nullptr;
        const double g = std::strtod(line.c_str(), &end);
        if (end != line.c_str() + line.size() || !std::isfinite(g)) {
            throw NumericalError("zero cache: line " + std::to_string(lineno) + ": malformed ordinate '" +
                                 line + "'");
        }
        if (!(g > 0.0 && g <= height) || (!ords.empty() && !(g > ords.back()))) {
            throw NumericalError("zero cache: line " + std::to_string(lineno) +
                                 ": ordinate out of order or outside (0, T]");
        }
        ords.push_back(g);
    }
    if (lineno == 0) throw NumericalError("zero cache: line 1: empty file");
    return ZeroSet(std::move(ords), height, owner, Provenance::loaded, precision);
}

}  // namespace lzlab
