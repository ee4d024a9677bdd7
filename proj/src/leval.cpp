#include "lzlab/leval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "lzlab/error.hpp"
#include "lzlab/parallel.hpp"

namespace lzlab {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2j} / (2j)! for j = 1..12
constexpr std::array<double, kHurwitzTailOrder> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.204484017332394e23,
};

// (e^x - 1) / x
cplx expm1_over(cplx x) {
    if (std::abs(x) < 0.1) {
        cplx term{1.0, 0.0}, sum{1.0, 0.0};
        for (int k = 2; k < 14; ++k) {
            term *= x / static_cast<double>(k);
            sum += term;
        }
        return sum;
    }
    return (std::exp(x) - 1.0) / x;
}

// w^{-s} for real w > 0
inline cplx real_pow_neg(double log_w, cplx s) {
    const double mag = std::exp(-s.real() * log_w);
    const double ang = -s.imag() * log_w;
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

}  // namespace

cplx log_gamma(cplx z) {
    cplx shift_sum{0.0, 0.0};
    cplx w = z;
    while (w.real() < 0.5 || std::abs(w) < 15.0) {
        if (std::abs(w) < 1e-300) throw DomainError("log_gamma: pole");
        shift_sum += std::log(w);
        w += 1.0;
    }
    // Stirling series, B_{2k} / (2k(2k-1))
    static constexpr std::array<double, 8> c = {
        1.0 / 12.0,        -1.0 / 360.0,      1.0 / 1260.0,        -1.0 / 1680.0,
        1.0 / 1188.0,      -691.0 / 360360.0, 1.0 / 156.0,         -3617.0 / 122400.0};
    const cplx inv = 1.0 / w, inv2 = inv * inv;
    cplx series{0.0, 0.0}, p = inv;
    for (double ck : c) {
        series += ck * p;
        p *= inv2;
    }
    return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi) + series - shift_sum;
}

int hurwitz_terms(cplx s) {
    const double need = std::ceil(1.25 * std::abs(s) / kPi);
    return std::max(kHurwitzMinTerms, static_cast<int>(need));
}

HurwitzValue hurwitz_zeta_regularized(cplx s, double a) {
    if (!(a > 0.0 && a <= 1.0)) throw DomainError("hurwitz_zeta: a must lie in (0, 1]");
    if (s.real() < -1.0) throw DomainError("hurwitz_zeta: Re s < -1 is outside the desk range");
    const int N = hurwitz_terms(s);

    cplx head{0.0, 0.0};
    double magnitude = 0.0;
    for (int k = 0; k < N; ++k) {
        const cplx term = real_pow_neg(std::log(k + a), s);
        head += term;
        magnitude += std::abs(term);
    }

    const double w = N + a;
    const double log_w = std::log(w);
    const cplx w_neg_s = real_pow_neg(log_w, s);
    // (w^{1-s} - 1)/(s - 1)
    const cplx reg_tail = -log_w * expm1_over((1.0 - s) * log_w);

    cplx em{0.0, 0.0};
    cplx rising = s;  // s (s+1) ... (s+2j-2)
    cplx wpow = w_neg_s / w;  // w^{-s-2j+1}, j = 1
    const double inv_w2 = 1.0 / (w * w);
    double last = 0.0;
    for (int j = 0; j < kHurwitzTailOrder; ++j) {
        const cplx term = kBernoulliOverFactorial[j] * rising * wpow;
        em += term;
        last = std::abs(term);
        rising *= (s + static_cast<double>(2 * j + 1)) * (s + static_cast<double>(2 * j + 2));
        wpow *= inv_w2;
    }
    const cplx value = head + reg_tail + 0.5 * w_neg_s + em;
    const double rounding = 4.0 * std::numeric_limits<double>::epsilon() *
                            (magnitude + std::abs(reg_tail) + std::abs(value));
    return {value, last + rounding};
}

cplx hurwitz_zeta(cplx s, double a) {
    if (s == cplx{1.0, 0.0}) throw DomainError("hurwitz_zeta: pole at s = 1");
    return hurwitz_zeta_regularized(s, a).value + 1.0 / (s - 1.0);
}

LValue L_value_with_error(const DirichletCharacter& chi, cplx s) {
    const std::uint64_t M = chi.modulus();
    const bool regular = !chi.principal();
    if (!regular && s == cplx{1.0, 0.0}) throw DomainError("L_value: pole of a principal L-function");
    cplx sum{0.0, 0.0};
    double err = 0.0;
    for (std::uint64_t a = 1; a <= M; ++a) {
        const cplx c = chi(static_cast<std::int64_t>(a));
        if (c == cplx{0.0, 0.0}) continue;
        const auto h = hurwitz_zeta_regularized(s, static_cast<double>(a) / static_cast<double>(M));
        sum += c * h.value;
        err += h.error;
        if (!regular) sum += c / (s - 1.0);
    }
    const cplx scale = real_pow_neg(std::log(static_cast<double>(M)), s);
    return {scale * sum, std::abs(scale) * err};
}

cplx L_value(const DirichletCharacter& chi, cplx s) { return L_value_with_error(chi, s).value; }

cplx log_gamma_factor(const DirichletCharacter& chi, cplx s) {
    const cplx half = 0.5 * (s + static_cast<double>(chi.parity()));
    return half * std::log(static_cast<double>(chi.modulus()) / kPi) + log_gamma(half);
}

double functional_equation_residual(const DirichletCharacter& chi, cplx s) {
    const DirichletCharacter dual = conjugate(chi);
    const cplx eps = root_number(chi);
    const cplx lg_s = log_gamma_factor(chi, s);
    const cplx lg_r = log_gamma_factor(dual, 1.0 - s);
    const cplx lhs = std::exp(cplx{0.0, lg_s.imag()}) * L_value(chi, s);
    const cplx rhs = eps * std::exp(lg_r - lg_s.real()) * L_value(dual, 1.0 - s);
    return std::abs(lhs - rhs);
}

cplx completed_L(const DirichletCharacter& chi, cplx s) {
    if (!chi.primitive()) throw DomainError("completed_L: character must be primitive");
    const double residual = functional_equation_residual(chi, s);
    if (residual > 1e-6) {
        throw NumericalError("completed_L: functional equation residual " + std::to_string(residual) +
                             " exceeds 1e-6 for " + chi.selector());
    }
    return std::exp(log_gamma_factor(chi, s)) * L_value(chi, s);
}

cplx hardy_phase_rotated(const DirichletCharacter& chi, double t) {
    const cplx s{0.5, t};
    const double half_eps_arg = 0.5 * std::arg(root_number(chi));
    const double phase = log_gamma_factor(chi, s).imag() - half_eps_arg;
    return std::polar(1.0, phase) * L_value(chi, s);
}

double hardy_Z(const DirichletCharacter& chi, double t) { return hardy_phase_rotated(chi, t).real(); }

LValueSample log_abs_L(const DirichletCharacter& chi, double gamma) {
    const auto L = L_value_with_error(chi, cplx{0.5, gamma});
    LValueSample out;
    out.gamma = gamma;
    out.character = chi.selector();
    const double mag = std::abs(L.value);
    out.log_abs = std::log(mag);
    out.arg = std::numeric_limits<double>::quiet_NaN();
    out.near_L_zero = mag < kNearZeroCutoff;
    out.quality = mag > 0.0 ? L.error / mag : std::numeric_limits<double>::infinity();
    return out;
}

double log_abs_L_reflected(const DirichletCharacter& chi, double gamma) {
    return std::log(std::abs(L_value(conjugate(chi), cplx{0.5, -gamma})));
}

double arg_L(const DirichletCharacter& chi, double gamma) {
    constexpr double kStep = 0.125;
    double sigma = 2.0;
    cplx current = L_value(chi, cplx{sigma, gamma});
    double arg = std::arg(current);  // |L(2+it) - 1| < 1 keeps the principal branch valid
    while (sigma > 0.5) {
        double h = kStep;
        bool accepted = false;
        for (int halvings = 0; halvings <= 3; ++halvings, h *= 0.5) {
            const double next_sigma = std::max(0.5, sigma - h);
            const cplx next = L_value(chi, cplx{next_sigma, gamma});
            if (std::abs(next) < kNearZeroCutoff) break;
            const double delta = std::arg(next / current);
            if (std::abs(delta) < 0.5 * kPi) {
                arg += delta;
                sigma = next_sigma;
                current = next;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            throw NumericalError("arg_L: branch ambiguity at sigma=" + std::to_string(sigma) +
                                 ", gamma=" + std::to_string(gamma) + " for " + chi.selector());
        }
    }
    return arg;
}

std::vector<LValueSample> log_abs_L_bulk(const DirichletCharacter& chi,
                                         std::span<const double> gammas, bool with_arg) {
    std::vector<LValueSample> out(gammas.size());
    parallel_for(gammas.size(), [&](std::size_t i) {
        out[i] = log_abs_L(chi, gammas[i]);
        if (with_arg && !out[i].near_L_zero) out[i].arg = arg_L(chi, gammas[i]);
    });
    return out;
}

std::string lvalues_csv(std::span<const LValueSample> samples) {
    std::string out = "gamma,log_abs,arg,flag\n";
    char buf[128];
    for (const auto& s : samples) {
        if (std::isnan(s.arg)) {
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,nan,%d\n", s.gamma, s.log_abs,
                          s.near_L_zero ? 1 : 0);
        } else {
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%d\n", s.gamma, s.log_abs, s.arg,
                          s.near_L_zero ? 1 : 0);
        }
        out += buf;
    }
    return out;
}

}  // namespace lzlab
