#include "lzlab/randmodel.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "lzlab/error.hpp"
#include "lzlab/parallel.hpp"
#include "lzlab/primes.hpp"

namespace lzlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

double bessel_series(int ell, double x) {
    const double half = 0.5 * x;
    double term = std::exp(ell * std::log(half) - std::lgamma(ell + 1.0));
    double sum = term;
    const double q = -half * half;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + ell));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > half) break;
    }
    return sum;
}

// Miller's backward recurrence normalized by J_0 + 2 sum J_{2k} = 1.
double bessel_miller(int ell, double x) {
    const double top = std::max(static_cast<double>(ell), x) + 30.0 + 10.0 * std::cbrt(x);
    int m = static_cast<int>(std::ceil(top));
    if (m % 2 != 0) ++m;
    double j_next = 0.0, j_cur = 1e-30, result = 0.0, norm = 0.0;
    for (int k = m; k >= 1; --k) {
        // j_cur = J_k (unnormalized); produce J_{k-1}
        if (k == ell) result = j_cur;
        if (k % 2 == 0) norm += 2.0 * j_cur;
        const double j_prev = (2.0 * k / x) * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        if (std::abs(j_cur) > 1e200) {
            j_cur *= 1e-200;
            j_next *= 1e-200;
            result *= 1e-200;
            norm *= 1e-200;
        }
    }
    norm += j_cur;
    if (ell == 0) result = j_cur;
    return result / norm;
}

double re_P(std::span<const PolarCoefficient> coeffs, std::span<const double> inv_sqrt_p,
            const PhaseAssignment& phases, std::uint64_t index) {
    double sum = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].nu == 0.0) continue;
        const double th = phases.theta(index, coeffs[i].p);
        sum += coeffs[i].nu * std::cos(kTwoPi * (th + coeffs[i].beta)) * inv_sqrt_p[i];
    }
    return sum;
}

std::vector<double> inverse_roots(std::span<const PolarCoefficient> coeffs) {
    std::vector<double> out(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        out[i] = 1.0 / std::sqrt(static_cast<double>(coeffs[i].p));
    }
    return out;
}

const PolarCoefficient& find_prime(std::span<const PolarCoefficient> coeffs, std::uint64_t q) {
    for (const auto& c : coeffs) {
        if (c.p == q) return c;
    }
    throw DomainError("charfn: q = " + std::to_string(q) + " is not a prime <= X^2");
}

// prod over p != skip of J_0(2 pi nu_p w / sqrt p)
double j0_product(std::span<const PolarCoefficient> coeffs, double omega, std::uint64_t skip) {
    double prod = 1.0;
    for (const auto& c : coeffs) {
        if (c.p == skip || c.nu == 0.0) continue;
        prod *= bessel_j(0, kTwoPi * c.nu * omega / std::sqrt(static_cast<double>(c.p)));
    }
    return prod;
}

cplx i_pow(int ell) {
    switch (ell % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double PhaseAssignment::theta(std::uint64_t index, std::uint64_t p) const {
    std::uint64_t h = splitmix64(seed_);
    h = splitmix64(h ^ index);
    h = splitmix64(h ^ (p * kGolden));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double PhaseAssignment::theta_of_integer(std::uint64_t index, std::uint64_t n) const {
    if (n == 0) throw DomainError("theta_of_integer: n must be positive");
    double sum = 0.0;
    for (auto [p, e] : factorize(n)) sum += e * theta(index, p);
    return sum - std::floor(sum);
}

std::vector<PolarCoefficient> polar_coefficients(const CombinationSpec& spec) {
    double scale = 0.0;
    for (double a : spec.coefficients()) scale += std::abs(a);
    std::vector<PolarCoefficient> out;
    for (std::uint64_t p : prime_table(spec.cutoff())) {
        const cplx c = spec.combined(p);
        const double nu = std::abs(c);
        if (nu <= 1e-13 * scale) {
            out.push_back({p, 0.0, 0.0});
            continue;
        }
        double beta = std::arg(c) / kTwoPi;
        if (beta < 0.0) beta += 1.0;
        if (beta >= 1.0) beta = 0.0;
        out.push_back({p, nu, beta});
    }
    return out;
}

std::vector<double> sample_reP(const CombinationSpec& spec, std::uint64_t seed, std::size_t count) {
    if (count == 0) throw DomainError("sample_reP: count must be >= 1");
    const auto coeffs = polar_coefficients(spec);
    const auto inv = inverse_roots(coeffs);
    const PhaseAssignment phases(seed);
    std::vector<double> out(count);
    parallel_for(count, [&](std::size_t i) { out[i] = re_P(coeffs, inv, phases, i); });
    return out;
}

double exact_moment2(const CombinationSpec& spec) {
    double sum = 0.0;
    for (const auto& c : polar_coefficients(spec)) sum += c.nu * c.nu / static_cast<double>(c.p);
    return 0.5 * sum;
}

double cross_term(const DirichletCharacter& chi1, const DirichletCharacter& chi2, double X) {
    if (chi1 == chi2) throw DomainError("cross_term: characters must differ");
    double sum = 0.0;
    for (std::uint64_t p : prime_table(prime_cutoff(X))) {
        const auto n = static_cast<std::int64_t>(p);
        sum += (chi1(n) * std::conj(chi2(n))).real() / static_cast<double>(p);
    }
    return sum;
}

Moment2Decomposition moment2_decomposition(const CombinationSpec& spec) {
    Moment2Decomposition d;
    const auto a = spec.coefficients();
    const auto chis = spec.characters();
    d.diagonal = 0.5 * spec.coefficient_norm2() * prime_sum_psi(spec.X());
    for (std::size_t j = 0; j < spec.size(); ++j) {
        for (std::size_t k = j + 1; k < spec.size(); ++k) {
            d.cross += a[j] * a[k] * cross_term(chis[j], chis[k], spec.X());
        }
        double ram = 0.0;
        for (auto [p, e] : factorize(chis[j].modulus())) {
            if (p <= spec.cutoff()) ram += 1.0 / static_cast<double>(p);
        }
        d.ramified -= 0.5 * a[j] * a[j] * ram;
    }
    d.total = d.diagonal + d.cross + d.ramified;
    d.direct = exact_moment2(spec);
    return d;
}

double bessel_j(int ell, double z) {
    if (ell < 0 || ell > kBesselMaxOrder) {
        throw DomainError("bessel_j: order " + std::to_string(ell) + " outside [0, 200]");
    }
    if (!(std::abs(z) <= kBesselMaxArg)) {
        throw DomainError("bessel_j: |z| = " + std::to_string(std::abs(z)) + " exceeds 1000");
    }
    if (z == 0.0) return ell == 0 ? 1.0 : 0.0;
    const double x = std::abs(z);
    const double v = x <= 12.0 ? bessel_series(ell, x) : bessel_miller(ell, x);
    return (z < 0.0 && ell % 2 == 1) ? -v : v;
}

cplx charfn_J(const CombinationSpec& spec, double omega, std::optional<std::uint64_t> q, int ell) {
    const auto coeffs = polar_coefficients(spec);
    if (!q) {
        if (ell != 0) throw DomainError("charfn_J: ell must be 0 when q is absent");
        return {j0_product(coeffs, omega, 0), 0.0};
    }
    const auto& c = find_prime(coeffs, *q);
    const double jl = bessel_j(ell, kTwoPi * c.nu * omega / std::sqrt(static_cast<double>(c.p)));
    const cplx rot = i_pow(ell) * std::polar(1.0, -kTwoPi * ell * c.beta);
    return rot * jl * j0_product(coeffs, omega, c.p);
}

cplx charfn_J_re(const CombinationSpec& spec, double omega, std::optional<std::uint64_t> q,
                 int ell) {
    if (!q) return charfn_J(spec, omega, q, ell);
    const auto coeffs = polar_coefficients(spec);
    const auto& c = find_prime(coeffs, *q);
    const double jl = bessel_j(ell, kTwoPi * c.nu * omega / std::sqrt(static_cast<double>(c.p)));
    return i_pow(ell) * (std::cos(kTwoPi * ell * c.beta) * jl * j0_product(coeffs, omega, c.p));
}

McEstimate mc_charfn(const CombinationSpec& spec, double omega, std::optional<std::uint64_t> q,
                     int ell, std::uint64_t seed, std::size_t count) {
    if (count < kMcMinSamples) throw DomainError("mc_charfn: count must be >= 1000");
    if (!q && ell != 0) throw DomainError("mc_charfn: ell must be 0 when q is absent");
    const auto coeffs = polar_coefficients(spec);
    if (q) find_prime(coeffs, *q);
    const auto inv = inverse_roots(coeffs);
    const PhaseAssignment phases(seed);
    std::vector<cplx> vals(count);
    parallel_for(count, [&](std::size_t i) {
        const double x = re_P(coeffs, inv, phases, i);
        const double weight = q ? std::cos(kTwoPi * ell * phases.theta(i, *q)) : 1.0;
        vals[i] = weight * std::polar(1.0, kTwoPi * omega * x);
    });
    cplx mean{0.0, 0.0};
    for (const cplx& v : vals) mean += v;
    const auto n = static_cast<double>(count);
    mean /= n;
    double var_re = 0.0, var_im = 0.0;
    for (const cplx& v : vals) {
        var_re += (v.real() - mean.real()) * (v.real() - mean.real());
        var_im += (v.imag() - mean.imag()) * (v.imag() - mean.imag());
    }
    return {mean, std::sqrt(var_re / (n - 1.0) / n), std::sqrt(var_im / (n - 1.0) / n)};
}

void CharFnConfig::validate() const {
    if (!(omega_max > 0.0)) throw DomainError("CharFnConfig: Omega must be positive");
    if (ell_max < 1) throw DomainError("CharFnConfig: K must be >= 1");
}

CharFnConfig default_charfn_config(double T) {
    const double psi = psi_of_T(T);
    return {psi * psi, kDefaultEllMax, {0.0, 0.05, 0.1, 0.2}};
}

std::string samples_csv(std::span<const double> samples) {
    std::string out = "index,value\n";
    char buf[64];
    for (std::size_t i = 0; i < samples.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.12g\n", i, samples[i]);
        out += buf;
    }
    return out;
}

}  // namespace lzlab
