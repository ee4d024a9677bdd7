// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "lzlab/characters.hpp"
#include "lzlab/distlab.hpp"
#include "lzlab/leval.hpp"
#include "lzlab/pipeline.hpp"
#include "lzlab/zeros.hpp"

using namespace lzlab;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string fmt(double x) { return fmt("%.4g", x); }

std::filesystem::path g_cache;

RunConfig base_config(double T) {
    RunConfig cfg;
    cfg.T = T;
    cfg.cache_dir = g_cache;
    return cfg;
}

RunConfig chi4_alone(double T) {
    RunConfig cfg = base_config(T);
    cfg.characters = {"4.1"};
    cfg.coefficients = {1.0};
    return cfg;
}

Outcome ac1() {
    double orth = 0.0, gauss = 0.0;
    for (std::uint64_t M = 1; M <= 200; ++M) {
        const auto chars = enumerate_characters(M);
        const auto phi = static_cast<double>(chars.size());
        // sum_a chi1(a) conj chi2(a) = phi(M) [chi1 = chi2]
        for (std::size_t i = 0; i < chars.size(); ++i) {
            for (std::size_t j = i; j < chars.size(); ++j) {
                cplx s = 0.0;
                for (std::uint64_t a = 0; a < M; ++a) {
                    s += chars[i](static_cast<std::int64_t>(a)) * std::conj(chars[j](static_cast<std::int64_t>(a)));
                }
                orth = std::max(orth, std::abs(s - (i == j ? phi : 0.0)));
            }
        }
        // sum_chi chi(a) conj chi(b) = phi(M) [a = b] for units a, b
        for (std::uint64_t a = 0; a < M; ++a) {
            if (std::gcd(a, M) != 1) continue;
            for (std::uint64_t b = a; b < M; ++b) {
                if (std::gcd(b, M) != 1) continue;
                cplx s = 0.0;
                for (const auto& chi : chars) {
                    s += chi(static_cast<std::int64_t>(a)) * std::conj(chi(static_cast<std::int64_t>(b)));
                }
                orth = std::max(orth, std::abs(s - (a == b ? phi : 0.0)));
            }
        }
        for (const auto& chi : chars) {
            if (!chi.primitive()) continue;
            gauss = std::max(gauss, std::abs(std::norm(gauss_sum(chi)) - static_cast<double>(M)) / M);
        }
    }
    return {orth <= 1e-10 && gauss <= 1e-10,
            "orthogonality max err " + fmt(orth) + ", |tau|^2 rel err " + fmt(gauss)};
}

Outcome ac2() {
    const auto zeta = cached_zeros("zeta", 100.0, g_cache).zeros;
    const double expected[] = {14.134725142, 21.022039639, 25.010857580};
    double err = 0.0;
    for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(zeta[i] - expected[i]));
    const auto chi4 = cached_zeros("4.1", 100.0, g_cache).zeros;
    const double l_err = std::abs(chi4[0] - 6.0209489);
    return {err <= 1e-6 && zeta.size() == 29 && l_err <= 1e-5,
            "zeta err " + fmt(err) + ", N(100) = " + std::to_string(zeta.size()) + ", chi_4 err " +
                fmt(l_err)};
}

Outcome ac3() {
    const DirichletCharacter chi4(4, 1);
    const double e1 = std::abs(L_value(chi4, 1.0) - std::numbers::pi / 4.0);
    const double e2 = std::abs(L_value(chi4, 2.0) - 0.915965594177219015);
    std::vector<DirichletCharacter> prim;
    for (std::uint64_t M = 3; M <= 40; ++M) {
        for (const auto& chi : enumerate_characters(M)) {
            if (chi.primitive()) prim.push_back(chi);
        }
    }
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> sigma(0.0, 1.0), t(-1000.0, 1000.0);
    std::uniform_int_distribution<std::size_t> pick(0, prim.size() - 1);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const cplx s{sigma(rng), t(rng)};
        worst = std::max(worst, functional_equation_residual(prim[pick(rng)], s));
    }
    return {e1 <= 1e-10 && e2 <= 1e-10 && worst <= 1e-6,
            "L(1) err " + fmt(e1) + ", L(2) err " + fmt(e2) + ", FE residual max " + fmt(worst)};
}

json g_model, g_clt_5k, g_clt_10k, g_clt_1k, g_indep, g_fourier_5k, g_fourier_10k;

Outcome ac4() {
    g_model = run_model(base_config(1e4));
    const double z = g_model["variance_z"].get<double>();
    const double sc = g_model["decomposition"]["self_consistency"].get<double>();
    return {std::abs(z) <= 3.0 && sc <= 1e-12,
            "variance " + fmt("%.6f", g_model["sample_variance"].get<double>()) + " vs exact " +
                fmt("%.6f", g_model["exact_moment2"].get<double>()) + " (z = " + fmt(z) +
                "), decomposition err " + fmt(sc)};
}

Outcome ac5() {
    g_clt_5k = run_clt(chi4_alone(5e3));
    g_clt_10k = run_clt(chi4_alone(1e4));
    const double ks5 = g_clt_5k["report"]["ks"].get<double>();
    const double ks10 = g_clt_10k["report"]["ks"].get<double>();
    const double ratio = g_clt_10k["variance_ratio"].get<double>();
    return {ks10 <= 0.20 && ratio >= 0.5 && ratio <= 2.0 && ks10 <= ks5 + 0.05,
            "KS(1e4) " + fmt(ks10) + ", KS(5e3) " + fmt(ks5) + ", variance ratio " + fmt(ratio) +
                ", N = " + std::to_string(g_clt_10k["zero_count"].get<std::size_t>())};
}

Outcome ac6() {
    g_indep = run_independence(base_config(1e4));
    const double gap = g_indep["report"]["max_gap"].get<double>();
    const double control = g_indep["dependence_control_max_gap"].get<double>();
    return {gap <= 0.10 && control >= 0.15,
            "max gap " + fmt(gap) + ", dependence control " + fmt(control)};
}

Outcome ac7() {
    g_clt_1k = run_clt(chi4_alone(1e3));
    const double v1 = g_clt_1k["moment_proxy"]["value"].get<double>();
    const double v5 = g_clt_5k["moment_proxy"]["value"].get<double>();
    const double v10 = g_clt_10k["moment_proxy"]["value"].get<double>();
    return {std::isfinite(v1) && std::isfinite(v10) && v10 <= 4.0 * v1,
            "proxy 1e3 " + fmt(v1) + ", 5e3 " + fmt(v5) + ", 1e4 " + fmt(v10)};
}

Outcome ac8() {
    g_fourier_5k = run_fourier(base_config(5e3));
    g_fourier_10k = run_fourier(base_config(1e4));
    auto rel_at = [](const json& doc, double omega) {
        for (const auto& row : doc["rows"]) {
            if (row["omega"].get<double>() == omega) return row["relative_gap"].get<double>();
        }
        return std::nan("");
    };
    const double gap0 = g_fourier_10k["rows"][0]["gap"].get<double>();
    const double r10 = rel_at(g_fourier_10k, 0.05), r5 = rel_at(g_fourier_5k, 0.05);
    return {g_fourier_10k["K"].get<int>() == 12 && gap0 == 0.0 && r10 <= 2.0 * r5,
            "gap(0) " + fmt(gap0) + ", rel gap(0.05) at 1e4 " + fmt(r10) + ", at 5e3 " + fmt(r5)};
}

Outcome ac9() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> om(0.5, 50.0), xs(-5.0, 5.0);
    double odd = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double Omega = om(rng), x = xs(rng);
        odd = std::max(odd, std::abs(F_omega(Omega, x) + F_omega(Omega, -x)));
    }

    // Indicator of (-1, 1] at points at least 10/Omega from both endpoints.
    const double A = -1.0, B = 1.0;
    auto indicator_error = [&](double Omega, double x) {
        const double exact = (x > A && x <= B) ? 1.0 : 0.0;
        return std::abs(indicator_approx(A, B, Omega, x) - exact);
    };
    double far = 0.0;
    for (double Omega : {10.0, 20.0, 40.0}) {
        for (int i = 0; i < 100; ++i) {
            const double x = xs(rng);
            if (std::min(std::abs(x - A), std::abs(x - B)) < 10.0 / Omega) continue;
            far = std::max(far, indicator_error(Omega, x));
        }
    }

    // Worst error over fixed points, at Omega and 2 Omega.
    const double Omega = 10.0;
    const double points[] = {-3.3, -2.15, 0.0, 0.35, 2.4, 4.1};
    double e1 = 0.0, e2 = 0.0;
    for (double x : points) {
        e1 = std::max(e1, indicator_error(Omega, x));
        e2 = std::max(e2, indicator_error(2.0 * Omega, x));
    }
    const double ratio = e1 / e2;
    return {odd <= 2e-8 && far <= 0.05 && ratio >= 2.0,
            "oddness " + fmt(odd) + ", far-field err " + fmt(far) + ", err ratio Omega/2Omega " +
                fmt(ratio)};
}

Outcome ac10() {
    std::vector<std::string> diffs;
    auto same = [&](const std::string& name, const json& first, const json& again) {
        if (first.dump() != again.dump()) diffs.push_back(name);
    };
    same("model", g_model, run_model(base_config(1e4)));
    same("clt 5e3", g_clt_5k, run_clt(chi4_alone(5e3)));
    same("clt 1e4", g_clt_10k, run_clt(chi4_alone(1e4)));
    same("independence", g_indep, run_independence(base_config(1e4)));
    same("clt 1e3", g_clt_1k, run_clt(chi4_alone(1e3)));
    same("fourier 5e3", g_fourier_5k, run_fourier(base_config(5e3)));
    same("fourier 1e4", g_fourier_10k, run_fourier(base_config(1e4)));
    std::string detail = diffs.empty() ? "7 documents byte-identical" : "differs:";
    for (const auto& d : diffs) detail += " " + d;
    return {diffs.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::string cache;
    app.add_option("--cache", cache, "Zero cache directory");
    CLI11_PARSE(app, argc, argv);
    g_cache = cache;

    struct Check {
        const char* name;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const Check checks[] = {
        {"AC-1", 10.0, ac1},   {"AC-2", 60.0, ac2},   {"AC-3", 30.0, ac3},  {"AC-4", 60.0, ac4},
        {"AC-5", 1800.0, ac5}, {"AC-6", 1800.0, ac6}, {"AC-7", 1800.0, ac7}, {"AC-8", 600.0, ac8},
        {"AC-9", 10.0, ac9},   {"AC-10", 3600.0, ac10},
    };

    int failures = 0;
    for (const auto& c : checks) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budget_seconds) {
            o.pass = false;
            o.detail += ", over time budget";
        }
        failures += !o.pass;
        std::printf("%s %s  %s (%.1f s)\n", c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
