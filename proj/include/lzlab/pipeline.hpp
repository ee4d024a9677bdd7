#pragma once

/**
 * @file pipeline.hpp
 * @brief End-to-end runs behind the command-line tool.
 *
 * Every run returns a JSON document that embeds the resolved configuration,
 * the library version, the seed, and the exact X, Omega and K used. Only
 * the `zeros` document reports cache status; none carry timestamps, so the
 * other runs give byte-identical output for identical configurations.
 */

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lzlab/dirpoly.hpp"
#include "lzlab/zeros.hpp"

namespace lzlab {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kCodeVersion = "lzlab-1.0.0";

struct RunConfig {
    double T = 10000.0;
    std::vector<std::string> characters = {"4.1", "3.1"};
    std::vector<double> coefficients = {1.0, 1.0};
    std::string x_policy = "paper-default";  // or a real number
    std::uint64_t seed = 1;
    std::size_t mc_samples = 100000;
    std::vector<double> omega_grid = {0.0, 0.05, 0.1, 0.2};
    std::string omega_policy = "paper-default";  // Omega = Psi(T)^2, or a real number
    int ell_max = 12;
    std::vector<double> c_grid = {0.05, 0.1, 0.25, 0.5};
    double audit_tol = 1e-6;
    bool with_arg = false;
    std::filesystem::path output_dir;  // empty: no files written
    std::filesystem::path cache_dir;   // empty: zeros are not cached

    // ConfigError on T < 100, mismatched or empty lists, bad selectors.
    void validate() const;
};

// Flat `key = value` text; lists comma-separated; `#` starts a comment.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json config_json(const RunConfig& cfg);

std::vector<DirichletCharacter> resolve_characters(const RunConfig& cfg);
XChoice resolve_X(const RunConfig& cfg);
CombinationSpec resolve_spec(const RunConfig& cfg);

struct CachedZeros {
    ZeroSet zeros;
    std::string status;  // "computed", "cache hit", "recomputed (...)", "uncached"
    std::filesystem::path file;
};

// Zeros of zeta ("zeta") or L(., chi) (owner = selector) up to T, through the
// cache directory when one is given. A cache whose checksum does not match
// its metadata raises NumericalError naming the first bad line.
CachedZeros cached_zeros(const std::string& owner, double T,
                         const std::filesystem::path& cache_dir);

// 64-bit FNV-1a, used as the cache checksum.
std::uint64_t fnv1a64(const std::string& data);

nlohmann::json run_zeros(const RunConfig& cfg);
nlohmann::json run_clt(const RunConfig& cfg);
nlohmann::json run_independence(const RunConfig& cfg);
nlohmann::json run_model(const RunConfig& cfg);
nlohmann::json run_fourier(const RunConfig& cfg);
nlohmann::json run_audit(const RunConfig& cfg);

}  // namespace lzlab
