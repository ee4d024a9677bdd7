#include "lzlab/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "lzlab/distlab.hpp"
#include "lzlab/error.hpp"
#include "lzlab/leval.hpp"
#include "lzlab/randmodel.hpp"

namespace lzlab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_real(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size() || !std::isfinite(x)) {
        throw ConfigError("config: '" + key + "' expects a real number, got '" + v + "'");
    }
    return x;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    unsigned long long x = 0;
    try {
        x = std::stoull(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size() || v.front() == '-') {
        throw ConfigError("config: '" + key + "' expects a nonnegative integer, got '" + v + "'");
    }
    return x;
}

std::vector<double> parse_reals(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& item : split_list(v)) out.push_back(parse_real(key, item));
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: '" + key + "' expects true or false, got '" + v + "'");
}

double resolve_policy(const std::string& key, const std::string& policy) {
    return parse_real(key, policy);
}

double resolve_omega(const RunConfig& cfg) {
    if (cfg.omega_policy == "paper-default") {
        const double psi = psi_of_T(cfg.T);
        return psi * psi;
    }
    const double omega = resolve_policy("omega_max", cfg.omega_policy);
    if (!(omega > 0.0)) throw ConfigError("config: omega_max must be positive");
    return omega;
}

json header(const std::string& command, const RunConfig& cfg) {
    const auto x = resolve_X(cfg);
    const double psi = psi_of_T(cfg.T);
    return {{"command", command},
            {"version", kVersion},
            {"seed", cfg.seed},
            {"config", config_json(cfg)},
            {"X", x.X},
            {"x_floor_applied", x.floor_applied},
            {"Omega", resolve_omega(cfg)},
            {"K", cfg.ell_max},
            {"K_asymptotic_formula", 2.0 * std::floor(std::pow(psi, 6))},
            {"psi_T", psi}};
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

void emit(const RunConfig& cfg, const std::string& name, const json& doc) {
    if (cfg.output_dir.empty()) return;
    fs::create_directories(cfg.output_dir);
    write_text(cfg.output_dir / (name + ".json"), doc.dump(2) + "\n");
}

std::string file_safe(const std::string& owner) {
    std::string s = owner;
    for (char& c : s) {
        if (c == '.') c = '_';
    }
    return s;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_17g(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_hex(std::uint64_t x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

ZeroSet compute_zeros(const std::string& owner, double T) {
    if (owner == "zeta") return find_zeros_zeta(T);
    return find_zeros_L(character_from_selector(owner), T);
}

double z_value(const std::string& owner, double t) {
    if (owner == "zeta") return zeta_Z(t);
    return hardy_Z(character_from_selector(owner), t);
}

// Names the first line of a cache file that fails to parse, is out of order,
// or is not a sign change of the Z function.
[[noreturn]] void diagnose_cache(const fs::path& file, const std::string& text,
                                 const std::string& owner, double T, std::size_t expected_count) {
    const std::string where = "zero cache " + file.string() + ": checksum mismatch; ";
    ZeroSet parsed = [&] {
        try {
            return parse_zeros_csv(text, T, owner, kRefineTolerance);
        } catch (const std::exception& e) {
            throw NumericalError(where + e.what());
        }
    }();
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        if (std::abs(z_value(owner, parsed[i])) > 1e-4) {
            throw NumericalError(where + "line " + std::to_string(i + 2) + ": " +
                                 format_17g(parsed[i]) + " is not a zero");
        }
    }
    throw NumericalError(where + "metadata lists " + std::to_string(expected_count) +
                         " ordinates, file has " + std::to_string(parsed.size()));
}

std::vector<double> ordinates_of(const ZeroSet& z) {
    return {z.ordinates().begin(), z.ordinates().end()};
}

double sample_variance(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace

void RunConfig::validate() const {
    if (!(T >= 100.0)) throw ConfigError("config: T must be >= 100");
    if (characters.empty()) throw ConfigError("config: empty character list");
    if (coefficients.empty()) throw ConfigError("config: empty coefficient list");
    if (characters.size() != coefficients.size()) {
        throw ConfigError("config: " + std::to_string(characters.size()) + " characters but " +
                          std::to_string(coefficients.size()) + " coefficients");
    }
    for (const auto& s : characters) character_from_selector(s);
    if (x_policy != "paper-default") resolve_policy("X", x_policy);
    if (omega_policy != "paper-default") resolve_omega(*this);
    if (ell_max < 1) throw ConfigError("config: ell_max must be >= 1");
    if (mc_samples < kMcMinSamples) throw ConfigError("config: mc_samples must be >= 1000");
    for (double c : c_grid) {
        if (!(c > 0.0 && c < 1.0)) throw ConfigError("config: c_grid values must lie in (0, 1)");
    }
    if (!(audit_tol > 0.0)) throw ConfigError("config: audit_tol must be positive");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (key == "T") cfg.T = parse_real(key, v);
        else if (key == "characters") cfg.characters = split_list(v);
        else if (key == "coefficients") cfg.coefficients = parse_reals(key, v);
        else if (key == "X") cfg.x_policy = v;
        else if (key == "seed") cfg.seed = parse_u64(key, v);
        else if (key == "mc_samples") cfg.mc_samples = parse_u64(key, v);
        else if (key == "omega_grid") cfg.omega_grid = parse_reals(key, v);
        else if (key == "omega_max") cfg.omega_policy = v;
        else if (key == "ell_max") cfg.ell_max = static_cast<int>(parse_u64(key, v));
        else if (key == "c_grid") cfg.c_grid = parse_reals(key, v);
        else if (key == "audit_tol") cfg.audit_tol = parse_real(key, v);
        else if (key == "with_arg") cfg.with_arg = parse_bool(key, v);
        else if (key == "output_dir") cfg.output_dir = v;
        else if (key == "cache_dir") cfg.cache_dir = v;
        else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return cfg;
}

RunConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

json config_json(const RunConfig& cfg) {
    return {{"T", cfg.T},
            {"characters", cfg.characters},
            {"coefficients", cfg.coefficients},
            {"X", cfg.x_policy},
            {"seed", cfg.seed},
            {"mc_samples", cfg.mc_samples},
            {"omega_grid", cfg.omega_grid},
            {"omega_max", cfg.omega_policy},
            {"ell_max", cfg.ell_max},
            {"c_grid", cfg.c_grid},
            {"audit_tol", cfg.audit_tol},
            {"with_arg", cfg.with_arg}};
}

std::vector<DirichletCharacter> resolve_characters(const RunConfig& cfg) {
    std::vector<DirichletCharacter> out;
    for (const auto& s : cfg.characters) out.push_back(character_from_selector(s));
    return out;
}

XChoice resolve_X(const RunConfig& cfg) {
    if (cfg.x_policy == "paper-default") return default_X(cfg.T);
    const double X = resolve_policy("X", cfg.x_policy);
    if (!(X > 1.0)) throw ConfigError("config: X must exceed 1");
    return {X, false};
}

CombinationSpec resolve_spec(const RunConfig& cfg) {
    return CombinationSpec(cfg.coefficients, resolve_characters(cfg), resolve_X(cfg).X);
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

CachedZeros cached_zeros(const std::string& owner, double T, const fs::path& cache_dir) {
    // Fresh results go through the cache text format as well, so downstream
    // output does not depend on whether the zeros came from disk.
    if (cache_dir.empty()) {
        return {parse_zeros_csv(zeros_csv(compute_zeros(owner, T)), T, owner, kRefineTolerance),
                "uncached", {}};
    }
    const fs::path csv = cache_dir / zero_cache_filename(owner, T);
    const fs::path meta = fs::path(csv.string() + ".meta");

    std::string status = "computed";
    if (fs::exists(csv) && fs::exists(meta)) {
        std::map<std::string, std::string> kv;
        std::istringstream in(read_text(meta));
        std::string line;
        while (std::getline(in, line)) {
            const auto eq = line.find('=');
            if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
        }
        if (kv["owner"] == owner && kv["T"] == format_17g(T) && kv["code_version"] == kCodeVersion) {
            const std::string text = read_text(csv);
            std::size_t count = 0;
            try {
                count = std::stoull(kv["count"]);
            } catch (const std::exception&) {
                throw NumericalError("zero cache " + meta.string() + ": malformed count");
            }
            if (format_hex(fnv1a64(text)) != kv["checksum"]) diagnose_cache(csv, text, owner, T, count);
            ZeroSet z = parse_zeros_csv(text, T, owner, kRefineTolerance);
            if (z.size() != count) diagnose_cache(csv, text, owner, T, count);
            return {std::move(z), "cache hit", csv};
        }
        status = "recomputed (stale metadata)";
    } else if (fs::exists(csv)) {
        status = "recomputed (missing metadata)";
    }

    fs::create_directories(cache_dir);
    const std::string text = zeros_csv(compute_zeros(owner, T));
    ZeroSet z = parse_zeros_csv(text, T, owner, kRefineTolerance);
    write_text(csv, text);
    write_text(meta, "owner=" + owner + "\nT=" + format_17g(T) + "\ncode_version=" + kCodeVersion +
                         "\ncount=" + std::to_string(z.size()) +
                         "\nchecksum=" + format_hex(fnv1a64(text)) + "\n");
    return {std::move(z), status, csv};
}

json run_zeros(const RunConfig& cfg) {
    cfg.validate();
    json doc = header("zeros", cfg);
    json caches = json::array();
    std::vector<std::string> owners = {"zeta"};
    for (const auto& chi : resolve_characters(cfg)) {
        if (!chi.primitive()) {
            throw ConfigError("zeros: character " + chi.selector() + " is not primitive");
        }
        owners.push_back(chi.selector());
    }
    for (const auto& owner : owners) {
        const auto c = cached_zeros(owner, cfg.T, cfg.cache_dir);
        json entry = {{"owner", owner},
                      {"T", cfg.T},
                      {"count", c.zeros.size()},
                      {"status", c.status},
                      {"file", c.file.string()}};
        if (owner == "zeta") entry["riemann_von_mangoldt"] = riemann_von_mangoldt(cfg.T);
        if (!c.zeros.empty()) entry["first"] = c.zeros[0];
        caches.push_back(entry);
    }
    doc["caches"] = caches;
    emit(cfg, "zeros", doc);
    return doc;
}

json run_clt(const RunConfig& cfg) {
    cfg.validate();
    const CombinationSpec spec = resolve_spec(cfg);
    const ZeroSet zeros = cached_zeros("zeta", cfg.T, cfg.cache_dir).zeros;
    const auto gammas = ordinates_of(zeros);
    std::vector<std::vector<LValueSample>> lvals;
    for (const auto& chi : spec.characters()) {
        lvals.push_back(log_abs_L_bulk(chi, gammas, cfg.with_arg));
    }
    const auto report = clt_report(lvals, spec, cfg.T, default_clt_grid());

    // Remainder second moment at the top of the admissible window, X = T^{1/16}.
    const double X_moment = std::pow(cfg.T, 1.0 / 16.0);
    const CombinationSpec moment_spec(cfg.coefficients, resolve_characters(cfg), X_moment);
    const auto moment = moment_diagnostic(moment_spec, zeros, lvals, 1, MomentMode::remainder);

    json doc = header("clt", cfg);
    doc["zero_count"] = zeros.size();
    doc["normalization_formula"] = "sqrt((sum a_j^2) / 2 * log log T)";
    doc["report"] = to_json(report);
    doc["variance_ratio"] = sample_variance(report.samples);
    doc["moment_proxy"] = {{"X", X_moment},
                           {"k", 1},
                           {"value", moment.value},
                           {"used", moment.used},
                           {"excluded", moment.excluded}};
    emit(cfg, "clt", doc);
    if (!cfg.output_dir.empty()) {
        for (std::size_t j = 0; j < lvals.size(); ++j) {
            write_text(cfg.output_dir / ("lvalues_" + file_safe(cfg.characters[j]) + ".csv"),
                       lvalues_csv(lvals[j]));
        }
    }
    return doc;
}

json run_independence(const RunConfig& cfg) {
    cfg.validate();
    const auto chis = resolve_characters(cfg);
    if (chis.size() != 2) throw ConfigError("independence: exactly two characters are required");
    if (chis[0] == chis[1]) throw ConfigError("independence: characters must be distinct");
    for (const auto& chi : chis) {
        if (!chi.primitive()) {
            throw ConfigError("independence: character " + chi.selector() + " is not primitive");
        }
    }
    const ZeroSet zeros = cached_zeros("zeta", cfg.T, cfg.cache_dir).zeros;
    const auto gammas = ordinates_of(zeros);
    const auto l1 = log_abs_L_bulk(chis[0], gammas), l2 = log_abs_L_bulk(chis[1], gammas);
    const auto rects = rectangle_grid(default_joint_edges());
    const auto report = independence_report(l1, l2, rects, cfg.T);
    const auto control = independence_report(l1, l1, rects, cfg.T);

    json doc = header("independence", cfg);
    doc["zero_count"] = zeros.size();
    doc["report"] = to_json(report);
    doc["excluded"] = report.excluded;
    doc["dependence_control_max_gap"] = control.max_gap;
    emit(cfg, "independence", doc);
    return doc;
}

json run_model(const RunConfig& cfg) {
    cfg.validate();
    const CombinationSpec spec = resolve_spec(cfg);
    const auto samples = sample_reP(spec, cfg.seed, cfg.mc_samples);
    const auto n = static_cast<double>(samples.size());

    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= n;
    double m2 = 0.0, m4 = 0.0;
    for (double x : samples) {
        const double d = (x - mean) * (x - mean);
        m2 += d;
        m4 += d * d;
    }
    const double variance = m2 / (n - 1.0);
    const double variance_stderr = std::sqrt(std::max(0.0, m4 / n - (m2 / n) * (m2 / n)) / n);
    const auto d = moment2_decomposition(spec);

    // |Re P|^k averages against (c k Psi)^{k/2}, c fitted at k = 2.
    const double psi = prime_sum_psi(spec.X());
    auto abs_moment = [&](int k) {
        double s = 0.0;
        for (double x : samples) s += std::pow(std::abs(x), k);
        return s / n;
    };
    const double c_hat = abs_moment(2) / (2.0 * psi);
    json moments = json::array();
    for (int k : {2, 4, 6}) {
        const double value = abs_moment(k);
        const double bound = std::pow(c_hat * k * psi, 0.5 * k);
        moments.push_back({{"k", k}, {"value", value}, {"bound", bound}, {"within", value <= bound}});
    }

    json charfn = json::array();
    std::string charfn_csv = "omega,re,im,stderr_re,stderr_im\n";
    for (double omega : cfg.omega_grid) {
        const cplx exact = charfn_J(spec, omega, std::nullopt, 0);
        const auto mc = mc_charfn(spec, omega, std::nullopt, 0, cfg.seed, cfg.mc_samples);
        charfn.push_back({{"omega", omega},
                          {"exact", {exact.real(), exact.imag()}},
                          {"mc", {mc.mean.real(), mc.mean.imag()}},
                          {"stderr", {mc.stderr_re, mc.stderr_im}}});
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g\n", omega, mc.mean.real(),
                      mc.mean.imag(), mc.stderr_re, mc.stderr_im);
        charfn_csv += buf;
    }

    json doc = header("model", cfg);
    doc["prime_cutoff"] = spec.cutoff();
    doc["Psi"] = psi;
    doc["sample_count"] = samples.size();
    doc["sample_mean"] = mean;
    doc["sample_variance"] = variance;
    doc["variance_stderr"] = variance_stderr;
    doc["exact_moment2"] = d.direct;
    doc["variance_z"] = variance_stderr > 0.0 ? (variance - d.direct) / variance_stderr : 0.0;
    doc["decomposition"] = {{"diagonal", d.diagonal},
                            {"cross", d.cross},
                            {"ramified", d.ramified},
                            {"total", d.total},
                            {"self_consistency", std::abs(d.total - d.direct)}};
    doc["abs_moments"] = moments;
    doc["c_hat"] = c_hat;
    doc["charfn"] = charfn;
    emit(cfg, "model", doc);
    if (!cfg.output_dir.empty()) {
        write_text(cfg.output_dir / "model_samples.csv", samples_csv(samples));
        write_text(cfg.output_dir / "model_charfn.csv", charfn_csv);
    }
    return doc;
}

json run_fourier(const RunConfig& cfg) {
    cfg.validate();
    const CombinationSpec spec = resolve_spec(cfg);
    const ZeroSet zeros = cached_zeros("zeta", cfg.T, cfg.cache_dir).zeros;
    CharFnConfig cf{resolve_omega(cfg), cfg.ell_max, cfg.omega_grid};
    for (double w : cf.omega_grid) {
        if (w < 0.0 || w > cf.omega_max) {
            throw ConfigError("fourier: omega " + format_17g(w) + " outside [0, Omega]");
        }
    }
    const auto rows = fourier_side_by_side(spec, zeros, cf);
    json doc = header("fourier", cfg);
    doc["zero_count"] = zeros.size();
    doc["rows"] = to_json(rows);
    emit(cfg, "fourier", doc);
    return doc;
}

json run_audit(const RunConfig& cfg) {
    cfg.validate();
    const ZeroSet zeta = cached_zeros("zeta", cfg.T, cfg.cache_dir).zeros;
    const auto gammas = ordinates_of(zeta);
    const double X = resolve_X(cfg).X;
    json per_char = json::array();
    for (const auto& chi : resolve_characters(cfg)) {
        if (!chi.primitive()) {
            throw ConfigError("audit: character " + chi.selector() + " is not primitive");
        }
        // zeros above T keep eta honest for ordinates near the top
        const ZeroSet wide = cached_zeros(chi.selector(), cfg.T + kEtaMargin, cfg.cache_dir).zeros;
        const ZeroSet l_zeros = wide.truncated(cfg.T);
        const auto coincidences = hypothesis_D_audit(zeta, l_zeros, cfg.audit_tol);
        const auto profile = hypothesis_H_profile(zeta, l_zeros, cfg.c_grid, cfg.T);

        const auto lvals = log_abs_L_bulk(chi, gammas);
        std::vector<ZeroDiagnostic> rows(gammas.size());
        double sums[4] = {0.0, 0.0, 0.0, 0.0}, max_abs_rem = 0.0, min_eta = kInf;
        std::size_t used = 0;
        for (std::size_t i = 0; i < gammas.size(); ++i) {
            const double reP = poly_P_chi(chi, X, gammas[i]).real();
            const auto parts = remainder_breakdown(chi, X, gammas[i], wide);
            const double rem = lvals[i].near_L_zero ? std::nan("") : lvals[i].log_abs - reP;
            rows[i] = {gammas[i], reP, rem, parts};
            min_eta = std::min(min_eta, parts.eta);
            if (std::isnan(rem)) continue;
            ++used;
            sums[0] += parts.r1;
            sums[1] += parts.r2;
            sums[2] += parts.r3;
            sums[3] += parts.r4;
            max_abs_rem = std::max(max_abs_rem, std::abs(rem));
        }
        const double denom = used > 0 ? static_cast<double>(used) : 1.0;
        json pairs = json::array();
        for (const auto& c : coincidences) {
            pairs.push_back({{"zeta", c.zeta_ordinate}, {"L", c.l_ordinate}, {"distance", c.distance}});
        }
        per_char.push_back({{"character", chi.selector()},
                            {"l_zero_count", l_zeros.size()},
                            {"hypothesis_D", {{"tolerance", cfg.audit_tol}, {"coincidences", pairs}}},
                            {"hypothesis_H", {{"c_grid", cfg.c_grid}, {"fraction", profile}}},
                            {"remainder",
                             {{"mean_r1", sums[0] / denom},
                              {"mean_r2", sums[1] / denom},
                              {"mean_r3", sums[2] / denom},
                              {"mean_r4", sums[3] / denom},
                              {"max_abs_remainder", max_abs_rem},
                              {"min_eta", min_eta},
                              {"used", used}}}});
        if (!cfg.output_dir.empty()) {
            fs::create_directories(cfg.output_dir);
            write_text(cfg.output_dir / ("diagnostics_" + file_safe(chi.selector()) + ".csv"),
                       diagnostics_csv(rows));
        }
    }
    json doc = header("audit", cfg);
    doc["zero_count"] = zeta.size();
    doc["characters"] = per_char;
    emit(cfg, "audit", doc);
    return doc;
}

}  // namespace lzlab
