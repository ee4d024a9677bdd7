#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lzlab/error.hpp"
#include "lzlab/pipeline.hpp"

using namespace lzlab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("lzlab_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

RunConfig small_config() {
    RunConfig cfg;
    cfg.T = 100.0;
    cfg.mc_samples = 2000;
    return cfg;
}

}  // namespace

TEST(Config, ParsesAllKeys) {
    const auto cfg = parse_config(R"(# run settings
T = 5000
characters = 4.1, 5.2   # two characters
coefficients = 1, -0.5
X = 7.5
seed = 99
mc_samples = 5000
omega_grid = 0, 0.3
omega_max = 2.5
ell_max = 6
c_grid = 0.1, 0.2
audit_tol = 1e-7
with_arg = true
)");
    EXPECT_EQ(cfg.T, 5000.0);
    EXPECT_EQ(cfg.characters, (std::vector<std::string>{"4.1", "5.2"}));
    EXPECT_EQ(cfg.coefficients, (std::vector<double>{1.0, -0.5}));
    EXPECT_EQ(cfg.x_policy, "7.5");
    EXPECT_EQ(cfg.seed, 99u);
    EXPECT_EQ(cfg.mc_samples, 5000u);
    EXPECT_EQ(cfg.omega_grid, (std::vector<double>{0.0, 0.3}));
    EXPECT_EQ(cfg.omega_policy, "2.5");
    EXPECT_EQ(cfg.ell_max, 6);
    EXPECT_EQ(cfg.c_grid, (std::vector<double>{0.1, 0.2}));
    EXPECT_EQ(cfg.audit_tol, 1e-7);
    EXPECT_TRUE(cfg.with_arg);
    cfg.validate();
    EXPECT_EQ(resolve_X(cfg).X, 7.5);
    EXPECT_FALSE(resolve_X(cfg).floor_applied);
}

TEST(Config, Defaults) {
    const RunConfig cfg = parse_config("");
    EXPECT_EQ(cfg.T, 1e4);
    EXPECT_EQ(cfg.characters, (std::vector<std::string>{"4.1", "3.1"}));
    EXPECT_EQ(cfg.seed, 1u);
    EXPECT_EQ(cfg.ell_max, 12);
    const auto x = resolve_X(cfg);
    EXPECT_EQ(x.X, 4.0);
    EXPECT_TRUE(x.floor_applied);
}

TEST(Config, Errors) {
    EXPECT_THROW(parse_config("bogus = 1"), ConfigError);
    EXPECT_THROW(parse_config("T 100"), ConfigError);
    EXPECT_THROW(parse_config("T = abc"), ConfigError);
    EXPECT_THROW(parse_config("seed = -3"), ConfigError);
    EXPECT_THROW(parse_config("with_arg = maybe"), ConfigError);
    EXPECT_THROW(parse_config("T = 50").validate(), ConfigError);
    EXPECT_THROW(parse_config("characters =\ncoefficients =").validate(), ConfigError);
    EXPECT_THROW(parse_config("coefficients = 1").validate(), ConfigError);
    EXPECT_THROW(parse_config("characters = 4.7\ncoefficients = 1").validate(), ConfigError);
    EXPECT_THROW(parse_config("mc_samples = 10").validate(), ConfigError);
    EXPECT_THROW(parse_config("X = nope").validate(), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/lzlab.cfg"), ConfigError);
}

TEST(Config, SpecErrors) {
    RunConfig cfg = small_config();
    cfg.characters = {"4.1", "4.1"};
    EXPECT_THROW(resolve_spec(cfg), ConfigError);
    for (const auto& chi : enumerate_characters(8)) {
        if (chi.primitive()) continue;
        cfg.characters = {"3.1", chi.selector()};
        EXPECT_THROW(resolve_spec(cfg), ConfigError) << chi.selector();
    }
}

TEST(Pipeline, DeterministicOutput) {
    const auto cfg = small_config();
    EXPECT_EQ(run_model(cfg).dump(), run_model(cfg).dump());
    EXPECT_EQ(run_clt(cfg).dump(), run_clt(cfg).dump());
    RunConfig other = cfg;
    other.seed = 2;
    EXPECT_NE(run_model(cfg).dump(), run_model(other).dump());
}

TEST(Pipeline, HeaderFields) {
    const auto doc = run_model(small_config());
    for (const char* key : {"command", "version", "seed", "config", "X", "x_floor_applied", "Omega", "K",
                            "K_asymptotic_formula", "psi_T"}) {
        EXPECT_TRUE(doc.contains(key)) << key;
    }
    EXPECT_EQ(doc["command"], "model");
    EXPECT_EQ(doc["version"], kVersion);
    EXPECT_LT(doc["decomposition"]["self_consistency"].get<double>(), 1e-12);
}

TEST(Pipeline, IndependenceRejectsBadCharacterLists) {
    RunConfig cfg = small_config();
    cfg.characters = {"4.1", "4.1"};
    EXPECT_THROW(run_independence(cfg), ConfigError);
    cfg.characters = {"4.1"};
    cfg.coefficients = {1.0};
    EXPECT_THROW(run_independence(cfg), ConfigError);
    cfg.characters = {"4.1", "3.1", "5.2"};
    cfg.coefficients = {1.0, 1.0, 1.0};
    EXPECT_THROW(run_independence(cfg), ConfigError);
}

TEST(Pipeline, EmptyCoefficientsRejected) {
    RunConfig cfg = small_config();
    cfg.characters.clear();
    cfg.coefficients.clear();
    EXPECT_THROW(run_model(cfg), ConfigError);
}

TEST(Pipeline, FourierOmegaRange) {
    RunConfig cfg = small_config();
    cfg.omega_policy = "0.1";
    cfg.omega_grid = {0.0, 0.2};
    EXPECT_THROW(run_fourier(cfg), ConfigError);
    cfg.omega_grid = {0.0, 0.05};
    const auto doc = run_fourier(cfg);
    EXPECT_EQ(doc["rows"][0]["gap"].get<double>(), 0.0);
}

TEST(Pipeline, WritesOutputFiles) {
    RunConfig cfg = small_config();
    cfg.output_dir = fresh_dir("out");
    run_model(cfg);
    EXPECT_TRUE(fs::exists(cfg.output_dir / "model.json"));
    EXPECT_TRUE(fs::exists(cfg.output_dir / "model_samples.csv"));
    EXPECT_TRUE(fs::exists(cfg.output_dir / "model_charfn.csv"));
    run_clt(cfg);
    EXPECT_TRUE(fs::exists(cfg.output_dir / "lvalues_4_1.csv"));
}

TEST(Cache, HitAfterCompute) {
    const auto dir = fresh_dir("cache_hit");
    const auto first = cached_zeros("zeta", 100.0, dir);
    EXPECT_EQ(first.status, "computed");
    EXPECT_EQ(first.zeros.size(), 29u);
    const auto second = cached_zeros("zeta", 100.0, dir);
    EXPECT_EQ(second.status, "cache hit");
    ASSERT_EQ(second.zeros.size(), 29u);
    for (std::size_t i = 0; i < 29; ++i) EXPECT_NEAR(second.zeros[i], first.zeros[i], 1e-9);
    EXPECT_EQ(cached_zeros("zeta", 100.0, {}).status, "uncached");
}

TEST(Cache, StaleAndMissingMetadata) {
    const auto dir = fresh_dir("cache_meta");
    const auto c = cached_zeros("4.1", 100.0, dir);
    const fs::path meta = c.file.string() + ".meta";
    std::string m = slurp(meta);
    m.replace(m.find("lzlab-"), 6, "other-");
    spit(meta, m);
    EXPECT_EQ(cached_zeros("4.1", 100.0, dir).status, "recomputed (stale metadata)");
    fs::remove(meta);
    EXPECT_EQ(cached_zeros("4.1", 100.0, dir).status, "recomputed (missing metadata)");
    EXPECT_EQ(cached_zeros("4.1", 100.0, dir).status, "cache hit");
}

TEST(Cache, CorruptLineIsNamed) {
    const auto dir = fresh_dir("cache_corrupt");
    const auto c = cached_zeros("zeta", 100.0, dir);
    std::string text = slurp(c.file);
    // line 5 holds the fourth ordinate
    std::istringstream in(text);
    std::string line, out;
    for (int n = 1; std::getline(in, line); ++n) out += (n == 5 ? "30.4x2" : line) + "\n";
    spit(c.file, out);
    try {
        cached_zeros("zeta", 100.0, dir);
        FAIL() << "corrupt cache accepted";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos) << e.what();
    }
}

TEST(Cache, WrongZeroIsNamed) {
    const auto dir = fresh_dir("cache_wrong");
    const auto c = cached_zeros("zeta", 100.0, dir);
    std::istringstream in(slurp(c.file));
    std::string line, out;
    // 33.0 parses and keeps the order between 32.93 and 37.59, but Z(33) is far from 0
    for (int n = 1; std::getline(in, line); ++n) out += (n == 6 ? "33" : line) + "\n";
    spit(c.file, out);
    try {
        cached_zeros("zeta", 100.0, dir);
        FAIL() << "wrong zero accepted";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("line 6"), std::string::npos) << e.what();
    }
}

TEST(Checksum, Fnv1a) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}
