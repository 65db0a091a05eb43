#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "ich.h"

namespace {

const char* kTinyConfig =
    "[problem]\n"
    "dimension = 1\n"
    "n = 8\n"
    "epsilon = 0.5\n"
    "f = 0, -1, 0, 1\n"
    "g = zero\n"
    "[initial]\n"
    "u = mode1\n"
    "[integrator]\n"
    "scheme = imex\n"
    "dt = 1e-2\n"
    "T = 0.2\n"
    "[output]\n"
    "dir = out\n"
    "prefix = capi\n";

struct Handle {
    ich_config* cfg = nullptr;
    ~Handle() {
        if (cfg != nullptr) ich_config_free(cfg);
    }
};

} // namespace

TEST_CASE("version and error strings are always available") {
    CHECK(ich_version() != nullptr);
    CHECK(std::strlen(ich_version()) > 0);
    CHECK(ich_last_error() != nullptr);
}

TEST_CASE("config parse errors map to ICH_ERR_CONFIG with a message") {
    Handle h;
    CHECK(ich_config_parse_text("[problem]\nbogus = 1\n", &h.cfg) == ICH_ERR_CONFIG);
    CHECK(std::strlen(ich_last_error()) > 0);
    CHECK(ich_config_parse_text(nullptr, &h.cfg) == ICH_ERR_CONFIG);
}

TEST_CASE("missing files map to ICH_ERR_IO") {
    Handle h;
    CHECK(ich_config_load("/no/such/file.cfg", &h.cfg) == ICH_ERR_IO);
}

TEST_CASE("validate: acceptance and assumption rejection") {
    Handle good;
    REQUIRE(ich_config_parse_text(kTinyConfig, &good.cfg) == ICH_OK);
    char* report = nullptr;
    CHECK(ich_run_validate(good.cfg, &report) == ICH_OK);
    REQUIRE(report != nullptr);
    CHECK(std::string(report).find("\"lambda\"") != std::string::npos);
    ich_string_free(report);

    std::string bad_text(kTinyConfig);
    auto pos = bad_text.find("f = 0, -1, 0, 1");
    bad_text.replace(pos, std::strlen("f = 0, -1, 0, 1"), "f = 0, 0, 1");
    Handle bad;
    REQUIRE(ich_config_parse_text(bad_text.c_str(), &bad.cfg) == ICH_OK);
    CHECK(ich_run_validate(bad.cfg, nullptr) == ICH_ERR_ASSUMPTION);
}

TEST_CASE("simulate writes artifacts through the C surface") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ich_capi_sim";
    fs::remove_all(dir);
    Handle h;
    REQUIRE(ich_config_parse_text(kTinyConfig, &h.cfg) == ICH_OK);
    REQUIRE(ich_config_set_output_dir(h.cfg, dir.string().c_str()) == ICH_OK);
    char* report = nullptr;
    CHECK(ich_run_simulate(h.cfg, &report) == ICH_OK);
    REQUIRE(report != nullptr);
    ich_string_free(report);
    CHECK(fs::exists(dir / "capi.csv"));
    CHECK(fs::exists(dir / "capi_summary.json"));
    fs::remove_all(dir);
}

TEST_CASE("split with L = 0 is rejected as a config error") {
    std::string text(kTinyConfig);
    text += "[experiment]\nL = 0\n";
    Handle h;
    REQUIRE(ich_config_parse_text(text.c_str(), &h.cfg) == ICH_OK);
    CHECK(ich_run_split(h.cfg, nullptr) == ICH_ERR_CONFIG);
}

TEST_CASE("eps sweep without eps_list is a config error") {
    Handle h;
    REQUIRE(ich_config_parse_text(kTinyConfig, &h.cfg) == ICH_OK);
    CHECK(ich_run_eps_sweep(h.cfg, nullptr) == ICH_ERR_CONFIG);
}
