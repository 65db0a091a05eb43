// Command-line front end over the C API (libich). Subcommands mirror the
// run pipelines; exit codes: 0 ok, 2 config, 3 assumptions, 4 numerical,
// 5 verification, 6 i/o.
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "ich.h"

namespace {

int finish(int code, char* report, bool quiet) {
    if (report != nullptr) {
        if (!quiet) std::fputs(report, stdout);
        ich_string_free(report);
    }
    if (code != ICH_OK) std::fprintf(stderr, "error (%d): %s\n", code, ich_last_error());
    return code;
}

struct LoadedConfig {
    ich_config* handle = nullptr;
    ~LoadedConfig() {
        if (handle != nullptr) ich_config_free(handle);
    }
};

int run_subcommand(const std::string& config_path, const std::string& out_dir, bool quiet,
                   int (*fn)(const ich_config*, char**)) {
    LoadedConfig cfg;
    int code = ich_config_load(config_path.c_str(), &cfg.handle);
    if (code != ICH_OK) return finish(code, nullptr, quiet);
    if (!out_dir.empty()) ich_config_set_output_dir(cfg.handle, out_dir.c_str());
    char* report = nullptr;
    code = fn(cfg.handle, &report);
    return finish(code, report, quiet);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ich: spectral-Galerkin lab for the inertial Cahn-Hilliard equation"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "suppress report output");

    struct Sub {
        const char* name;
        const char* help;
        int (*fn)(const ich_config*, char**);
    };
    const Sub subs[] = {
        {"validate", "check the nonlinearity assumptions and print constants", &ich_run_validate},
        {"simulate", "integrate the Galerkin system; write CSV and snapshots", &ich_run_simulate},
        {"equilibria", "multi-start Newton catalog of stationary solutions", &ich_run_equilibria},
        {"glue", "glued quasi-trajectory residual along a continuation family", &ich_run_glue},
        {"split", "u = v + w splitting with exponential decay fit", &ich_run_split},
        {"eps-sweep", "hyperbolic vs parabolic comparison across epsilon", &ich_run_eps_sweep},
        {"converge", "Galerkin self-convergence study across n", &ich_run_converge},
    };
    for (const auto& s : subs) {
        auto* cmd = app.add_subcommand(s.name, s.help);
        cmd->add_option("config", config_path, "run configuration file")->required();
        cmd->add_option("-o,--out", out_dir, "override the output directory");
        auto fn = s.fn;
        cmd->callback([&, fn] { std::exit(run_subcommand(config_path, out_dir, quiet, fn)); });
    }

    int only = 0;
    double tol_scale = 0.0;
    auto* ver = app.add_subcommand("verify", "run the acceptance suite at desk scale");
    ver->add_option("--only", only, "run a single criterion (1..11)");
    ver->add_option("--tol-scale", tol_scale,
                    "tolerance scale override (test-only; also ICH_VERIFY_TOL_SCALE)");
    ver->callback([&] {
        double scale = tol_scale;
        if (scale <= 0.0) {
            const char* env = std::getenv("ICH_VERIFY_TOL_SCALE");
            scale = env != nullptr ? std::atof(env) : 1.0;
            if (scale <= 0.0) scale = 1.0;
        }
        char* table = nullptr;
        int code = ich_verify(scale, only, &table);
        if (table != nullptr) {
            std::fputs(table, stdout);
            ich_string_free(table);
        }
        if (code != ICH_OK) std::fprintf(stderr, "error (%d): %s\n", code, ich_last_error());
        std::exit(code);
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
