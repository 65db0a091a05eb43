#include "ich.h"

#include <chrono>
#include <cstring>
#include <stdexcept>
#include <string>

#include "ich/commands.hpp"
#include "ich/errors.hpp"
#include "ich/verify.hpp"

struct ich_config {
    ich::RunConfig rc;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int map_exception() {
    try {
        throw;
    } catch (const ich::ConfigError& e) {
        g_last_error = e.what();
        return ICH_ERR_CONFIG;
    } catch (const ich::AssumptionError& e) {
        g_last_error = e.what();
        return ICH_ERR_ASSUMPTION;
    } catch (const ich::IoError& e) {
        g_last_error = e.what();
        return ICH_ERR_IO;
    } catch (const ich::NumericalError& e) {
        g_last_error = e.what();
        return ICH_ERR_NUMERIC;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return ICH_ERR_CONFIG;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return ICH_ERR_CONFIG;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ICH_ERR_NUMERIC;
    } catch (...) {
        g_last_error = "unknown error";
        return ICH_ERR_NUMERIC;
    }
}

using CommandFn = ich::ordered_json (*)(const ich::RunConfig&);

int run_command(const ich_config* cfg, char** report, CommandFn fn) {
    if (cfg == nullptr) {
        g_last_error = "null config handle";
        return ICH_ERR_CONFIG;
    }
    try {
        ich::ordered_json j = fn(cfg->rc);
        if (report != nullptr) *report = dup_string(j.dump(2) + "\n");
        return ICH_OK;
    } catch (...) {
        return map_exception();
    }
}

} // namespace

extern "C" {

const char* ich_version(void) { return "0.1.0"; }

const char* ich_last_error(void) { return g_last_error.c_str(); }

void ich_string_free(char* s) { delete[] s; }

int ich_config_load(const char* path, ich_config** out) {
    if (path == nullptr || out == nullptr) {
        g_last_error = "null argument";
        return ICH_ERR_CONFIG;
    }
    try {
        auto* h = new ich_config{ich::load_config(path)};
        *out = h;
        return ICH_OK;
    } catch (...) {
        return map_exception();
    }
}

int ich_config_parse_text(const char* text, ich_config** out) {
    if (text == nullptr || out == nullptr) {
        g_last_error = "null argument";
        return ICH_ERR_CONFIG;
    }
    try {
        auto* h = new ich_config{ich::parse_config_text(text)};
        *out = h;
        return ICH_OK;
    } catch (...) {
        return map_exception();
    }
}

int ich_config_set_output_dir(ich_config* cfg, const char* dir) {
    if (cfg == nullptr || dir == nullptr) {
        g_last_error = "null argument";
        return ICH_ERR_CONFIG;
    }
    cfg->rc.out_dir = dir;
    return ICH_OK;
}

void ich_config_free(ich_config* cfg) { delete cfg; }

int ich_run_validate(const ich_config* cfg, char** report) {
    return run_command(cfg, report, &ich::run_validate);
}
int ich_run_simulate(const ich_config* cfg, char** report) {
    return run_command(cfg, report, &ich::run_simulate);
}
int ich_run_equilibria(const ich_config* cfg, char** report) {
    return run_command(cfg, report, &ich::run_equilibria);
}
int ich_run_glue(const ich_config* cfg, char** report) {
    return run_command(cfg, report, &ich::run_glue);
}
int ich_run_split(const ich_config* cfg, char** report) {
    return run_command(cfg, report, &ich::run_split);
}
int ich_run_eps_sweep(const ich_config* cfg, char** report) {
    return run_command(cfg, report, &ich::run_eps_sweep);
}
int ich_run_converge(const ich_config* cfg, char** report) {
    return run_command(cfg, report, &ich::run_converge);
}

int ich_verify(double tol_scale, int criterion, char** table) {
    try {
        ich::verify::Options opts;
        opts.tol_scale = tol_scale > 0.0 ? tol_scale : 1.0;
        opts.only_id = criterion;
        auto t0 = std::chrono::steady_clock::now();
        auto results = ich::verify::run_all(opts);
        double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (table != nullptr) *table = dup_string(ich::verify::format_table(results, total));
        if (!ich::verify::all_passed(results)) {
            g_last_error = "verification failed";
            return ICH_ERR_VERIFY;
        }
        return ICH_OK;
    } catch (...) {
        return map_exception();
    }
}

} // extern "C"
