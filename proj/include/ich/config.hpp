#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ich/dynamics.hpp"
#include "ich/nonlinearity.hpp"
#include "ich/problem.hpp"

namespace ich {

// Flat key-value run configuration with [section] headers, parsed totally:
// every malformed input yields a ConfigError with a line number, unknown
// keys are rejected.
struct RunConfig {
    // [problem]
    int dimension = 1;
    int n = 32;
    double epsilon = 1.0;
    std::vector<double> f_coeffs; // constant term first; empty = f == 0
    std::string g_preset = "zero";
    std::vector<double> g_coeffs; // used when g_preset == "coeffs"

    // [initial]
    std::string u_preset = "zero";
    std::vector<double> u_coeffs;
    std::string v_preset = "zero";
    std::vector<double> v_coeffs;
    double amplitude = 1.0;

    // [integrator]
    std::string scheme = "imex"; // imex | reference
    double dt = 1e-3;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double max_dt = 0.0;
    double T = 10.0;
    int record_every = 1;
    int checkpoint_every = 0;
    int trace_every = 1;
    bool keep_traces = false;

    // [experiment]
    double L = -1.0; // < 0: select_L from the validated lambda
    double L0 = 0.0;
    int lowpass_m = 0; // 0: n/4
    double t0 = 0.0;
    double beta = 0.5;
    std::vector<double> eps_list;
    std::vector<int> n_list;
    std::vector<double> gap_list;
    int seed_count = 8;
    std::uint64_t rng_seed = 42;
    double equilibria_tol = 1e-11;
    double fit_floor_rel = 1e-8; // split decay-fit floor relative to peak |w|
    double fit_t0 = 0.0;
    double fit_t1 = 0.0; // 0: auto window
    std::string catalog; // equilibria JSON for the distance column
    double parabolic_dt = 2e-4;

    // [output]
    std::string out_dir = "out";
    std::string prefix = "run";
    std::vector<std::string> observers; // empty: defaults

    std::string source_text; // raw config echo for provenance
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// Builders from a parsed config (run assumption validation on f).
NonlinearityModel build_nonlinearity(const RunConfig& rc);
ProblemConfig build_problem(const RunConfig& rc, const NonlinearityModel& f);
State build_initial_state(const RunConfig& rc);
IntegratorConfig build_integrator(const RunConfig& rc);

// Named coefficient presets (amplitude-scaled, seeded where random).
SpectralField make_preset_field(const std::string& preset, const std::vector<double>& coeffs,
                                const DomainSpec& dom, int n, double amplitude,
                                std::uint64_t rng_seed, std::uint64_t stream);

} // namespace ich
