#include "ich/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ich/errors.hpp"
#include "ich/rng.hpp"

namespace ich {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& v, int line) {
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + v + "'", line);
    }
    if (pos != v.size()) throw ConfigError("trailing characters after number '" + v + "'", line);
    return out;
}

long parse_integer(const std::string& v, int line) {
    std::size_t pos = 0;
    long out;
    try {
        out = std::stol(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("expected an integer, got '" + v + "'", line);
    }
    if (pos != v.size()) throw ConfigError("trailing characters after integer '" + v + "'", line);
    return out;
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("expected a boolean, got '" + v + "'", line);
}

std::vector<double> parse_number_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty element in list", line);
        out.push_back(parse_number(item, line));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& v, int line) {
    std::vector<int> out;
    for (double d : parse_number_list(v, line)) {
        if (d != std::floor(d)) throw ConfigError("expected integer list", line);
        out.push_back(static_cast<int>(d));
    }
    return out;
}

std::vector<std::string> parse_name_list(const std::string& v, int line) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty element in list", line);
        out.push_back(item);
    }
    return out;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig rc;
    rc.source_text = text;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError("unterminated section header", line);
            section = trim(s.substr(1, s.size() - 2));
            if (section != "problem" && section != "initial" && section != "integrator" &&
                section != "experiment" && section != "output")
                throw ConfigError("unknown section [" + section + "]", line);
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", line);
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line);
        if (section.empty()) throw ConfigError("key outside any [section]", line);

        if (section == "problem") {
            if (key == "dimension") rc.dimension = static_cast<int>(parse_integer(val, line));
            else if (key == "n") rc.n = static_cast<int>(parse_integer(val, line));
            else if (key == "epsilon") rc.epsilon = parse_number(val, line);
            else if (key == "f") rc.f_coeffs = parse_number_list(val, line);
            else if (key == "g") rc.g_preset = val;
            else if (key == "g_coeffs") { rc.g_preset = "coeffs"; rc.g_coeffs = parse_number_list(val, line); }
            else throw ConfigError("unknown key '" + key + "' in [problem]", line);
        } else if (section == "initial") {
            if (key == "u") rc.u_preset = val;
            else if (key == "u_coeffs") { rc.u_preset = "coeffs"; rc.u_coeffs = parse_number_list(val, line); }
            else if (key == "v") rc.v_preset = val;
            else if (key == "v_coeffs") { rc.v_preset = "coeffs"; rc.v_coeffs = parse_number_list(val, line); }
            else if (key == "amplitude") rc.amplitude = parse_number(val, line);
            else throw ConfigError("unknown key '" + key + "' in [initial]", line);
        } else if (section == "integrator") {
            if (key == "scheme") {
                if (val != "imex" && val != "reference")
                    throw ConfigError("scheme must be imex or reference", line);
                rc.scheme = val;
            }
            else if (key == "dt") rc.dt = parse_number(val, line);
            else if (key == "rel_tol") rc.rel_tol = parse_number(val, line);
            else if (key == "abs_tol") rc.abs_tol = parse_number(val, line);
            else if (key == "max_dt") rc.max_dt = parse_number(val, line);
            else if (key == "T") rc.T = parse_number(val, line);
            else if (key == "record_every") rc.record_every = static_cast<int>(parse_integer(val, line));
            else if (key == "checkpoint_every") rc.checkpoint_every = static_cast<int>(parse_integer(val, line));
            else if (key == "trace_every") rc.trace_every = static_cast<int>(parse_integer(val, line));
            else if (key == "keep_traces") rc.keep_traces = parse_bool(val, line);
            else throw ConfigError("unknown key '" + key + "' in [integrator]", line);
        } else if (section == "experiment") {
            if (key == "L") rc.L = (val == "auto") ? -1.0 : parse_number(val, line);
            else if (key == "L0") rc.L0 = parse_number(val, line);
            else if (key == "lowpass_m") rc.lowpass_m = static_cast<int>(parse_integer(val, line));
            else if (key == "t0") rc.t0 = parse_number(val, line);
            else if (key == "beta") rc.beta = parse_number(val, line);
            else if (key == "eps_list") rc.eps_list = parse_number_list(val, line);
            else if (key == "n_list") rc.n_list = parse_int_list(val, line);
            else if (key == "gap_list") rc.gap_list = parse_number_list(val, line);
            else if (key == "seed_count") rc.seed_count = static_cast<int>(parse_integer(val, line));
            else if (key == "rng_seed") rc.rng_seed = static_cast<std::uint64_t>(parse_integer(val, line));
            else if (key == "equilibria_tol") rc.equilibria_tol = parse_number(val, line);
            else if (key == "fit_floor") rc.fit_floor_rel = parse_number(val, line);
            else if (key == "fit_t0") rc.fit_t0 = parse_number(val, line);
            else if (key == "fit_t1") rc.fit_t1 = parse_number(val, line);
            else if (key == "catalog") rc.catalog = val;
            else if (key == "parabolic_dt") rc.parabolic_dt = parse_number(val, line);
            else throw ConfigError("unknown key '" + key + "' in [experiment]", line);
        } else { // output
            if (key == "dir") rc.out_dir = val;
            else if (key == "prefix") rc.prefix = val;
            else if (key == "observers") rc.observers = parse_name_list(val, line);
            else throw ConfigError("unknown key '" + key + "' in [output]", line);
        }
    }

    if (rc.dimension != 1 && rc.dimension != 2)
        throw ConfigError("dimension must be 1 or 2");
    if (rc.n < 1 || rc.n > (rc.dimension == 1 ? 1024 : 128))
        throw ConfigError("mode cutoff n out of supported range");
    if (!(rc.epsilon > 0.0) || rc.epsilon > 1.0)
        throw ConfigError("epsilon must lie in (0,1]");
    if (!(rc.T >= 0.0)) throw ConfigError("T must be nonnegative");
    if (rc.scheme == "imex" && !(rc.dt > 0.0)) throw ConfigError("dt must be positive");
    if (rc.scheme == "reference" && (!(rc.rel_tol > 0.0) || !(rc.abs_tol > 0.0)))
        throw ConfigError("tolerances must be positive");
    if (rc.record_every < 0 || rc.checkpoint_every < 0 || rc.trace_every < 1)
        throw ConfigError("cadence settings must be nonnegative (trace_every >= 1)");
    if (!(rc.beta > 0.0) || rc.beta > 1.0) throw ConfigError("beta must lie in (0,1]");
    for (double e : rc.eps_list)
        if (!(e > 0.0) || e > 1.0) throw ConfigError("eps_list entries must lie in (0,1]");
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

SpectralField make_preset_field(const std::string& preset, const std::vector<double>& coeffs,
                                const DomainSpec& dom, int n, double amplitude,
                                std::uint64_t rng_seed, std::uint64_t stream) {
    SpectralField out(dom, n);
    auto radial = [&](double s_exp, bool random_signs) {
        CounterRng rng(rng_seed, stream);
        for (std::size_t k = 0; k < out.size(); ++k) {
            double lam = out.eigenvalue_flat(k);
            double mag = std::pow(std::sqrt(lam), -s_exp); // |k|^{-s}
            double sign = random_signs ? (rng.next_double() < 0.5 ? -1.0 : 1.0)
                                       : ((k % 2 == 0) ? 1.0 : -1.0);
            out.coeffs()[k] = amplitude * mag * sign;
        }
    };
    if (preset == "zero") {
        return out;
    } else if (preset == "coeffs") {
        if (coeffs.size() > out.size())
            throw ConfigError("coefficient list longer than the mode cutoff");
        for (std::size_t k = 0; k < coeffs.size(); ++k) out.coeffs()[k] = amplitude * coeffs[k];
    } else if (preset == "mode1") {
        out.coeffs()[0] = amplitude;
    } else if (preset == "mix12") {
        if (dom.dimension == 1) {
            out.set_coeff(ModeIndex::d1(1), 0.5 * amplitude);
            if (n >= 2) out.set_coeff(ModeIndex::d1(2), -0.3 * amplitude);
        } else {
            out.set_coeff(ModeIndex::d2(1, 1), 0.5 * amplitude);
            if (n >= 2) out.set_coeff(ModeIndex::d2(1, 2), -0.3 * amplitude);
        }
    } else if (preset == "smooth") {
        // exponentially decaying tail, alternating signs
        for (std::size_t k = 0; k < out.size(); ++k) {
            double lam = out.eigenvalue_flat(k);
            double mag = std::exp(-std::sqrt(lam) / 4.0);
            out.coeffs()[k] = amplitude * ((k % 2 == 0) ? mag : -mag);
        }
    } else if (preset == "rough11") {
        radial(1.1, true);
    } else if (preset == "rough15") {
        radial(1.5, true);
    } else {
        throw ConfigError("unknown field preset '" + preset + "'");
    }
    return out;
}

NonlinearityModel build_nonlinearity(const RunConfig& rc) {
    DomainSpec dom(rc.dimension);
    return validate_assumptions(rc.f_coeffs, dom.lambda1());
}

ProblemConfig build_problem(const RunConfig& rc, const NonlinearityModel& f) {
    DomainSpec dom(rc.dimension);
    SpectralField g = make_preset_field(rc.g_preset, rc.g_coeffs, dom, rc.n, 1.0, rc.rng_seed, 901);
    ProblemConfig cfg(dom, rc.n, rc.epsilon, std::move(g));
    cfg.L = rc.L >= 0.0 ? rc.L : 0.0; // auto resolved by the command using select_L(f.lambda)
    cfg.L0 = rc.L0;
    (void)f;
    return cfg;
}

State build_initial_state(const RunConfig& rc) {
    DomainSpec dom(rc.dimension);
    SpectralField u =
        make_preset_field(rc.u_preset, rc.u_coeffs, dom, rc.n, rc.amplitude, rc.rng_seed, 11);
    SpectralField v =
        make_preset_field(rc.v_preset, rc.v_coeffs, dom, rc.n, rc.amplitude, rc.rng_seed, 12);
    return State(std::move(u), std::move(v), 0.0);
}

IntegratorConfig build_integrator(const RunConfig& rc) {
    IntegratorConfig icfg;
    icfg.scheme = rc.scheme == "imex" ? IntegratorConfig::Scheme::imex
                                      : IntegratorConfig::Scheme::reference;
    icfg.dt = rc.dt;
    icfg.rel_tol = rc.rel_tol;
    icfg.abs_tol = rc.abs_tol;
    icfg.max_dt = rc.max_dt;
    icfg.record_every = rc.record_every;
    icfg.checkpoint_every = rc.checkpoint_every;
    icfg.trace_every = rc.trace_every;
    icfg.keep_traces = rc.keep_traces;
    return icfg;
}

} // namespace ich
