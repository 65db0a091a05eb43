#include "ich/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ich/errors.hpp"

namespace ich {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trajectory_csv(const TrajectoryRecord& rec) {
    std::string out = "t";
    for (const auto& c : rec.columns) {
        out += ',';
        out += c;
    }
    out += '\n';
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        out += format_double(rec.times[i]);
        for (std::size_t c = 0; c < rec.scalars.size(); ++c) {
            out += ',';
            out += format_double(rec.scalars[c][i]);
        }
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ordered_json config_to_json(const RunConfig& rc) {
    ordered_json j;
    j["dimension"] = rc.dimension;
    j["n"] = rc.n;
    j["epsilon"] = rc.epsilon;
    j["f"] = rc.f_coeffs;
    j["g_preset"] = rc.g_preset;
    j["g_coeffs"] = rc.g_coeffs;
    j["u_preset"] = rc.u_preset;
    j["u_coeffs"] = rc.u_coeffs;
    j["v_preset"] = rc.v_preset;
    j["v_coeffs"] = rc.v_coeffs;
    j["amplitude"] = rc.amplitude;
    j["scheme"] = rc.scheme;
    j["dt"] = rc.dt;
    j["rel_tol"] = rc.rel_tol;
    j["abs_tol"] = rc.abs_tol;
    j["max_dt"] = rc.max_dt;
    j["T"] = rc.T;
    j["record_every"] = rc.record_every;
    j["checkpoint_every"] = rc.checkpoint_every;
    j["trace_every"] = rc.trace_every;
    j["keep_traces"] = rc.keep_traces;
    j["L"] = rc.L;
    j["L0"] = rc.L0;
    j["lowpass_m"] = rc.lowpass_m;
    j["t0"] = rc.t0;
    j["beta"] = rc.beta;
    j["eps_list"] = rc.eps_list;
    j["n_list"] = rc.n_list;
    j["gap_list"] = rc.gap_list;
    j["seed_count"] = rc.seed_count;
    j["rng_seed"] = rc.rng_seed;
    j["equilibria_tol"] = rc.equilibria_tol;
    j["parabolic_dt"] = rc.parabolic_dt;
    j["observers"] = rc.observers;
    return j;
}

ordered_json snapshot_to_json(const RunConfig& rc, const State& s, double dissipation_integral) {
    ordered_json j;
    j["schema_version"] = 1;
    j["config"] = config_to_json(rc);
    j["t"] = s.t;
    j["u_coeffs"] = s.u.coeffs();
    j["v_coeffs"] = s.v.coeffs();
    j["dissipation_integral"] = dissipation_integral;
    return j;
}

Snapshot snapshot_from_json(const ordered_json& j, const DomainSpec& dom, int n) {
    Snapshot s;
    s.schema_version = j.at("schema_version").get<int>();
    if (s.schema_version != 1) throw IoError("unsupported snapshot schema version");
    s.config = j.at("config");
    SpectralField u(dom, n), v(dom, n);
    auto uc = j.at("u_coeffs").get<std::vector<double>>();
    auto vc = j.at("v_coeffs").get<std::vector<double>>();
    if (uc.size() != u.size() || vc.size() != v.size())
        throw IoError("snapshot coefficient arrays do not match the domain/cutoff");
    u.coeffs() = std::move(uc);
    v.coeffs() = std::move(vc);
    s.state = State(std::move(u), std::move(v), j.at("t").get<double>());
    s.dissipation_integral = j.at("dissipation_integral").get<double>();
    return s;
}

} // namespace ich
