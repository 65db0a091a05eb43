#pragma once

#include <string>

#include <json.hpp>

#include "ich/config.hpp"
#include "ich/dynamics.hpp"

namespace ich {

using ordered_json = nlohmann::ordered_json;

// 17-significant-digit decimal, locale-independent
std::string format_double(double v);

// CSV contract: header row, t first, then the record's columns in their
// declared order; 17 significant digits.
std::string trajectory_csv(const TrajectoryRecord& rec);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Versioned snapshot: {schema_version, config, t, u_coeffs, v_coeffs,
// dissipation_integral}; round-trips byte-identically.
ordered_json snapshot_to_json(const RunConfig& rc, const State& s, double dissipation_integral);
struct Snapshot {
    int schema_version = 1;
    ordered_json config;
    State state;
    double dissipation_integral = 0.0;
};
Snapshot snapshot_from_json(const ordered_json& j, const DomainSpec& dom, int n);

ordered_json config_to_json(const RunConfig& rc);

} // namespace ich
