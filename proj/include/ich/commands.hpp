#pragma once

#include "ich/config.hpp"
#include "ich/equilibria.hpp"
#include "ich/io.hpp"

namespace ich {

// Top-level pipelines behind the CLI subcommands. Each writes its
// artifacts under out_dir (created if needed) and returns a summary
// report; errors propagate as the exception types in errors.hpp.
ordered_json run_validate(const RunConfig& rc);
ordered_json run_simulate(const RunConfig& rc);
ordered_json run_equilibria(const RunConfig& rc);
ordered_json run_glue(const RunConfig& rc);
ordered_json run_split(const RunConfig& rc);
ordered_json run_eps_sweep(const RunConfig& rc);
ordered_json run_converge(const RunConfig& rc);

ordered_json catalog_to_json(const EquilibriumCatalog& cat);
std::vector<Equilibrium> catalog_from_json(const ordered_json& j, const DomainSpec& dom, int n);

ordered_json nonlinearity_report(const NonlinearityModel& f);

} // namespace ich
