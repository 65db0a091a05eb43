#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "ich/commands.hpp"
#include "ich/oracles.hpp"
#include "ich/errors.hpp"
#include "ich/io.hpp"
#include "ich/rng.hpp"

using namespace ich;

namespace {

const char* kGoodConfig =
    "# comment line\n"
    "[problem]\n"
    "dimension = 1\n"
    "n = 16\n"
    "epsilon = 0.25\n"
    "f = 0, -1, 0, 1\n"
    "g = zero\n"
    "[initial]\n"
    "u = mode1\n"
    "amplitude = 0.8\n"
    "[integrator]\n"
    "scheme = imex\n"
    "dt = 1e-3\n"
    "T = 2\n"
    "record_every = 5\n"
    "checkpoint_every = 50\n"
    "[experiment]\n"
    "rng_seed = 7\n"
    "[output]\n"
    "dir = out\n"
    "prefix = demo\n"
    "observers = E_eps, x0_norm, diss_integral\n";

} // namespace

TEST_CASE("well-formed config parses with the declared values") {
    RunConfig rc = parse_config_text(kGoodConfig);
    CHECK(rc.dimension == 1);
    CHECK(rc.n == 16);
    CHECK(rc.epsilon == 0.25);
    CHECK(rc.f_coeffs == std::vector<double>{0, -1, 0, 1});
    CHECK(rc.u_preset == "mode1");
    CHECK(rc.amplitude == 0.8);
    CHECK(rc.scheme == "imex");
    CHECK(rc.T == 2.0);
    CHECK(rc.record_every == 5);
    CHECK(rc.rng_seed == 7);
    CHECK(rc.prefix == "demo");
    REQUIRE(rc.observers.size() == 3);
    CHECK(rc.observers[0] == "E_eps"); // declared order is the CSV order
}

TEST_CASE("malformed configs produce diagnostics, never crashes") {
    const char* bad[] = {
        "[nosuch]\nx = 1\n",
        "[problem\nn = 4\n",
        "n = 4\n",                         // key outside a section
        "[problem]\nn =\n",                // empty value -> bad integer
        "[problem]\nepsilon = two\n",
        "[problem]\nepsilon = 2.0\n",      // out of (0,1]
        "[problem]\nunknown_key = 3\n",
        "[integrator]\nscheme = rk4\n",
        "[problem]\nf = 1,,2\n",
        "[problem]\nn = 9999\n",
        "[integrator]\ndt = -1\n[problem]\nn = 4\n",
        "[experiment]\nbeta = 0\n",
    };
    for (const char* text : bad) {
        CHECK_THROWS_AS(parse_config_text(text), ConfigError);
    }
    // the error carries a line number for in-line problems
    try {
        parse_config_text("[problem]\nn = 4\nbogus = 1\n");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("missing config file is an io error") {
    CHECK_THROWS_AS(load_config("/no/such/path.cfg"), IoError);
}

TEST_CASE("preset fields are deterministic and seed-sensitive") {
    DomainSpec dom(1);
    auto a = make_preset_field("rough11", {}, dom, 16, 1.0, 42, 11);
    auto b = make_preset_field("rough11", {}, dom, 16, 1.0, 42, 11);
    CHECK(a.coeffs() == b.coeffs());
    auto c = make_preset_field("rough11", {}, dom, 16, 1.0, 43, 11);
    CHECK(a.coeffs() != c.coeffs());
    // decay profile: |a_k| = k^{-1.1}
    for (int k = 1; k <= 16; ++k)
        CHECK(std::abs(a.coeff(ModeIndex::d1(k))) ==
              doctest::Approx(std::pow(k, -1.1)).epsilon(1e-12));
    CHECK_THROWS_AS(make_preset_field("nope", {}, dom, 8, 1.0, 0, 0), ConfigError);
}

TEST_CASE("snapshot json round-trips byte-identically") {
    RunConfig rc = parse_config_text(kGoodConfig);
    DomainSpec dom(1);
    SpectralField u(dom, 16), v(dom, 16);
    CounterRng rng(4);
    for (auto& c : u.coeffs()) c = rng.next_symmetric();
    for (auto& c : v.coeffs()) c = rng.next_symmetric();
    State s(u, v, 1.375);
    std::string text1 = snapshot_to_json(rc, s, 0.1234567890123456789).dump(2);
    std::string text2 = ordered_json::parse(text1).dump(2);
    CHECK(text1 == text2);
    Snapshot snap = snapshot_from_json(ordered_json::parse(text1), dom, 16);
    CHECK(snap.state.u.coeffs() == u.coeffs());
    CHECK(snap.state.v.coeffs() == v.coeffs());
    CHECK(snap.state.t == 1.375);
    std::string text3 = snapshot_to_json(rc, snap.state, snap.dissipation_integral).dump(2);
    CHECK(text1 == text3);
}

TEST_CASE("csv contract: header, column order, 17 digits, determinism") {
    DomainSpec dom(1);
    auto f = validate_assumptions({0.0, -1.0, 0.0, 1.0}, 1.0);
    ProblemConfig cfg = ProblemConfig::zero_forcing(dom, 8, 0.5);
    IntegratorConfig icfg;
    icfg.dt = 1e-2;
    icfg.record_every = 2;
    auto obs = make_observers(cfg, f, {"E_eps", "x0_norm", "diss_integral"});
    SpectralField u0(dom, 8);
    u0.set_coeff(ModeIndex::d1(1), 0.6);
    State s0(u0, SpectralField(dom, 8), 0.0);
    TrajectoryRecord t1 = integrate(s0, 0.3, icfg, cfg, f, obs);
    TrajectoryRecord t2 = integrate(s0, 0.3, icfg, cfg, f, obs);
    std::string c1 = trajectory_csv(t1);
    std::string c2 = trajectory_csv(t2);
    CHECK(c1 == c2);
    CHECK(c1.rfind("t,E_eps,x0_norm,diss_integral\n", 0) == 0);
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("run_simulate writes csv, snapshots, and a summary") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ich_test_sim";
    fs::remove_all(dir);
    RunConfig rc = parse_config_text(kGoodConfig);
    rc.out_dir = dir.string();
    ordered_json rep = run_simulate(rc);
    CHECK(rep.contains("constants"));
    CHECK(fs::exists(dir / "demo.csv"));
    CHECK(fs::exists(dir / "demo_summary.json"));
    CHECK(fs::exists(dir / "demo_snap_0000.json"));
    std::string csv = read_text_file((dir / "demo.csv").string());
    CHECK(csv.rfind("t,E_eps,x0_norm,diss_integral\n", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("2D simulate end to end") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ich_test_2d";
    fs::remove_all(dir);
    RunConfig rc = parse_config_text(
        "[problem]\ndimension = 2\nn = 6\nepsilon = 0.5\nf = 0,-1,0,1\ng = zero\n"
        "[initial]\nu = mode1\namplitude = 0.5\n"
        "[integrator]\nscheme = imex\ndt = 1e-2\nT = 0.2\n"
        "[output]\ndir = .\nprefix = d2\nobservers = E_eps, x0_norm\n");
    rc.out_dir = dir.string();
    ordered_json rep = run_simulate(rc);
    CHECK(rep["constants"]["odd"] == true);
    std::string csv = read_text_file((dir / "d2.csv").string());
    CHECK(csv.rfind("t,E_eps,x0_norm", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("simulate csv matches the closed form for a linear single mode") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ich_test_linear";
    fs::remove_all(dir);
    RunConfig rc = parse_config_text(
        "[problem]\ndimension = 1\nn = 4\nepsilon = 1.0\ng = zero\n"
        "[initial]\nu = mode1\n"
        "[integrator]\nscheme = imex\ndt = 1e-4\nT = 10\nrecord_every = 100\n"
        "[output]\ndir = .\nprefix = lin\nobservers = E_eps\n");
    rc.out_dir = dir.string();
    run_simulate(rc);
    std::string csv = read_text_file((dir / "lin.csv").string());

    // spot check E(t) = (a^2 + a'^2)/2 at t in {1, 5, 10}
    auto energy_at = [](double t) {
        auto a = [](double s) { return ich::oracles::damped_mode(1.0, 1.0, 1.0, 0.0, s); };
        double h = 1e-7;
        double ap = (a(t + h) - a(t - h)) / (2.0 * h);
        return 0.5 * (a(t) * a(t) + ap * ap);
    };
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    int matched = 0;
    while (std::getline(lines, line)) {
        auto comma = line.find(',');
        double t = std::stod(line.substr(0, comma));
        for (double want : {1.0, 5.0, 10.0}) {
            if (std::abs(t - want) < 1e-9) {
                double e = std::stod(line.substr(comma + 1));
                CHECK(e == doctest::Approx(energy_at(want)).epsilon(1e-4).scale(1.0));
                ++matched;
            }
        }
    }
    CHECK(matched == 3);
    fs::remove_all(dir);
}

TEST_CASE("equilibria catalog round-trips through json") {
    DomainSpec dom(1);
    auto f = validate_assumptions({0.0, -2.0, 0.0, 1.0}, 1.0);
    ProblemConfig cfg = ProblemConfig::zero_forcing(dom, 12, 1.0);
    EquilibriumCatalog cat = enumerate_equilibria(cfg, f, 3, 5, 1e-11);
    REQUIRE(cat.members.size() >= 3);
    ordered_json j = catalog_to_json(cat);
    auto back = catalog_from_json(j, dom, 12);
    REQUIRE(back.size() == cat.members.size());
    for (std::size_t i = 0; i < back.size(); ++i)
        CHECK(back[i].u_star.coeffs() == cat.members[i].u_star.coeffs());
}

TEST_CASE("validate command reports constants and rejects bad f") {
    RunConfig rc = parse_config_text(kGoodConfig);
    ordered_json rep = run_validate(rc);
    CHECK(rep["accepted"] == true);
    CHECK(rep["constants"]["lambda"] == doctest::Approx(1.0));
    rc.f_coeffs = {0.0, 0.0, 1.0}; // r^2 violates f1
    CHECK_THROWS_AS(run_validate(rc), AssumptionError);
}
