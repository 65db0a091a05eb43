#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ich/diagnostics.hpp"
#include "ich/equilibria.hpp"
#include "ich/rng.hpp"

using namespace ich;

namespace {

const std::vector<double> kCubic = {0.0, -1.0, 0.0, 1.0};

State random_state(DomainSpec dom, int n, std::uint64_t seed, double amp) {
    SpectralField u(dom, n), v(dom, n);
    CounterRng rng(seed);
    for (auto& c : u.coeffs()) c = amp * rng.next_symmetric();
    for (auto& c : v.coeffs()) c = amp * rng.next_symmetric();
    return State(std::move(u), std::move(v), 0.0);
}

TrajectoryRecord flat_record(const ProblemConfig& cfg, double e_value, double x0_value) {
    TrajectoryRecord rec;
    rec.problem = cfg;
    rec.columns = {"E_eps", "ut_vprime_sq", "x0_norm"};
    rec.scalars.resize(3);
    for (int i = 0; i <= 1000; ++i) {
        rec.times.push_back(i * 0.005);
        rec.scalars[0].push_back(e_value);
        rec.scalars[1].push_back(0.0);
        rec.scalars[2].push_back(x0_value);
    }
    return rec;
}

} // namespace

TEST_CASE("fit_exponential on exact and perturbed exponentials") {
    std::vector<double> t, y;
    for (int i = 0; i <= 100; ++i) {
        double ti = 5.0 * i / 100.0;
        t.push_back(ti);
        y.push_back(std::exp(-2.0 * ti));
    }
    DecayFit fit = fit_exponential(t, y, {0.0, 5.0});
    CHECK(fit.rate == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit.amplitude == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> c(t.size(), 3.0);
    DecayFit flat = fit_exponential(t, c, {0.0, 5.0});
    CHECK(flat.rate == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(flat.amplitude == doctest::Approx(3.0).epsilon(1e-12));

    std::vector<double> yp;
    for (double ti : t) yp.push_back(std::exp(-ti) * (1.0 + 0.01 * std::sin(10.0 * ti)));
    DecayFit pert = fit_exponential(t, yp, {0.0, 5.0});
    CHECK(pert.rate > 0.95);
    CHECK(pert.rate < 1.05);

    std::vector<double> bad = y;
    bad[50] = -1.0;
    CHECK_THROWS_AS(fit_exponential(t, bad, {0.0, 5.0}), std::domain_error);
}

TEST_CASE("energy equality residual: equilibrium record and closed-form run") {
    DomainSpec dom(1);
    auto f0 = validate_assumptions(std::vector<double>{}, 1.0);
    ProblemConfig cfg = ProblemConfig::zero_forcing(dom, 4, 1.0);

    TrajectoryRecord rec = flat_record(cfg, 2.5, 1.0);
    CHECK(energy_equality_residual(rec) <= 1e-12);

    // single linear mode, reference integrator, dense scalar record
    State s0(SpectralField::basis(dom, 4, ModeIndex::d1(1)), SpectralField(dom, 4), 0.0);
    IntegratorConfig icfg;
    icfg.scheme = IntegratorConfig::Scheme::reference;
    icfg.rel_tol = 1e-10;
    icfg.abs_tol = 1e-12;
    icfg.max_dt = 2e-4;
    auto obs = make_observers(cfg, f0, {"E_eps", "ut_vprime_sq"});
    TrajectoryRecord run = integrate(s0, 5.0, icfg, cfg, f0, obs);
    CHECK(energy_equality_residual(run) <= 1e-8);

    TrajectoryRecord sparse = run;
    sparse.times = {0.0, 5.0};
    for (auto& col : sparse.scalars) col = {col.front(), col.back()};
    CHECK_THROWS_AS(energy_equality_residual(sparse), std::invalid_argument);
}

TEST_CASE("second identity residual on zero, equilibrium, and generic runs") {
    DomainSpec dom(1);
    auto f = validate_assumptions(kCubic, 1.0);
    ProblemConfig cfg = ProblemConfig::zero_forcing(dom, 16, 0.5);
    const std::vector<std::string> cols = {"E_eps",   "ut_vprime_sq", "cross_ainv",
                                           "u_vprime_sq", "u_v_sq",   "fu_pair",
                                           "g_ainv_u"};
    auto obs = make_observers(cfg, f, cols);
    IntegratorConfig icfg;
    icfg.scheme = IntegratorConfig::Scheme::reference;
    icfg.rel_tol = 1e-10;
    icfg.abs_tol = 1e-12;
    icfg.max_dt = 2e-3;

    TrajectoryRecord zero = integrate(State::rest(dom, 16), 2.0, icfg, cfg, f, obs);
    CHECK(second_identity_residual(zero) <= 1e-14);

    // nontrivial equilibrium of r^3 - 2r is stationary for the identity too
    auto f2 = validate_assumptions({0.0, -2.0, 0.0, 1.0}, 1.0);
    ProblemConfig cfg2 = ProblemConfig::zero_forcing(dom, 16, 0.5);
    auto eq = solve_equilibrium(SpectralField::basis(dom, 16, ModeIndex::d1(1)), cfg2, f2, 1e-12);
    REQUIRE(eq.converged);
    auto obs2 = make_observers(cfg2, f2, cols);
    TrajectoryRecord still = integrate(State(eq.u_star, SpectralField(dom, 16), 0.0), 2.0, icfg,
                                       cfg2, f2, obs2);
    CHECK(second_identity_residual(still) <= 1e-8);

    State gen = random_state(dom, 16, 17, 0.4);
    for (int k = 1; k <= 16; ++k) {
        gen.u.coeffs()[k - 1] *= std::exp(-0.5 * k);
        gen.v.coeffs()[k - 1] *= std::exp(-0.5 * k);
    }
    TrajectoryRecord run = integrate(gen, 2.0, icfg, cfg, f, obs);
    CHECK(second_identity_residual(run) <= 1e-5);
}

TEST_CASE("dissipation check: decaying linear run and flat equilibrium") {
    DomainSpec dom(1);
    auto f0 = validate_assumptions(std::vector<double>{}, 1.0);
    ProblemConfig cfg = ProblemConfig::zero_forcing(dom, 8, 1.0);
    IntegratorConfig icfg;
    icfg.scheme = IntegratorConfig::Scheme::reference;
    auto obs = make_observers(cfg, f0, {"x0_norm"});
    TrajectoryRecord run = integrate(random_state(dom, 8, 23, 0.6), 10.0, icfg, cfg, f0, obs);
    DissipationCheck dc = dissipation_check(run, {0.0, 6.0});
    CHECK(dc.satisfied);
    CHECK(dc.kappa_fit > 0.0);

    TrajectoryRecord flat = flat_record(cfg, 1.0, 2.0);
    DissipationCheck dc2 = dissipation_check(flat, {0.0, 4.0});
    CHECK(dc2.satisfied);
    CHECK(dc2.degenerate);
}

TEST_CASE("dissipation integral is bounded by the energy drop (g = 0)") {
    DomainSpec dom(1);
    auto f = validate_assumptions(kCubic, 1.0);
    ProblemConfig cfg = ProblemConfig::zero_forcing(dom, 8, 0.5);
    IntegratorConfig icfg;
    icfg.scheme = IntegratorConfig::Scheme::reference;
    icfg.rel_tol = 1e-10;
    icfg.abs_tol = 1e-12;
    icfg.max_dt = 1e-3;
    auto obs = make_observers(cfg, f, {"E_eps"});
    State s0 = random_state(dom, 8, 77, 0.3);
    TrajectoryRecord run = integrate(s0, 5.0, icfg, cfg, f, obs);
    const auto& e = run.column("E_eps");
    double inf_e = *std::min_element(e.begin(), e.end());
    CHECK(run.dissipation_integral <= e.front() - inf_e + 1e-6);
}

TEST_CASE("m_proxy equals the X0 norm") {
    DomainSpec dom(1);
    auto f = validate_assumptions(kCubic, 1.0);
    ProblemConfig cfg = ProblemConfig::zero_forcing(dom, 8, 0.7);
    State zero = State::rest(dom, 8);
    CHECK(m_proxy(zero, cfg, f) == 0.0);
    for (std::uint64_t s = 0; s < 4; ++s) {
        State st = random_state(dom, 8, 300 + s, 0.5);
        CHECK(m_proxy(st, cfg, f) == x0_norm(st, cfg, f));
    }
}

TEST_CASE("hausdorff semidistance: containment, asymmetry, errors") {
    DomainSpec dom(1);
    auto f = validate_assumptions(kCubic, 1.0);
    ProblemConfig cfg = ProblemConfig::zero_forcing(dom, 4, 1.0);
    auto metric = MetricSelector::v_norm(0.0);

    State z = State::rest(dom, 4);
    State e1(SpectralField::basis(dom, 4, ModeIndex::d1(1)), SpectralField(dom, 4), 0.0);
    State e2(SpectralField::basis(dom, 4, ModeIndex::d1(1), 2.0), SpectralField(dom, 4), 0.0);

    std::vector<State> a = {e1, e2};
    std::vector<State> b = {z, e1, e2};
    CHECK(hausdorff_semidistance(a, b, metric, cfg, f) == doctest::Approx(0.0).scale(1.0));
    // |a e1|_{V} = a in 1D since lambda1 = 1
    CHECK(hausdorff_semidistance(a, {z}, metric, cfg, f) == doctest::Approx(2.0));
    CHECK(hausdorff_semidistance({z}, a, metric, cfg, f) == doctest::Approx(1.0));
    CHECK_THROWS_AS(hausdorff_semidistance({}, a, metric, cfg, f), std::domain_error);

    // brute-force cross-check in the X0 metric
    auto x0m = MetricSelector::x0();
    double sup = 0.0;
    for (const auto& pa : a) {
        double inf = 1e300;
        for (const auto& pb : b) inf = std::min(inf, state_distance(pa, pb, x0m, cfg, f));
        sup = std::max(sup, inf);
    }
    CHECK(hausdorff_semidistance(a, b, x0m, cfg, f) == doctest::Approx(sup));
}

TEST_CASE("z functional: zero state, pure H2 part, cubic gradient term") {
    DomainSpec dom(1);
    auto f0 = validate_assumptions(std::vector<double>{}, 1.0);
    ProblemConfig cfg = ProblemConfig::zero_forcing(dom, 4, 1.0);
    CHECK(z_functional(State::rest(dom, 4), cfg, f0, 0.0, 0.0) == 0.0);

    State e1(SpectralField::basis(dom, 4, ModeIndex::d1(1)), SpectralField(dom, 4), 0.0);
    CHECK(z_functional(e1, cfg, f0, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));

    auto f = validate_assumptions(kCubic, 1.0);
    const double a = 1.1;
    State s(SpectralField::basis(dom, 4, ModeIndex::d1(1), a), SpectralField(dom, 4), 0.0);
    // Z = 1/2 (a^2 + int (3u^2-1)|grad u|^2) = 1/2 (a^2 + 3a^4/(2pi) - a^2)
    CHECK(z_functional(s, cfg, f, 0.0, 0.0) ==
          doctest::Approx(3.0 * std::pow(a, 4) / (4.0 * kPi)).epsilon(1e-13));

    // gamma and L0 terms
    State sv = random_state(dom, 4, 31, 0.5);
    double z0 = z_functional(sv, cfg, f, 0.0, 0.0);
    double z1 = z_functional(sv, cfg, f, 2.0, 0.3);
    double u2 = sobolev_norm(sv.u, 0.0);
    double want = z0 + 0.5 * (2.0 * u2 * u2 + 2.0 * 0.3 * cfg.epsilon * inner(sv.u, sv.v));
    CHECK(z1 == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("Brezis-Gallouet monitor: 2D only, first-mode value") {
    DomainSpec dom1(1);
    auto f = validate_assumptions(kCubic, 2.0);
    ProblemConfig cfg1 = ProblemConfig::zero_forcing(dom1, 4, 1.0);
    TrajectoryRecord rec1;
    rec1.problem = cfg1;
    rec1.checkpoints.push_back(State::rest(dom1, 4));
    CHECK_THROWS_AS(brezis_gallouet_monitor(rec1), std::domain_error);

    DomainSpec dom2(2);
    ProblemConfig cfg2 = ProblemConfig::zero_forcing(dom2, 4, 1.0);
    TrajectoryRecord rec2;
    rec2.problem = cfg2;
    State e11(SpectralField::basis(dom2, 4, ModeIndex::d2(1, 1)), SpectralField(dom2, 4), 0.0);
    rec2.checkpoints.push_back(e11);
    double linf = 2.0 / kPi;
    double want = linf * linf / ((1.0 + 2.0) * std::log(std::exp(1.0) + 4.0));
    CHECK(brezis_gallouet_monitor(rec2) == doctest::Approx(want).epsilon(1e-3));

    State z2 = State::rest(dom2, 4);
    rec2.checkpoints = {z2};
    CHECK(brezis_gallouet_monitor(rec2) == 0.0);
}

TEST_CASE("Brezis-Gallouet ratio stays bounded along a 2D cubic run") {
    DomainSpec dom(2);
    auto f = validate_assumptions(kCubic, dom.lambda1());
    ProblemConfig cfg = ProblemConfig::zero_forcing(dom, 8, 0.5);
    SpectralField u0(dom, 8), v0(dom, 8);
    CounterRng rng(61);
    for (std::size_t k = 0; k < u0.size(); ++k)
        u0.coeffs()[k] =
            0.4 * rng.next_symmetric() * std::exp(-0.5 * std::sqrt(u0.eigenvalue_flat(k)));
    IntegratorConfig icfg;
    icfg.dt = 1e-3;
    icfg.record_every = 0;
    icfg.checkpoint_every = 100;
    TrajectoryRecord traj = integrate(State(u0, v0, 0.0), 1.0, icfg, cfg, f, {});
    REQUIRE(traj.checkpoints.size() > 5);
    double overall = brezis_gallouet_monitor(traj);
    TrajectoryRecord head = traj;
    head.checkpoints = {traj.checkpoints.front()};
    double initial = brezis_gallouet_monitor(head);
    CHECK(std::isfinite(overall));
    CHECK(overall <= 2.0 * initial);
}

TEST_CASE("energy report carries all scalar fields") {
    DomainSpec dom(1);
    auto f = validate_assumptions(kCubic, 1.0);
    ProblemConfig cfg = ProblemConfig::zero_forcing(dom, 8, 0.5);
    State s = random_state(dom, 8, 41, 0.4);
    EnergyReport rep = energy_report(s, cfg, f, 0.1, 1.0, 3.25);
    CHECK(rep.e_eps == doctest::Approx(energy(s, cfg, f)));
    CHECK(rep.y_eps == doctest::Approx(y_functional(s, cfg, f, 0.1, 1.0)));
    CHECK(rep.x0 == doctest::Approx(x0_norm(s, cfg, f)));
    for (int i = 0; i < 6; ++i)
        CHECK(rep.v_norms[i] == doctest::Approx(vs_norm(s, i - 2.0, cfg.epsilon)));
    CHECK(rep.dissipation_integral == 3.25);
    for (double v : rep.v_norms) CHECK(std::isfinite(v));
}
