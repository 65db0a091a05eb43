#include "ich/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>

#include "ich/diagnostics.hpp"
#include "ich/errors.hpp"
#include "ich/quadrature.hpp"
#include "ich/regularization.hpp"

namespace ich {

namespace {

namespace fs = std::filesystem;

std::string out_path(const RunConfig& rc, const std::string& suffix) {
    fs::create_directories(rc.out_dir);
    return (fs::path(rc.out_dir) / (rc.prefix + suffix)).string();
}

double resolve_L(const RunConfig& rc, const NonlinearityModel& f) {
    return rc.L >= 0.0 ? rc.L : select_L(f.lambda).L;
}

int resolve_lowpass(const RunConfig& rc) {
    return rc.lowpass_m > 0 ? rc.lowpass_m : std::max(1, rc.n / 4);
}

} // namespace

ordered_json nonlinearity_report(const NonlinearityModel& f) {
    ordered_json j;
    j["coefficients"] = f.f.coeffs();
    j["degree"] = f.f.degree();
    j["p"] = f.p;
    j["lambda"] = f.lambda;
    j["delta"] = f.delta;
    j["M"] = f.bound_m;
    j["kappa"] = f.kappa;
    j["kappa_shift"] = f.kappa_shift;
    j["kappa_margin"] = f.kappa_margin;
    j["odd"] = f.is_odd();
    j["certification"] = f.certification;
    return j;
}

ordered_json run_validate(const RunConfig& rc) {
    NonlinearityModel f = build_nonlinearity(rc); // throws AssumptionError on rejection
    ordered_json j;
    j["accepted"] = true;
    j["lambda1"] = DomainSpec(rc.dimension).lambda1();
    j["constants"] = nonlinearity_report(f);
    return j;
}

ordered_json run_simulate(const RunConfig& rc) {
    NonlinearityModel f = build_nonlinearity(rc);
    ProblemConfig cfg = build_problem(rc, f);
    State s0 = build_initial_state(rc);
    IntegratorConfig icfg = build_integrator(rc);

    std::vector<std::string> names = rc.observers.empty() ? default_observer_names() : rc.observers;
    if (std::find(names.begin(), names.end(), "diss_integral") == names.end())
        names.push_back("diss_integral");
    auto observers = make_observers(cfg, f, names);

    if (!rc.catalog.empty()) {
        ordered_json cj = ordered_json::parse(read_text_file(rc.catalog));
        auto eqs = catalog_from_json(cj, cfg.domain, cfg.n);
        double beta = rc.beta;
        NamedObserver dist;
        dist.name = "dist_R";
        dist.fn = [eqs, beta, cfg, f](const State& s) {
            return distance_to_equilibria(s, eqs, beta, cfg, f);
        };
        observers.push_back(std::move(dist));
    }

    TrajectoryRecord traj = integrate(s0, rc.T, icfg, cfg, f, observers);
    write_text_file(out_path(rc, ".csv"), trajectory_csv(traj));

    // snapshots at checkpoint times, dissipation integral read off the record
    const auto& diss_col = traj.column("diss_integral");
    int index = 0;
    for (const auto& s : traj.checkpoints) {
        double diss = 0.0;
        for (std::size_t i = 0; i < traj.times.size(); ++i)
            if (traj.times[i] <= s.t + 1e-15) diss = diss_col[i];
        char name[48];
        std::snprintf(name, sizeof(name), "_snap_%04d.json", index++);
        write_text_file(out_path(rc, name), snapshot_to_json(rc, s, diss).dump(2) + "\n");
    }

    ordered_json j;
    j["constants"] = nonlinearity_report(f);
    j["samples"] = traj.times.size();
    j["checkpoints"] = traj.checkpoints.size();
    j["T"] = traj.times.back();
    j["dissipation_integral"] = traj.dissipation_integral;

    // identity residuals and the fitted dissipation bound, when the record
    // carries the needed columns at sufficient density
    if (traj.has_column("E_eps") && traj.has_column("ut_vprime_sq")) {
        try {
            double res = energy_equality_residual(traj);
            double e0 = traj.column("E_eps").front();
            ordered_json en;
            en["max_residual"] = res;
            en["tolerance"] = 1e-6 * (1.0 + std::abs(e0));
            en["pass"] = res <= 1e-6 * (1.0 + std::abs(e0));
            j["energy_equality"] = en;
        } catch (const std::invalid_argument&) {
            j["energy_equality"] = "skipped: record too sparse";
        }
    }
    if (traj.has_column("x0_norm") && traj.times.size() >= 8 && rc.T > 0.0) {
        double w0 = rc.fit_t1 > rc.fit_t0 ? rc.fit_t0 : 0.0;
        double w1 = rc.fit_t1 > rc.fit_t0 ? rc.fit_t1 : 0.6 * rc.T;
        DissipationCheck dc = dissipation_check(traj, TimeWindow{w0, w1});
        ordered_json dj;
        dj["C_fit"] = dc.c_fit;
        dj["kappa_fit"] = dc.kappa_fit;
        dj["satisfied"] = dc.satisfied;
        dj["degenerate"] = dc.degenerate;
        dj["plateau"] = dc.plateau;
        j["dissipation_bound"] = dj;
    }
    const State& fin = traj.checkpoints.back();
    EnergyReport er = energy_report(fin, cfg, f, 0.0, 0.0, traj.dissipation_integral);
    ordered_json jr;
    jr["E_eps"] = er.e_eps;
    jr["x0_norm"] = er.x0;
    jr["vnorms"] = std::vector<double>(er.v_norms, er.v_norms + 6);
    jr["linf_u"] = er.linf_u;
    jr["linf_ut"] = er.linf_ut;
    j["final"] = jr;
    write_text_file(out_path(rc, "_summary.json"), j.dump(2) + "\n");
    return j;
}

ordered_json catalog_to_json(const EquilibriumCatalog& cat) {
    ordered_json j;
    j["members"] = ordered_json::array();
    for (const auto& eq : cat.members) {
        ordered_json m;
        m["coeffs"] = eq.u_star.coeffs();
        m["residual"] = eq.residual;
        m["iterations"] = eq.iterations;
        m["basin_tag"] = eq.basin_tag;
        m["residual_history"] = eq.residual_history;
        j["members"].push_back(std::move(m));
    }
    j["notes"] = cat.notes;
    return j;
}

std::vector<Equilibrium> catalog_from_json(const ordered_json& j, const DomainSpec& dom, int n) {
    std::vector<Equilibrium> out;
    for (const auto& m : j.at("members")) {
        Equilibrium eq;
        SpectralField u(dom, n);
        auto c = m.at("coeffs").get<std::vector<double>>();
        if (c.size() != u.size()) throw IoError("catalog coefficients do not match domain/cutoff");
        u.coeffs() = std::move(c);
        eq.u_star = std::move(u);
        eq.residual = m.at("residual").get<double>();
        eq.converged = true;
        if (m.contains("basin_tag")) eq.basin_tag = m.at("basin_tag").get<std::string>();
        out.push_back(std::move(eq));
    }
    return out;
}

ordered_json run_equilibria(const RunConfig& rc) {
    NonlinearityModel f = build_nonlinearity(rc);
    ProblemConfig cfg = build_problem(rc, f);
    EquilibriumCatalog cat =
        enumerate_equilibria(cfg, f, rc.seed_count, rc.rng_seed, rc.equilibria_tol);
    ordered_json j = catalog_to_json(cat);
    write_text_file(out_path(rc, "_equilibria.json"), j.dump(2) + "\n");
    ordered_json rep;
    rep["count"] = cat.members.size();
    std::vector<double> residuals;
    for (const auto& eq : cat.members) residuals.push_back(eq.residual);
    rep["residuals"] = residuals;
    rep["notes"] = cat.notes;
    return rep;
}

ordered_json run_glue(const RunConfig& rc) {
    if (rc.gap_list.empty()) throw ConfigError("glue: gap_list is required");
    NonlinearityModel f = build_nonlinearity(rc);
    ProblemConfig cfg = build_problem(rc, f);
    EquilibriumCatalog cat =
        enumerate_equilibria(cfg, f, rc.seed_count, rc.rng_seed, rc.equilibria_tol);
    const Equilibrium* base = nullptr;
    double best = -1.0;
    for (const auto& eq : cat.members) {
        double norm = sobolev_norm(eq.u_star, 0.0);
        if (norm > best) {
            best = norm;
            base = &eq;
        }
    }
    if (base == nullptr || best < 1e-6)
        throw NumericalError("glue: no nontrivial equilibrium to continue from");

    SpectralField g_dir = SpectralField::basis(cfg.domain, cfg.n,
                                               cfg.domain.dimension == 1 ? ModeIndex::d1(1)
                                                                         : ModeIndex::d2(1, 1));
    CutoffProfile profile;
    ordered_json rows = ordered_json::array();
    std::string csv = "gap_target,gap_actual,s,max_phi,max_phi_t\n";
    std::vector<double> lx, ly;
    for (double gap : rc.gap_list) {
        ContinuationPoint pt = continue_to_gap(*base, g_dir, gap, cfg, f, rc.equilibria_tol);
        GluedPath path = glue_quasi_trajectory(*base, pt.eq, profile, cfg, f);
        ordered_json row;
        row["gap_target"] = gap;
        row["gap_actual"] = pt.gap_h3;
        row["s"] = pt.s;
        row["max_phi"] = path.max_phi;
        row["max_phi_t"] = path.max_phi_t;
        rows.push_back(row);
        csv += format_double(gap) + "," + format_double(pt.gap_h3) + "," + format_double(pt.s) +
               "," + format_double(path.max_phi) + "," + format_double(path.max_phi_t) + "\n";
        if (pt.gap_h3 > 0.0 && path.max_phi > 0.0) {
            lx.push_back(std::log(pt.gap_h3));
            ly.push_back(std::log(path.max_phi));
        }
    }
    ordered_json j;
    j["rows"] = rows;
    if (lx.size() >= 2) {
        double n = static_cast<double>(lx.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        j["loglog_slope"] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    write_text_file(out_path(rc, "_glue.json"), j.dump(2) + "\n");
    write_text_file(out_path(rc, "_glue.csv"), csv);
    return j;
}

ordered_json run_split(const RunConfig& rc) {
    NonlinearityModel f = build_nonlinearity(rc);
    ProblemConfig cfg = build_problem(rc, f);
    if (rc.L == 0.0) throw ConfigError("split: L must be positive (or 'auto')");
    double L = resolve_L(rc, f);
    int m = resolve_lowpass(rc);

    IntegratorConfig icfg = build_integrator(rc);
    icfg.keep_traces = true;
    if (icfg.checkpoint_every <= 0) icfg.checkpoint_every = 100;
    State s0 = build_initial_state(rc);
    TrajectoryRecord traj = integrate(s0, rc.T, icfg, cfg, f, {});

    double v_dt = rc.scheme == "imex" ? rc.dt : 0.0;
    SplitReport rep = split_trajectory(traj, L, rc.t0, m, cfg, f, v_dt, rc.fit_floor_rel);

    std::string csv = "t,w_x0,v_h4,vt_h2,in_ball\n";
    for (std::size_t i = 0; i < rep.times.size(); ++i)
        csv += format_double(rep.times[i]) + "," + format_double(rep.w_x0[i]) + "," +
               format_double(rep.v_h4[i]) + "," + format_double(rep.vt_h2[i]) + "," +
               std::to_string(rep.in_ball[i]) + "\n";
    write_text_file(out_path(rc, "_split.csv"), csv);

    ordered_json j;
    j["L"] = L;
    j["lowpass_m"] = m;
    j["t0"] = rep.t0;
    j["decay_rate"] = rep.decay.rate;
    j["decay_amplitude"] = rep.decay.amplitude;
    j["decay_r2"] = rep.decay.r_squared;
    j["ball_radius"] = rep.ball_radius;
    if (f.is_zero())
        j["analytic_rate"] = analytic_split_rate(cfg.domain, cfg.n, m, cfg.epsilon, L);
    write_text_file(out_path(rc, "_split.json"), j.dump(2) + "\n");
    return j;
}

ordered_json run_eps_sweep(const RunConfig& rc) {
    if (rc.eps_list.empty()) throw ConfigError("eps-sweep: eps_list is required");
    NonlinearityModel f = build_nonlinearity(rc);
    ProblemConfig cfg = build_problem(rc, f);
    SpectralField u0 = build_initial_state(rc).u;
    EpsComparisonOptions opts;
    opts.ref_rel_tol = rc.rel_tol;
    opts.ref_abs_tol = rc.abs_tol;
    opts.parabolic_dt = rc.parabolic_dt;
    EpsScalingReport rep = eps_comparison(u0, rc.eps_list, rc.T, rc.L0, cfg, f, opts);

    std::string csv = "eps,sup_diff_hminus1,sup_diff_l2,sup_sq_over_eps\n";
    for (std::size_t i = 0; i < rep.eps_values.size(); ++i) {
        double s = rep.sup_diff_hminus1[i];
        csv += format_double(rep.eps_values[i]) + "," + format_double(s) + "," +
               format_double(rep.sup_diff_l2[i]) + "," +
               format_double(s * s / rep.eps_values[i]) + "\n";
    }
    write_text_file(out_path(rc, "_eps.csv"), csv);

    ordered_json j;
    j["eps_values"] = rep.eps_values;
    j["sup_diff_hminus1"] = rep.sup_diff_hminus1;
    j["sup_diff_l2"] = rep.sup_diff_l2;
    j["slope_defined"] = rep.slope_defined;
    if (rep.slope_defined) j["slope"] = rep.slope;
    j["ratio_spread"] = rep.ratio_spread;
    j["failures"] = rep.failures;
    write_text_file(out_path(rc, "_eps.json"), j.dump(2) + "\n");
    return j;
}

ordered_json run_converge(const RunConfig& rc) {
    if (rc.n_list.size() < 2) throw ConfigError("converge: n_list needs at least two levels");
    std::vector<int> levels = rc.n_list;
    std::sort(levels.begin(), levels.end());
    NonlinearityModel f = build_nonlinearity(rc);

    const int n_max = levels.back();
    DomainSpec dom(rc.dimension);
    SpectralField master = make_preset_field(rc.u_preset, rc.u_coeffs, dom, n_max, rc.amplitude,
                                             rc.rng_seed, 11);
    SpectralField master_v = make_preset_field(rc.v_preset, rc.v_coeffs, dom, n_max, rc.amplitude,
                                               rc.rng_seed, 12);

    auto run_level = [&](int n) {
        RunConfig level_rc = rc;
        level_rc.n = n;
        ProblemConfig cfg = build_problem(level_rc, f);
        State s0(with_cutoff(master, n), with_cutoff(master_v, n), 0.0);
        IntegratorConfig icfg = build_integrator(rc);
        icfg.keep_traces = true;
        icfg.record_every = 0;
        return integrate(s0, rc.T, icfg, cfg, f, {});
    };

    std::vector<std::future<TrajectoryRecord>> jobs;
    for (int n : levels) jobs.push_back(std::async(std::launch::async, run_level, n));
    std::vector<TrajectoryRecord> runs;
    for (auto& jb : jobs) runs.push_back(jb.get());

    const int grid_pts = 51;
    std::vector<double> diffs;
    for (std::size_t l = 0; l + 1 < runs.size(); ++l) {
        double sup = 0.0;
        std::vector<double> a, b;
        for (int i = 0; i <= grid_pts; ++i) {
            double t = rc.T * i / grid_pts;
            runs[l].utrace.sample_into(t, a);
            runs[l + 1].utrace.sample_into(t, b);
            // pad the coarse level into the fine layout
            SpectralField fa(dom, levels[l]);
            fa.coeffs() = a;
            SpectralField fb(dom, levels[l + 1]);
            fb.coeffs() = b;
            double d = sobolev_norm(with_cutoff(fa, levels[l + 1]) - fb, 0.0);
            sup = std::max(sup, d);
        }
        diffs.push_back(sup);
    }

    std::string csv = "n_coarse,n_fine,sup_l2_diff\n";
    for (std::size_t l = 0; l + 1 < runs.size(); ++l)
        csv += std::to_string(levels[l]) + "," + std::to_string(levels[l + 1]) + "," +
               format_double(diffs[l]) + "\n";
    write_text_file(out_path(rc, "_converge.csv"), csv);

    bool monotone = true;
    for (std::size_t i = 1; i < diffs.size(); ++i)
        if (!(diffs[i] < diffs[i - 1])) monotone = false;

    ordered_json j;
    j["n_list"] = levels;
    j["sup_l2_diffs"] = diffs;
    j["strictly_decreasing"] = monotone;
    write_text_file(out_path(rc, "_converge.json"), j.dump(2) + "\n");
    return j;
}

} // namespace ich
