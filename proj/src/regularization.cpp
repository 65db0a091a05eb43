#include "ich/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "ich/errors.hpp"

namespace ich {

namespace {

double median_spacing(const std::vector<double>& t) {
    if (t.size() < 2) return 0.0;
    std::vector<double> gaps;
    gaps.reserve(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i) gaps.push_back(t[i] - t[i - 1]);
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    return gaps[gaps.size() / 2];
}

} // namespace

SplitReport split_trajectory(const TrajectoryRecord& traj, double L, double t0, int lowpass_m,
                             const ProblemConfig& cfg, const NonlinearityModel& f, double v_dt,
                             double fit_floor_rel) {
    if (!(L > 0.0)) throw std::domain_error("split_trajectory: L must be positive");
    if (lowpass_m > cfg.n) throw std::domain_error("split_trajectory: lowpass_m exceeds n");
    if (traj.utrace.empty() || traj.vtrace.empty())
        throw std::invalid_argument("split_trajectory: trajectory was recorded without traces");

    // anchor t0 at the nearest checkpoint so (u, u_t)(t0) is exact
    if (traj.checkpoints.empty())
        throw std::invalid_argument("split_trajectory: no checkpoints in trajectory");
    const State* anchor = &traj.checkpoints.front();
    for (const auto& s : traj.checkpoints)
        if (std::abs(s.t - t0) < std::abs(anchor->t - t0)) anchor = &s;
    const double start = anchor->t;
    const double t_end = traj.utrace.times.back();
    if (!(t_end > start))
        throw std::invalid_argument("split_trajectory: t0 beyond the recorded range");

    State v0(project(anchor->u, lowpass_m), project(anchor->v, lowpass_m), start);

    IntegratorConfig icfg;
    icfg.scheme = IntegratorConfig::Scheme::imex;
    icfg.dt = v_dt > 0.0 ? v_dt : median_spacing(traj.utrace.times);
    if (!(icfg.dt > 0.0)) throw std::invalid_argument("split_trajectory: degenerate trace spacing");
    icfg.record_every = 0; // scalars not needed; we read the traces
    icfg.keep_traces = true;
    icfg.trace_every = 1;

    TrajectoryRecord vrun =
        integrate_auxiliary(traj.utrace, v0, L, t_end - start, icfg, cfg, f, {});

    SplitReport rep;
    rep.t0 = start;
    rep.L = L;
    rep.lowpass_m = lowpass_m;

    std::vector<double> ubuf, vbuf;
    for (std::size_t i = 0; i < vrun.utrace.times.size(); ++i) {
        const double t = vrun.utrace.times[i];
        traj.utrace.sample_into(t, ubuf);
        traj.vtrace.sample_into(t, vbuf);
        SpectralField wu(cfg.domain, cfg.n), wv(cfg.domain, cfg.n);
        SpectralField vu(cfg.domain, cfg.n), vv(cfg.domain, cfg.n);
        vu.coeffs() = vrun.utrace.coeffs[i];
        vv.coeffs() = vrun.vtrace.coeffs[i];
        for (std::size_t k = 0; k < wu.size(); ++k) {
            wu.coeffs()[k] = ubuf[k] - vu.coeffs()[k];
            wv.coeffs()[k] = vbuf[k] - vv.coeffs()[k];
        }
        rep.times.push_back(t);
        rep.w_x0.push_back(x0_norm(State(wu, wv, t), cfg, f));
        rep.v_h4.push_back(sobolev_norm(vu, 4.0));
        rep.vt_h2.push_back(sobolev_norm(vv, 2.0));
    }

    // decay fit anchored at the peak of |w| (the split relaxes from its
    // initialization; before the peak the series may be vacuously small),
    // keeping samples above the floor where scheme truncation takes over
    std::size_t peak = 0;
    for (std::size_t i = 1; i < rep.w_x0.size(); ++i)
        if (rep.w_x0[i] > rep.w_x0[peak]) peak = i;
    const double w_peak = rep.w_x0[peak] > 0.0 ? rep.w_x0[peak] : 1.0;
    const double floor_level = w_peak * fit_floor_rel;
    std::vector<double> ft, fy;
    for (std::size_t i = peak; i < rep.times.size(); ++i) {
        if (rep.w_x0[i] > floor_level) {
            ft.push_back(rep.times[i] - start);
            fy.push_back(rep.w_x0[i]);
        }
    }
    if (ft.size() >= 4) {
        // skip a short post-peak head (mixed fast transients)
        TimeWindow win{ft.front() + 0.05 * (ft.back() - ft.front()), ft.back()};
        try {
            rep.decay = fit_exponential(ft, fy, win);
        } catch (const std::exception&) {
            rep.decay = DecayFit{};
        }
    }

    // tail ball: once w has decayed (or over the last half of the span)
    double tail_from = start + 0.5 * (t_end - start);
    for (std::size_t i = peak; i < rep.times.size(); ++i)
        if (rep.w_x0[i] < w_peak * 1e-6) {
            tail_from = std::min(tail_from, rep.times[i]);
            break;
        }
    double r0 = 0.0;
    for (std::size_t i = 0; i < rep.times.size(); ++i)
        if (rep.times[i] >= tail_from)
            r0 = std::max(r0, std::sqrt(rep.v_h4[i] * rep.v_h4[i] + rep.vt_h2[i] * rep.vt_h2[i]));
    rep.ball_radius = r0;
    rep.in_ball.resize(rep.times.size());
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        double r = std::sqrt(rep.v_h4[i] * rep.v_h4[i] + rep.vt_h2[i] * rep.vt_h2[i]);
        rep.in_ball[i] = r <= r0 * (1.0 + 1e-12) ? 1 : 0;
    }
    return rep;
}

BallDistance smooth_ball_distance(const SplitReport& report, double t, double r0_override) {
    if (report.times.empty()) throw std::invalid_argument("smooth_ball_distance: empty report");
    if (t < report.times.front() - 1e-12 || t > report.times.back() + 1e-12)
        throw std::domain_error("smooth_ball_distance: t outside the report range");
    std::size_t best = 0;
    for (std::size_t i = 1; i < report.times.size(); ++i)
        if (std::abs(report.times[i] - t) < std::abs(report.times[best] - t)) best = i;
    const double r0 = r0_override > 0.0 ? r0_override : report.ball_radius;
    BallDistance out;
    out.upper_bound = report.w_x0[best];
    double r = std::sqrt(report.v_h4[best] * report.v_h4[best] +
                         report.vt_h2[best] * report.vt_h2[best]);
    out.certified = r <= r0 * (1.0 + 1e-12);
    return out;
}

double analytic_split_rate(const DomainSpec& dom, int n, int lowpass_m, double eps, double L) {
    SpectralField probe(dom, n);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < probe.size(); ++k) {
        int i1, i2 = 0;
        if (dom.dimension == 1) {
            i1 = static_cast<int>(k) + 1;
        } else {
            i1 = static_cast<int>(k) / n + 1;
            i2 = static_cast<int>(k) % n + 1;
        }
        bool lowpass = dom.dimension == 1 ? (i1 <= lowpass_m) : (i1 <= lowpass_m && i2 <= lowpass_m);
        if (lowpass) continue; // these modes start (and stay) at zero in the linear control
        double lam = probe.eigenvalue_flat(k);
        double sigma = lam * lam + L / lam;
        double disc = 1.0 - 4.0 * eps * sigma;
        double rate = disc < 0.0 ? 1.0 / (2.0 * eps) : (1.0 - std::sqrt(disc)) / (2.0 * eps);
        best = std::min(best, rate);
    }
    return best;
}

EpsScalingReport eps_comparison(const SpectralField& u0, std::vector<double> eps_list, double T,
                                double L0, const ProblemConfig& cfg_base,
                                const NonlinearityModel& f, const EpsComparisonOptions& opts) {
    if (eps_list.empty()) throw std::domain_error("eps_comparison: empty eps list");
    std::sort(eps_list.begin(), eps_list.end(), std::greater<double>());
    for (double e : eps_list)
        if (!(e > 0.0) || e > 1.0) throw std::domain_error("eps_comparison: eps must lie in (0,1]");
    if (std::adjacent_find(eps_list.begin(), eps_list.end()) != eps_list.end())
        throw std::domain_error("eps_comparison: duplicate eps values");

    EpsScalingReport rep;
    rep.eps_values = eps_list;
    rep.sup_diff_hminus1.assign(eps_list.size(), 0.0);
    rep.sup_diff_l2.assign(eps_list.size(), 0.0);
    std::vector<std::string> failures(eps_list.size());

    auto run_one = [&](std::size_t e) {
        try {
            ProblemConfig cfg = cfg_base;
            cfg.epsilon = eps_list[e];
            State s0(with_cutoff(u0, cfg.n), SpectralField(cfg.domain, cfg.n), 0.0);

            IntegratorConfig icfg;
            icfg.scheme = IntegratorConfig::Scheme::reference;
            icfg.rel_tol = opts.ref_rel_tol;
            icfg.abs_tol = opts.ref_abs_tol;
            icfg.record_every = 0;
            icfg.keep_traces = true;
            TrajectoryRecord hyper = integrate(s0, T, icfg, cfg, f, {});

            TrajectoryRecord parab =
                integrate_parabolic(with_cutoff(u0, cfg.n), T, cfg, f, L0,
                                    L0 != 0.0 ? &hyper.utrace : nullptr, opts.parabolic_dt, {},
                                    0, true);

            double sup_h = 0.0, sup_l2 = 0.0;
            std::vector<double> pbuf;
            SpectralField probe(cfg.domain, cfg.n);
            for (std::size_t i = 0; i < hyper.utrace.times.size(); ++i) {
                double t = hyper.utrace.times[i];
                parab.utrace.sample_into(t, pbuf);
                double acc_h = 0.0, acc_l2 = 0.0;
                for (std::size_t k = 0; k < pbuf.size(); ++k) {
                    double d = hyper.utrace.coeffs[i][k] - pbuf[k];
                    acc_l2 += d * d;
                    acc_h += d * d / probe.eigenvalue_flat(k);
                }
                sup_h = std::max(sup_h, std::sqrt(acc_h));
                sup_l2 = std::max(sup_l2, std::sqrt(acc_l2));
            }
            rep.sup_diff_hminus1[e] = sup_h;
            rep.sup_diff_l2[e] = sup_l2;
        } catch (const std::exception& ex) {
            failures[e] = "eps=" + std::to_string(eps_list[e]) + ": " + ex.what();
            rep.sup_diff_hminus1[e] = std::numeric_limits<double>::quiet_NaN();
            rep.sup_diff_l2[e] = std::numeric_limits<double>::quiet_NaN();
        }
    };

    // per-eps runs are independent; results land in preassigned slots
    {
        std::vector<std::future<void>> jobs;
        for (std::size_t e = 0; e < eps_list.size(); ++e)
            jobs.push_back(std::async(std::launch::async, run_one, e));
        for (auto& j : jobs) j.get();
    }
    for (auto& msg : failures)
        if (!msg.empty()) rep.failures.push_back(msg);

    // slope of log(sup^2) vs log(eps); spread of sup^2/eps
    std::vector<double> lx, ly, ratios;
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        double s = rep.sup_diff_hminus1[e];
        if (!std::isfinite(s) || !(s > 0.0)) continue;
        lx.push_back(std::log(eps_list[e]));
        ly.push_back(2.0 * std::log(s));
        ratios.push_back(s * s / eps_list[e]);
    }
    if (lx.size() >= 2) {
        double n = static_cast<double>(lx.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        rep.slope_defined = true;
    }
    if (!ratios.empty()) {
        double lo = *std::min_element(ratios.begin(), ratios.end());
        double hi = *std::max_element(ratios.begin(), ratios.end());
        rep.ratio_spread = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    }
    return rep;
}

BackwardBoundReport backward_bound_check(const TrajectoryRecord& traj, const TimeWindow& tail,
                                         double threshold, const ProblemConfig& cfg,
                                         const NonlinearityModel& f) {
    BackwardBoundReport rep;
    rep.tail = tail;
    rep.threshold = threshold;
    for (const auto& s : traj.checkpoints) {
        if (!tail.contains(s.t)) continue;
        double h4 = sobolev_norm(s.u, 4.0);
        double h2 = sobolev_norm(s.v, 2.0);
        double acc = sobolev_norm(acceleration(s, cfg, f), 0.0);
        double val = h4 * h4 + h2 * h2 + cfg.epsilon * acc * acc;
        rep.times.push_back(s.t);
        rep.values.push_back(val);
        rep.tail_sup = std::max(rep.tail_sup, val);
    }
    if (rep.times.empty())
        throw std::invalid_argument("backward_bound_check: no checkpoints in the tail window");
    rep.within = rep.tail_sup <= threshold;
    return rep;
}

} // namespace ich
