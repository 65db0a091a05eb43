#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ich/diagnostics.hpp"
#include "ich/dynamics.hpp"

namespace ich {

// Splitting u = v + w: v solves the L A^{-1}-damped auxiliary equation
// started from the low-pass part of u(t0); w is the remainder and should
// decay exponentially while (v, v_t) stays in a finite H4 x H2 ball.
struct SplitReport {
    double t0 = 0.0;
    double L = 0.0;
    int lowpass_m = 0;
    std::vector<double> times;   // aligned sample times
    std::vector<double> w_x0;    // |w|_{X0}
    std::vector<double> v_h4;    // |v|_{H4}
    std::vector<double> vt_h2;   // |v_t|_{H2}
    DecayFit decay;              // fit of w_x0 over the decaying transient
    double ball_radius = 0.0;    // R0: max over the tail of sqrt(|v|_H4^2 + |v_t|_H2^2)
    std::vector<int> in_ball;    // per sample, against ball_radius
};

SplitReport split_trajectory(const TrajectoryRecord& traj, double L, double t0, int lowpass_m,
                             const ProblemConfig& cfg, const NonlinearityModel& f,
                             double v_dt = 0.0 /* 0: median trace spacing */,
                             double fit_floor_rel = 1e-8 /* fit keeps w above this * w(t0) */);

struct BallDistance {
    double upper_bound = 0.0; // |w(t)|_{X0}
    bool certified = false;   // (v(t), v_t(t)) inside the R0-ball
};
BallDistance smooth_ball_distance(const SplitReport& report, double t, double r0_override = 0.0);

// min over modes beyond the low-pass cutoff of the analytic decay rate of
// eps a'' + a' + (lam^2 + L/lam) a = 0 (the linear-f control).
double analytic_split_rate(const DomainSpec& dom, int n, int lowpass_m, double eps, double L);

// For each eps, integrate the hyperbolic system from (u0, 0) and the
// L0-coupled parabolic comparison from the same u0, and record the sup in
// time of the H^{-1} (and L2) difference. slope fits log sup^2 against
// log eps; ratio_spread is max/min of sup^2/eps.
struct EpsScalingReport {
    std::vector<double> eps_values; // strictly decreasing
    std::vector<double> sup_diff_hminus1;
    std::vector<double> sup_diff_l2;
    double slope = 0.0;
    bool slope_defined = false;
    double ratio_spread = 0.0;
    std::vector<std::string> failures;
};

struct EpsComparisonOptions {
    double ref_rel_tol = 1e-8;
    double ref_abs_tol = 1e-10;
    double parabolic_dt = 2e-4;
};

EpsScalingReport eps_comparison(const SpectralField& u0, std::vector<double> eps_list, double T,
                                double L0, const ProblemConfig& cfg_base,
                                const NonlinearityModel& f, const EpsComparisonOptions& opts = {});

// sup over the declared tail of |u|^2_{H4} + |u_t|^2_{H2} + eps |u_tt|^2,
// with u_tt recovered from the equation.
struct BackwardBoundReport {
    double tail_sup = 0.0;
    double threshold = 0.0;
    bool within = false;
    TimeWindow tail;
    std::vector<double> times;
    std::vector<double> values;
};
BackwardBoundReport backward_bound_check(const TrajectoryRecord& traj, const TimeWindow& tail,
                                         double threshold, const ProblemConfig& cfg,
                                         const NonlinearityModel& f);

} // namespace ich
