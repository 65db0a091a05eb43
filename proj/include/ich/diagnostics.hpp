#pragma once

#include <vector>

#include "ich/dynamics.hpp"

namespace ich {

struct TimeWindow {
    double t0 = 0.0;
    double t1 = 0.0;
    bool contains(double t) const { return t >= t0 && t <= t1; }
};

struct DecayFit {
    double rate = 0.0;      // -slope of the log-linear fit
    double amplitude = 0.0; // exp(intercept)
    double r_squared = 0.0;
    TimeWindow window;
    int points = 0;
};

struct EnergyReport {
    double e_eps = 0.0;
    double y_eps = 0.0;
    double x0 = 0.0;
    double v_norms[6] = {0, 0, 0, 0, 0, 0}; // s = -2..3
    double linf_u = 0.0;
    double linf_ut = 0.0;
    double dissipation_integral = 0.0;
};

struct DissipationCheck {
    double c_fit = 0.0;
    double kappa_fit = 0.0;
    bool satisfied = false;
    bool degenerate = false; // flat series or unusable transient
    double plateau = 0.0;
    double r_squared = 0.0;
};

// max_t | E(t) - E(0) + int_0^t |u_t|^2_{V'} ds |, trapezoid over the
// recorded samples. Requires columns E_eps and ut_vprime_sq and at least
// 100 samples per unit time.
double energy_equality_residual(const TrajectoryRecord& traj);

// Residual of the A^{-1}u test identity in integral form:
// [eps<u_t,A^{-1}u> + 1/2 |u|^2_{V'}]_0^t
//   = int_0^t (eps |u_t|^2_{V'} - |u|^2_V - <f(u),u> + <g,A^{-1}u>) ds.
double second_identity_residual(const TrajectoryRecord& traj);

// Fits (C, kappa) for |U|^2_{X0} <= C |U0|^2 e^{-kappa t} + C (1+|g|^2)
// on the transient, then takes the smallest C making the bound hold
// pointwise over the whole run. Requires column x0_norm.
DissipationCheck dissipation_check(const TrajectoryRecord& traj, const TimeWindow& fit_window);

// Fixed-n stand-in for the limit energy functional: the X0 norm itself.
double m_proxy(const State& s, const ProblemConfig& cfg, const NonlinearityModel& f);

// Least squares on (t, log y) within the window. Nonpositive samples in
// the window are a domain error.
DecayFit fit_exponential(const std::vector<double>& t, const std::vector<double>& y,
                         const TimeWindow& window);

struct MetricSelector {
    enum class Kind { vs, x0 } kind = Kind::vs;
    double order = 0.0; // V^s_eps order when kind == vs
    static MetricSelector v_norm(double s) { return {Kind::vs, s}; }
    static MetricSelector x0() { return {Kind::x0, 0.0}; }
};

double state_distance(const State& a, const State& b, const MetricSelector& m,
                      const ProblemConfig& cfg, const NonlinearityModel& f);

// sup_{a in A} inf_{b in B} d(a,b); exact double loop over finite sets.
double hausdorff_semidistance(const std::vector<State>& a, const std::vector<State>& b,
                              const MetricSelector& m, const ProblemConfig& cfg,
                              const NonlinearityModel& f);

// Z = 1/2 (eps|u_t|^2 + |u|^2_{H2} + (f'(u) grad u, grad u) + L0 |u|^2
//          + 2 gamma eps (u, u_t))
double z_functional(const State& s, const ProblemConfig& cfg, const NonlinearityModel& f,
                    double L0, double gamma);

// max over checkpoints of |u|^2_Linf / ((1+|u|^2_H1) ln(e+|u|^2_H2)).
// 2D only; ln(e+x) instead of ln(1+x) so the denominator never vanishes.
double brezis_gallouet_monitor(const TrajectoryRecord& traj);

EnergyReport energy_report(const State& s, const ProblemConfig& cfg, const NonlinearityModel& f,
                           double alpha = 0.0, double cstar = 0.0,
                           double dissipation_integral = 0.0);

} // namespace ich
