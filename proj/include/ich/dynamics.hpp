#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ich/functionals.hpp"
#include "ich/problem.hpp"

namespace ich {

struct IntegratorConfig {
    enum class Scheme { imex, reference };
    Scheme scheme = Scheme::imex;
    double dt = 1e-3;       // imex step
    double rel_tol = 1e-8;  // reference tolerance pair
    double abs_tol = 1e-10;
    double max_dt = 0.0;    // reference: cap on the step size (0 = none)
    int record_every = 1;     // scalar sample cadence, in accepted steps
    int checkpoint_every = 0; // full-state cadence (0 = first and last only)
    bool keep_traces = false; // dense u and u_t traces for forcing / splitting
    int trace_every = 1;
};

// Dense time series of u coefficients with linear interpolation, used to
// force the auxiliary and parabolic comparison equations.
struct FieldTrace {
    DomainSpec domain;
    int n = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> coeffs;

    bool empty() const { return times.empty(); }
    bool covers(double t0, double t1) const;
    void sample_into(double t, std::vector<double>& out) const;
    SpectralField at(double t) const;
};

struct TrajectoryRecord {
    ProblemConfig problem;
    std::vector<double> times;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> scalars; // scalars[c][sample]
    std::vector<State> checkpoints;           // strictly increasing time stamps
    FieldTrace utrace;
    FieldTrace vtrace;
    double dissipation_integral = 0.0;        // int_0^T |u_t|^2_{V'} (trapezoid in step time)

    const std::vector<double>& column(const std::string& name) const;
    bool has_column(const std::string& name) const;
    std::size_t samples() const { return times.size(); }
};

struct NamedObserver {
    std::string name;
    std::function<double(const State&)> fn;
};

// Builders for the standard scalar columns (E_eps, x0_norm, vnorm_s,
// linf_u, linf_ut, ut_vprime_sq, u_vprime_sq, u_v_sq, cross_ainv, fu_pair,
// g_ainv_u). Unknown names throw.
std::vector<NamedObserver> make_observers(const ProblemConfig& cfg, const NonlinearityModel& f,
                                          const std::vector<std::string>& names);
std::vector<std::string> default_observer_names();

// du = v, dv = (P_n g - v - A(Au + P_n f(u)))/eps. Requires eps > 0.
std::pair<SpectralField, SpectralField> rhs(const State& s, const ProblemConfig& cfg,
                                            const NonlinearityModel& f);

// One step of the semi-implicit scheme: A^2, damping, and the optional
// L A^{-1} coupling implicit (diagonal 2x2 per mode), f explicit.
State step_imex(const State& s, double dt, const ProblemConfig& cfg, const NonlinearityModel& f);

// One adaptive Dormand-Prince 5(4) step (used as the accuracy oracle).
// Returns the new state and the next step-size suggestion.
struct ReferenceStepResult {
    State state;
    double dt_taken;
    double dt_next;
};
ReferenceStepResult step_reference(const State& s, double dt_try, const ProblemConfig& cfg,
                                   const NonlinearityModel& f, double rel_tol, double abs_tol);

// Advance to time T recording the requested scalar columns.
TrajectoryRecord integrate(const State& state0, double T, const IntegratorConfig& icfg,
                           const ProblemConfig& cfg, const NonlinearityModel& f,
                           const std::vector<NamedObserver>& observers);

// First-order-in-time solve of
//   u_t + A(Au + P_n f(u)) + L0 A^{-1} u = P_n g + L0 A^{-1} u_force(t),
// the parabolic comparison problem (classical Cahn-Hilliard for L0=0).
// The diagonal stiff part is propagated exactly per mode; f and the
// forcing are explicit.
TrajectoryRecord integrate_parabolic(const SpectralField& u0, double T, const ProblemConfig& cfg,
                                     const NonlinearityModel& f, double L0,
                                     const FieldTrace* forcing, double dt,
                                     const std::vector<NamedObserver>& observers,
                                     int record_every = 1, bool keep_traces = false);

// The L-damped auxiliary hyperbolic equation forced by a recorded
// trajectory u:  eps v_tt + v_t + A(Av + P_n f(v)) + L A^{-1} v
//                  = P_n g + L A^{-1} u(t).
TrajectoryRecord integrate_auxiliary(const FieldTrace& u_trace, const State& v0, double L,
                                     double T, const IntegratorConfig& icfg,
                                     const ProblemConfig& cfg, const NonlinearityModel& f,
                                     const std::vector<NamedObserver>& observers);

// u_tt recovered from the equation (needed by the tail-regularity checks).
SpectralField acceleration(const State& s, const ProblemConfig& cfg, const NonlinearityModel& f);

} // namespace ich
