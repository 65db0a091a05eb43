#include "ich/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ich/errors.hpp"
#include "ich/quadrature.hpp"

namespace ich {

bool FieldTrace::covers(double t0, double t1) const {
    if (times.empty()) return false;
    const double slack = 1e-9 * std::max(1.0, std::abs(times.back() - times.front()));
    return times.front() - slack <= t0 && t1 <= times.back() + slack;
}

void FieldTrace::sample_into(double t, std::vector<double>& out) const {
    if (times.empty()) throw std::invalid_argument("FieldTrace: empty trace");
    out.assign(coeffs.front().size(), 0.0);
    if (t <= times.front()) {
        out = coeffs.front();
        return;
    }
    if (t >= times.back()) {
        out = coeffs.back();
        return;
    }
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - times.begin());
    std::size_t lo = hi - 1;
    double span = times[hi] - times[lo];
    double w = span > 0.0 ? (t - times[lo]) / span : 0.0;
    const auto& a = coeffs[lo];
    const auto& b = coeffs[hi];
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = (1.0 - w) * a[k] + w * b[k];
}

SpectralField FieldTrace::at(double t) const {
    SpectralField f(domain, n);
    sample_into(t, f.coeffs());
    return f;
}

const std::vector<double>& TrajectoryRecord::column(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (columns[c] == name) return scalars[c];
    throw std::invalid_argument("TrajectoryRecord: no column named " + name);
}

bool TrajectoryRecord::has_column(const std::string& name) const {
    for (const auto& c : columns)
        if (c == name) return true;
    return false;
}

std::vector<std::string> default_observer_names() {
    return {"E_eps",   "x0_norm", "vnorm_m2", "vnorm_m1", "vnorm_0",      "vnorm_1",
            "vnorm_2", "vnorm_3", "linf_u",   "linf_ut",  "diss_integral"};
}

std::vector<NamedObserver> make_observers(const ProblemConfig& cfg, const NonlinearityModel& f,
                                          const std::vector<std::string>& names) {
    std::vector<NamedObserver> out;
    for (const auto& name : names) {
        NamedObserver o;
        o.name = name;
        if (name == "E_eps") {
            o.fn = [cfg, f](const State& s) { return energy(s, cfg, f); };
        } else if (name == "x0_norm") {
            o.fn = [cfg, f](const State& s) { return x0_norm(s, cfg, f); };
        } else if (name == "x0_sq") {
            o.fn = [cfg, f](const State& s) { return x0_norm_sq(s, cfg, f); };
        } else if (name == "vnorm_m2" || name == "vnorm_m1" || name == "vnorm_0" ||
                   name == "vnorm_1" || name == "vnorm_2" || name == "vnorm_3") {
            double order = 0.0;
            if (name == "vnorm_m2") order = -2.0;
            else if (name == "vnorm_m1") order = -1.0;
            else if (name == "vnorm_0") order = 0.0;
            else if (name == "vnorm_1") order = 1.0;
            else if (name == "vnorm_2") order = 2.0;
            else order = 3.0;
            double eps = cfg.epsilon;
            o.fn = [order, eps](const State& s) { return vs_norm(s, order, eps); };
        } else if (name == "linf_u") {
            o.fn = [](const State& s) { return linf_norm(s.u); };
        } else if (name == "linf_ut") {
            o.fn = [](const State& s) { return linf_norm(s.v); };
        } else if (name == "ut_vprime_sq") {
            o.fn = [](const State& s) {
                double v = sobolev_norm(s.v, -1.0);
                return v * v;
            };
        } else if (name == "u_vprime_sq") {
            o.fn = [](const State& s) {
                double v = sobolev_norm(s.u, -1.0);
                return v * v;
            };
        } else if (name == "u_v_sq") {
            o.fn = [](const State& s) {
                double v = sobolev_norm(s.u, 1.0);
                return v * v;
            };
        } else if (name == "cross_ainv") {
            o.fn = [](const State& s) { return inner_power(s.v, s.u, -1.0); };
        } else if (name == "fu_pair") {
            o.fn = [f](const State& s) { return f_u_pairing(s.u, f); };
        } else if (name == "g_ainv_u") {
            SpectralField g = cfg.g;
            o.fn = [g](const State& s) { return inner_power(g, s.u, -1.0); };
        } else if (name == "diss_integral") {
            o.fn = nullptr; // integrator-accumulated
        } else {
            throw std::invalid_argument("unknown observer: " + name);
        }
        out.push_back(std::move(o));
    }
    return out;
}

namespace {

double vprime_sq(const SpectralField& v) {
    double s = sobolev_norm(v, -1.0);
    return s * s;
}

// Shared recording machinery for all integrators.
class RecordBuilder {
public:
    RecordBuilder(const ProblemConfig& cfg, const IntegratorConfig& icfg,
                  const std::vector<NamedObserver>& obs)
        : icfg_(icfg), observers_(obs) {
        rec_.problem = cfg;
        for (const auto& o : obs) {
            rec_.columns.push_back(o.name);
            rec_.scalars.emplace_back();
        }
        rec_.utrace.domain = cfg.domain;
        rec_.utrace.n = cfg.n;
        rec_.vtrace.domain = cfg.domain;
        rec_.vtrace.n = cfg.n;
    }

    void start(const State& s) {
        last_vpsq_ = vprime_sq(s.v);
        last_t_ = s.t;
        record_sample(s);
        rec_.checkpoints.push_back(s);
        if (icfg_.keep_traces) push_traces(s);
    }

    void accepted(const State& s) {
        ++step_;
        double vpsq = vprime_sq(s.v);
        rec_.dissipation_integral += 0.5 * (last_vpsq_ + vpsq) * (s.t - last_t_);
        last_vpsq_ = vpsq;
        last_t_ = s.t;
        if (icfg_.record_every > 0 && step_ % icfg_.record_every == 0) record_sample(s);
        if (icfg_.checkpoint_every > 0 && step_ % icfg_.checkpoint_every == 0)
            rec_.checkpoints.push_back(s);
        if (icfg_.keep_traces && step_ % std::max(1, icfg_.trace_every) == 0) push_traces(s);
    }

    TrajectoryRecord finish(const State& s) {
        if (rec_.times.empty() || rec_.times.back() != s.t) record_sample(s);
        if (rec_.checkpoints.empty() || rec_.checkpoints.back().t != s.t)
            rec_.checkpoints.push_back(s);
        if (icfg_.keep_traces &&
            (rec_.utrace.times.empty() || rec_.utrace.times.back() != s.t))
            push_traces(s);
        return std::move(rec_);
    }

    // whether the next accepted step will evaluate observers or store a state
    bool next_step_needs_state() const {
        long next = step_ + 1;
        if (icfg_.record_every > 0 && next % icfg_.record_every == 0) return true;
        if (icfg_.checkpoint_every > 0 && next % icfg_.checkpoint_every == 0) return true;
        return false;
    }

private:
    void record_sample(const State& s) {
        rec_.times.push_back(s.t);
        for (std::size_t c = 0; c < observers_.size(); ++c) {
            double v = observers_[c].fn ? observers_[c].fn(s) : rec_.dissipation_integral;
            rec_.scalars[c].push_back(v);
        }
    }

    void push_traces(const State& s) {
        rec_.utrace.times.push_back(s.t);
        rec_.utrace.coeffs.push_back(s.u.coeffs());
        rec_.vtrace.times.push_back(s.t);
        rec_.vtrace.coeffs.push_back(s.v.coeffs());
    }

    TrajectoryRecord rec_;
    IntegratorConfig icfg_;
    const std::vector<NamedObserver>& observers_;
    long step_ = 0;
    double last_vpsq_ = 0.0;
    double last_t_ = 0.0;
};

// Forcing h(t) = P_n g + Lweak A^{-1} u_trace(t); Lweak also adds the
// diagonal Lweak/lambda term to the implicit part.
struct HyperbolicOps {
    const ProblemConfig* cfg;
    const NonlinearityModel* f;
    double Lweak = 0.0;
    const FieldTrace* trace = nullptr;
    mutable std::vector<double> trace_buf;

    void forcing_into(double t, std::vector<double>& h) const {
        h = cfg->g.coeffs();
        if (trace != nullptr && Lweak != 0.0) {
            trace->sample_into(t, const_cast<std::vector<double>&>(trace_buf));
            for (std::size_t k = 0; k < h.size(); ++k)
                h[k] += Lweak * trace_buf[k] / cfg->g.eigenvalue_flat(k);
        }
    }

    // du = v, dv = (h - v - A(Au + P_n f(u)) - Lweak A^{-1} u)/eps
    void rhs(const State& s, SpectralField& du, SpectralField& dv) const {
        du = s.v;
        SpectralField fn = f->is_zero() ? SpectralField(cfg->domain, cfg->n)
                                        : nonlinear_term(s.u, *f, cfg->n);
        std::vector<double> h;
        forcing_into(s.t, h);
        dv = SpectralField(cfg->domain, cfg->n);
        const double inv_eps = 1.0 / cfg->epsilon;
        for (std::size_t k = 0; k < h.size(); ++k) {
            double lam = s.u.eigenvalue_flat(k);
            double uk = s.u.coeffs()[k];
            double val = h[k] - s.v.coeffs()[k] - lam * (lam * uk + fn.coeffs()[k]);
            if (Lweak != 0.0) val -= Lweak * uk / lam;
            dv.coeffs()[k] = val * inv_eps;
        }
    }

    State imex_step(const State& s, double dt) const {
        SpectralField fn = f->is_zero() ? SpectralField(cfg->domain, cfg->n)
                                        : nonlinear_term(s.u, *f, cfg->n);
        std::vector<double> h;
        // endpoint sampling keeps the implicit L-coupling consistent with
        // the forcing trajectory's own implicit update: the difference
        // u - v then obeys the homogeneous damped equation discretely
        forcing_into(s.t + dt, h);
        State out = s;
        out.t = s.t + dt;
        const double eps = cfg->epsilon;
        for (std::size_t k = 0; k < h.size(); ++k) {
            double lam = s.u.eigenvalue_flat(k);
            double sigma = lam * lam + Lweak / lam;
            double r = h[k] - lam * fn.coeffs()[k];
            double vk = (eps * s.v.coeffs()[k] + dt * (r - sigma * s.u.coeffs()[k])) /
                        (eps + dt + sigma * dt * dt);
            out.v.coeffs()[k] = vk;
            out.u.coeffs()[k] = s.u.coeffs()[k] + dt * vk;
        }
        return out;
    }
};

// Dormand-Prince 5(4) tableau
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 35.0 / 384 - 5179.0 / 57600, kE3 = 500.0 / 1113 - 7571.0 / 16695,
                 kE4 = 125.0 / 192 - 393.0 / 640, kE5 = -2187.0 / 6784 + 92097.0 / 339200,
                 kE6 = 11.0 / 84 - 187.0 / 2100, kE7 = -1.0 / 40;
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;

struct RkStage {
    SpectralField du, dv;
};

State combine(const State& s, double dt, std::initializer_list<std::pair<double, const RkStage*>> terms) {
    State out = s;
    for (const auto& [w, st] : terms) {
        if (w == 0.0) continue;
        const double c = dt * w;
        for (std::size_t k = 0; k < out.u.size(); ++k) {
            out.u.coeffs()[k] += c * st->du.coeffs()[k];
            out.v.coeffs()[k] += c * st->dv.coeffs()[k];
        }
    }
    return out;
}

ReferenceStepResult reference_attempts(const HyperbolicOps& ops, const State& s, double dt_try,
                                       double rel_tol, double abs_tol) {
    RkStage k1, k2, k3, k4, k5, k6, k7;
    double dt = dt_try;
    for (;;) {
        if (dt < 1e-14)
            throw NumericalError("reference integrator: step underflow (stiffness failure); "
                                 "reduce n or switch to the imex scheme");
        ops.rhs(s, k1.du, k1.dv);
        State s2 = combine(s, dt, {{kA21, &k1}});
        s2.t = s.t + kC2 * dt;
        ops.rhs(s2, k2.du, k2.dv);
        State s3 = combine(s, dt, {{kA31, &k1}, {kA32, &k2}});
        s3.t = s.t + kC3 * dt;
        ops.rhs(s3, k3.du, k3.dv);
        State s4 = combine(s, dt, {{kA41, &k1}, {kA42, &k2}, {kA43, &k3}});
        s4.t = s.t + kC4 * dt;
        ops.rhs(s4, k4.du, k4.dv);
        State s5 = combine(s, dt, {{kA51, &k1}, {kA52, &k2}, {kA53, &k3}, {kA54, &k4}});
        s5.t = s.t + kC5 * dt;
        ops.rhs(s5, k5.du, k5.dv);
        State s6 = combine(s, dt, {{kA61, &k1}, {kA62, &k2}, {kA63, &k3}, {kA64, &k4}, {kA65, &k5}});
        s6.t = s.t + dt;
        ops.rhs(s6, k6.du, k6.dv);
        State ynew = combine(s, dt, {{kB1, &k1}, {kB3, &k3}, {kB4, &k4}, {kB5, &k5}, {kB6, &k6}});
        ynew.t = s.t + dt;
        ops.rhs(ynew, k7.du, k7.dv);

        // weighted RMS error over both components
        double acc = 0.0;
        const std::size_t n = s.u.size();
        for (std::size_t k = 0; k < n; ++k) {
            double eu = dt * (kE1 * k1.du.coeffs()[k] + kE3 * k3.du.coeffs()[k] +
                              kE4 * k4.du.coeffs()[k] + kE5 * k5.du.coeffs()[k] +
                              kE6 * k6.du.coeffs()[k] + kE7 * k7.du.coeffs()[k]);
            double ev = dt * (kE1 * k1.dv.coeffs()[k] + kE3 * k3.dv.coeffs()[k] +
                              kE4 * k4.dv.coeffs()[k] + kE5 * k5.dv.coeffs()[k] +
                              kE6 * k6.dv.coeffs()[k] + kE7 * k7.dv.coeffs()[k]);
            double su = abs_tol + rel_tol * std::max(std::abs(s.u.coeffs()[k]), std::abs(ynew.u.coeffs()[k]));
            double sv = abs_tol + rel_tol * std::max(std::abs(s.v.coeffs()[k]), std::abs(ynew.v.coeffs()[k]));
            acc += (eu / su) * (eu / su) + (ev / sv) * (ev / sv);
        }
        double err = std::sqrt(acc / (2.0 * n));
        if (err <= 1.0) {
            double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            double dt_next = dt * std::clamp(grow, 0.2, 5.0);
            return {std::move(ynew), dt, dt_next};
        }
        dt *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
}

TrajectoryRecord run_hyperbolic(const HyperbolicOps& ops, const State& state0, double T,
                                const IntegratorConfig& icfg,
                                const std::vector<NamedObserver>& observers) {
    if (T < 0.0) throw std::domain_error("integrate: T must be >= 0");
    RecordBuilder rb(*ops.cfg, icfg, observers);
    State s = state0;
    rb.start(s);
    const double t_end = state0.t + T;
    if (T == 0.0) return rb.finish(s);
    if (icfg.scheme == IntegratorConfig::Scheme::imex) {
        if (!(icfg.dt > 0.0)) throw std::domain_error("imex: dt must be positive");
        while (s.t < t_end - 1e-12 * std::max(1.0, t_end)) {
            double dt = std::min(icfg.dt, t_end - s.t);
            s = ops.imex_step(s, dt);
            rb.accepted(s);
        }
    } else {
        double dt_next = icfg.max_dt > 0.0 ? icfg.max_dt : 1e-3;
        while (s.t < t_end - 1e-12 * std::max(1.0, t_end)) {
            double dt_try = std::min(dt_next, t_end - s.t);
            if (icfg.max_dt > 0.0) dt_try = std::min(dt_try, icfg.max_dt);
            auto res = reference_attempts(ops, s, dt_try, icfg.rel_tol, icfg.abs_tol);
            s = std::move(res.state);
            dt_next = res.dt_next;
            rb.accepted(s);
        }
    }
    return rb.finish(s);
}

} // namespace

std::pair<SpectralField, SpectralField> rhs(const State& s, const ProblemConfig& cfg,
                                            const NonlinearityModel& f) {
    if (!(cfg.epsilon > 0.0))
        throw std::domain_error("rhs: epsilon must be positive (use integrate_parabolic)");
    HyperbolicOps ops{&cfg, &f, 0.0, nullptr, {}};
    SpectralField du, dv;
    ops.rhs(s, du, dv);
    return {std::move(du), std::move(dv)};
}

State step_imex(const State& s, double dt, const ProblemConfig& cfg, const NonlinearityModel& f) {
    if (!(dt > 0.0)) throw std::domain_error("step_imex: dt must be positive");
    HyperbolicOps ops{&cfg, &f, 0.0, nullptr, {}};
    return ops.imex_step(s, dt);
}

ReferenceStepResult step_reference(const State& s, double dt_try, const ProblemConfig& cfg,
                                   const NonlinearityModel& f, double rel_tol, double abs_tol) {
    HyperbolicOps ops{&cfg, &f, 0.0, nullptr, {}};
    return reference_attempts(ops, s, dt_try, rel_tol, abs_tol);
}

TrajectoryRecord integrate(const State& state0, double T, const IntegratorConfig& icfg,
                           const ProblemConfig& cfg, const NonlinearityModel& f,
                           const std::vector<NamedObserver>& observers) {
    HyperbolicOps ops{&cfg, &f, 0.0, nullptr, {}};
    return run_hyperbolic(ops, state0, T, icfg, observers);
}

TrajectoryRecord integrate_auxiliary(const FieldTrace& u_trace, const State& v0, double L,
                                     double T, const IntegratorConfig& icfg,
                                     const ProblemConfig& cfg, const NonlinearityModel& f,
                                     const std::vector<NamedObserver>& observers) {
    if (!u_trace.covers(v0.t, v0.t + T))
        throw std::invalid_argument("integrate_auxiliary: forcing trace does not cover the run");
    HyperbolicOps ops{&cfg, &f, L, &u_trace, {}};
    return run_hyperbolic(ops, v0, T, icfg, observers);
}

TrajectoryRecord integrate_parabolic(const SpectralField& u0, double T, const ProblemConfig& cfg,
                                     const NonlinearityModel& f, double L0,
                                     const FieldTrace* forcing, double dt,
                                     const std::vector<NamedObserver>& observers,
                                     int record_every, bool keep_traces) {
    if (!(dt > 0.0)) throw std::domain_error("integrate_parabolic: dt must be positive");
    if (forcing != nullptr && !forcing->covers(0.0, T))
        throw std::invalid_argument("integrate_parabolic: forcing trace does not cover the run");
    IntegratorConfig icfg;
    icfg.record_every = record_every;
    icfg.keep_traces = keep_traces;
    RecordBuilder rb(cfg, icfg, observers);
    std::vector<double> fbuf;

    auto velocity = [&](const SpectralField& u, double t) {
        SpectralField fn = f.is_zero() ? SpectralField(cfg.domain, cfg.n)
                                       : nonlinear_term(u, f, cfg.n);
        SpectralField v(cfg.domain, cfg.n);
        for (std::size_t k = 0; k < v.size(); ++k) {
            double lam = u.eigenvalue_flat(k);
            double val = cfg.g.coeffs()[k] - lam * (lam * u.coeffs()[k] + fn.coeffs()[k]) -
                         L0 * u.coeffs()[k] / lam;
            if (forcing != nullptr && L0 != 0.0) {
                forcing->sample_into(t, fbuf);
                val += L0 * fbuf[k] / lam;
            }
            v.coeffs()[k] = val;
        }
        return v;
    };

    SpectralField u = with_cutoff(u0, cfg.n);
    double t = 0.0;
    rb.start(State(u, velocity(u, 0.0), 0.0));
    SpectralField quotient(cfg.domain, cfg.n);
    while (t < T - 1e-12 * std::max(1.0, T)) {
        double step = std::min(dt, T - t);
        SpectralField fn = f.is_zero() ? SpectralField(cfg.domain, cfg.n)
                                       : nonlinear_term(u, f, cfg.n);
        if (forcing != nullptr && L0 != 0.0) forcing->sample_into(t, fbuf);
        const SpectralField u_old = u;
        // the stiff diagonal part is propagated exactly (exponential Euler);
        // f and the forcing are frozen at the step start
        for (std::size_t k = 0; k < u.size(); ++k) {
            double lam = u.eigenvalue_flat(k);
            double r = cfg.g.coeffs()[k] - lam * fn.coeffs()[k];
            if (forcing != nullptr && L0 != 0.0) r += L0 * fbuf[k] / lam;
            double sigma = lam * lam + L0 / lam;
            double decay = std::exp(-sigma * step);
            double weight = -std::expm1(-sigma * step) / sigma; // (1 - e^{-s dt})/s
            u.coeffs()[k] = decay * u.coeffs()[k] + weight * r;
        }
        t += step;
        if (rb.next_step_needs_state()) {
            rb.accepted(State(u, velocity(u, t), t));
        } else {
            // cheap difference quotient keeps the dissipation accumulator going
            for (std::size_t k = 0; k < u.size(); ++k)
                quotient.coeffs()[k] = (u.coeffs()[k] - u_old.coeffs()[k]) / step;
            rb.accepted(State(u, quotient, t));
        }
    }
    return rb.finish(State(u, velocity(u, t), t));
}

SpectralField acceleration(const State& s, const ProblemConfig& cfg, const NonlinearityModel& f) {
    auto [du, dv] = rhs(s, cfg, f);
    (void)du;
    return dv;
}

} // namespace ich
