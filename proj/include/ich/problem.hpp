#pragma once

#include <cmath>
#include <stdexcept>

#include "ich/domain.hpp"
#include "ich/field.hpp"

namespace ich {

// Static data of one Galerkin problem instance:
//   eps u_tt + u_t + A(Au + P_n f(u)) = P_n g   on (0,pi)^d, cutoff n.
// L and L0 are the extra weak-damping couplings of the auxiliary and the
// parabolic comparison equations.
struct ProblemConfig {
    DomainSpec domain;
    int n = 32;
    double epsilon = 1.0;
    SpectralField g;   // cutoff n (projected on construction)
    double L = 0.0;    // auxiliary equation damping
    double L0 = 0.0;   // parabolic comparison damping

    ProblemConfig() = default;
    ProblemConfig(DomainSpec dom, int n_, double eps, SpectralField g_)
        : domain(dom), n(n_), epsilon(eps), g(std::move(g_)) {
        if (!(epsilon > 0.0) || epsilon > 1.0)
            throw std::domain_error("ProblemConfig: epsilon must lie in (0,1]");
        if (n < 1) throw std::domain_error("ProblemConfig: n must be >= 1");
        if (g.n() != n || !(g.domain() == dom)) g = with_cutoff(g, n);
    }

    static ProblemConfig zero_forcing(DomainSpec dom, int n, double eps) {
        return ProblemConfig(dom, n, eps, SpectralField(dom, n));
    }
};

// The pair U = (u, u_t) at a time stamp.
struct State {
    SpectralField u;
    SpectralField v; // u_t
    double t = 0.0;

    State() = default;
    State(SpectralField u_, SpectralField v_, double t_ = 0.0)
        : u(std::move(u_)), v(std::move(v_)), t(t_) {
        if (!u.same_layout(v)) throw std::domain_error("State: u and u_t must share layout");
    }

    static State rest(const DomainSpec& dom, int n, double t = 0.0) {
        return State(SpectralField(dom, n), SpectralField(dom, n), t);
    }
};

// |(u,v)|_{V^s_eps} = (|A^{(s+1)/2} u|^2 + eps |A^{(s-1)/2} v|^2)^{1/2}
inline double vs_norm(const State& s, double order, double eps) {
    double a = sobolev_norm(s.u, order + 1.0);
    double b = sobolev_norm(s.v, order - 1.0);
    return std::sqrt(a * a + eps * b * b);
}

} // namespace ich
