#pragma once

#include "ich/nonlinearity.hpp"
#include "ich/problem.hpp"

namespace ich {

// P_n f(u), exact orthogonal projection of the composed nonlinearity.
SpectralField nonlinear_term(const SpectralField& u, const NonlinearityModel& f, int n);

// E_eps(U) = 1/2 (|A^{1/2}u|^2 + eps |A^{-1/2}u_t|^2) + int F(u) - <g, A^{-1}u>
double energy(const State& s, const ProblemConfig& cfg, const NonlinearityModel& f);

// |U|^2_{X0} = |A^{1/2}u|^2 + eps |A^{-1/2}u_t|^2 + |u|^{p+4}_{L^{p+4}},
// returned as the norm (square root of the above).
double x0_norm(const State& s, const ProblemConfig& cfg, const NonlinearityModel& f);
double x0_norm_sq(const State& s, const ProblemConfig& cfg, const NonlinearityModel& f);

// Y = E_eps + alpha (eps <u_t, A^{-1}u> + 1/2 |u|^2_{V'}) + Cstar (1 + |g|^2)
double y_functional(const State& s, const ProblemConfig& cfg, const NonlinearityModel& f,
                    double alpha, double cstar);

// <f(u), u> in L2, exact (enters the second energy identity).
double f_u_pairing(const SpectralField& u, const NonlinearityModel& f);

} // namespace ich
