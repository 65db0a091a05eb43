#include "ich/functionals.hpp"

#include <cmath>

#include "ich/quadrature.hpp"

namespace ich {

SpectralField nonlinear_term(const SpectralField& u, const NonlinearityModel& f, int n) {
    return project_composition(u, f.f, n);
}

double energy(const State& s, const ProblemConfig& cfg, const NonlinearityModel& f) {
    double a = sobolev_norm(s.u, 1.0);
    double b = sobolev_norm(s.v, -1.0);
    double quad = 0.5 * (a * a + cfg.epsilon * b * b);
    double pot = f.potential.is_zero() ? 0.0 : integral_of_composition(s.u, f.potential);
    double force = inner_power(cfg.g, s.u, -1.0);
    return quad + pot - force;
}

double x0_norm_sq(const State& s, const ProblemConfig& cfg, const NonlinearityModel& f) {
    double a = sobolev_norm(s.u, 1.0);
    double b = sobolev_norm(s.v, -1.0);
    double q = static_cast<double>(f.p + 4);
    return a * a + cfg.epsilon * b * b + std::pow(lp_norm(s.u, q), q);
}

double x0_norm(const State& s, const ProblemConfig& cfg, const NonlinearityModel& f) {
    return std::sqrt(x0_norm_sq(s, cfg, f));
}

double y_functional(const State& s, const ProblemConfig& cfg, const NonlinearityModel& f,
                    double alpha, double cstar) {
    double e = energy(s, cfg, f);
    double cross = cfg.epsilon * inner_power(s.v, s.u, -1.0);
    double vprime = sobolev_norm(s.u, -1.0);
    double gnorm = sobolev_norm(cfg.g, 0.0);
    return e + alpha * (cross + 0.5 * vprime * vprime) + cstar * (1.0 + gnorm * gnorm);
}

double f_u_pairing(const SpectralField& u, const NonlinearityModel& f) {
    if (f.is_zero()) return 0.0;
    // <f(u), u> = int of r f(r) composed with u
    std::vector<double> c(f.f.coeffs().size() + 1, 0.0);
    for (std::size_t k = 0; k < f.f.coeffs().size(); ++k) c[k + 1] = f.f.coeffs()[k];
    return integral_of_composition(u, Poly(std::move(c)));
}

} // namespace ich
