#include "ich/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "ich/domain.hpp"

namespace ich {
namespace oracles {

double damped_mode(double eps, double sigma, double a0, double b0, double t) {
    const double disc = 1.0 - 4.0 * eps * sigma;
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double mu1 = (-1.0 + sq) / (2.0 * eps);
        const double mu2 = (-1.0 - sq) / (2.0 * eps);
        const double c1 = (b0 - mu2 * a0) / (mu1 - mu2);
        const double c2 = a0 - c1;
        return c1 * std::exp(mu1 * t) + c2 * std::exp(mu2 * t);
    }
    const double omega = std::sqrt(-disc) / (2.0 * eps);
    const double sig = 1.0 / (2.0 * eps);
    if (omega == 0.0) { // critically damped
        return std::exp(-sig * t) * (a0 + (b0 + sig * a0) * t);
    }
    return std::exp(-sig * t) * (a0 * std::cos(omega * t) +
                                 (b0 + sig * a0) / omega * std::sin(omega * t));
}

namespace {

// one RK4 step of (u, p)' = (p, f(u))
inline void rk4_step(const Poly& f, double h, double& u, double& p) {
    const double k1u = p, k1p = f(u);
    const double k2u = p + 0.5 * h * k1p, k2p = f(u + 0.5 * h * k1u);
    const double k3u = p + 0.5 * h * k2p, k3p = f(u + 0.5 * h * k2u);
    const double k4u = p + h * k3p, k4p = f(u + h * k3u);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
}

double end_value(const Poly& f, double slope, int rk_steps) {
    double u = 0.0, p = slope;
    const double h = kPi / rk_steps;
    for (int i = 0; i < rk_steps; ++i) rk4_step(f, h, u, p);
    return u;
}

} // namespace

ShootingSolution shoot_dirichlet(const Poly& f, double slope_lo, double slope_hi, int samples,
                                 int rk_steps) {
    if (samples < 2 || rk_steps % (samples - 1) != 0)
        throw std::invalid_argument("shoot_dirichlet: rk_steps must be a multiple of samples-1");
    double flo = end_value(f, slope_lo, rk_steps);
    double fhi = end_value(f, slope_hi, rk_steps);
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::invalid_argument("shoot_dirichlet: slopes do not bracket a solution");
    double lo = slope_lo, hi = slope_hi;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double fm = end_value(f, mid, rk_steps);
        if (fm == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    ShootingSolution sol;
    sol.slope = 0.5 * (lo + hi);

    // dense output: RK nodes contain the sample grid exactly
    sol.x.resize(samples);
    sol.values.resize(samples);
    const int stride = rk_steps / (samples - 1);
    double u = 0.0, p = sol.slope;
    const double h = kPi / rk_steps;
    for (int i = 0; i <= rk_steps; ++i) {
        if (i % stride == 0) {
            int j = i / stride;
            sol.x[j] = kPi * j / (samples - 1);
            sol.values[j] = u;
        }
        if (i < rk_steps) rk4_step(f, h, u, p);
    }
    sol.end_value = sol.values.back();
    return sol;
}

} // namespace oracles
} // namespace ich
