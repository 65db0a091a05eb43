#pragma once

#include <cmath>
#include <vector>

#include "ich/poly.hpp"

namespace ich {
namespace oracles {

// Closed form of eps a'' + a' + sigma a = 0, a(0)=a0, a'(0)=b0.
double damped_mode(double eps, double sigma, double a0, double b0, double t);

// Closed form of a' + sigma a = 0, a(0)=a0.
inline double parabolic_mode(double sigma, double a0, double t) {
    return a0 * std::exp(-sigma * t);
}

// Shooting solution of the stationary 1D problem
//   -u'' + f(u) = 0 on (0,pi), u(0) = u(pi) = 0,
// i.e. u'' = f(u), found by bisection on the initial slope within
// [slope_lo, slope_hi] (the endpoint values u(pi; s) must bracket 0).
// Returns values on the uniform closed grid with `samples` points.
struct ShootingSolution {
    double slope = 0.0;           // u'(0)
    std::vector<double> x;        // closed grid on [0, pi]
    std::vector<double> values;   // u(x)
    double end_value = 0.0;       // u(pi), residual of the bisection
};
ShootingSolution shoot_dirichlet(const Poly& f, double slope_lo, double slope_hi,
                                 int samples = 2001, int rk_steps = 200000);

} // namespace oracles
} // namespace ich
