#pragma once

#include <string>
#include <vector>

#include "ich/poly.hpp"

namespace ich {

// Polynomial nonlinearity f with the certified constants of the standing
// assumptions:
//   f(0) = 0,
//   liminf_{|r|->inf} f(r)/r > -lambda1,
//   f'(r) >= -lambda + delta |r|^{p+2},
//   |f'''(r)| <= M (1 + |r|^p),
//   F(r) + kappa_shift >= -(kappa/2) r^2 with kappa < lambda1,
// and delta > 0 required whenever p > 2. F is stored with F(0) = 0; the
// additive constant kappa_shift realizes the freedom of choosing the
// primitive (it is 0 whenever the F(0)=0 normalization already works).
struct NonlinearityModel {
    Poly f;
    Poly f_prime;
    Poly f_second;
    Poly f_third;
    Poly potential; // F with F(0) = 0

    int p = 0;
    double lambda = 0.0;
    double delta = 0.0;
    double bound_m = 0.0;
    double kappa = 0.0;
    double kappa_shift = 0.0;      // additive renormalization of F
    double kappa_margin = 0.0;     // lambda1 - kappa
    std::string certification;     // which path certified the constants

    bool is_odd() const { return f.is_odd(); }
    bool is_zero() const { return f.is_zero(); }

    double eval_f(double r) const { return f(r); }
    double eval_f_prime(double r) const { return f_prime(r); }
    double eval_f_second(double r) const { return f_second(r); }
    double eval_potential(double r) const { return potential(r); }
};

// Validates the assumptions for the given coefficient list (constant term
// first) against the first eigenvalue lambda1 and certifies the constants.
// Throws AssumptionError when f is rejected.
NonlinearityModel validate_assumptions(const std::vector<double>& coeffs, double lambda1);

// Convenience wrapper taking an already-built polynomial.
NonlinearityModel validate_assumptions(const Poly& f, double lambda1);

} // namespace ich
