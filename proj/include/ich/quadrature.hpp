#pragma once

#include <vector>

#include "ich/field.hpp"
#include "ich/poly.hpp"
#include "ich/transforms.hpp"

namespace ich {

// Exact integrals and projections of phi(u) for polynomial phi and spectral
// u, via the parity split phi = phi_e + phi_o: phi_e(u) is a pure cosine
// trig polynomial (closed-grid trapezoid integrates it exactly), phi_o(u) a
// pure sine one (discrete sine analysis recovers it exactly). All results
// are exact up to rounding; no asymptotic quadrature error enters.

// integral over (0,pi)^d of phi(u)
double integral_of_composition(const SpectralField& u, const Poly& phi);

// P_m phi(u), coefficients against the orthonormal eigenbasis
SpectralField project_composition(const SpectralField& u, const Poly& phi, int m);

// integral over (0,pi)^d of phi(u) |grad u|^2
double gradient_weighted_integral(const SpectralField& u, const Poly& phi);

// |u|_{L^q}: exact trig rule when q is an even integer, composite Simpson
// on an oversampled grid otherwise (plain powers of |.| are not trig
// polynomials for fractional q).
double lp_norm(const SpectralField& u, double q);

// sup |u| estimated on an oversampled grid
double linf_norm(const SpectralField& u, int oversample = 8);

// Projection onto modes <= m from the parity components of an integrand
// sampled on the tables' grid: `odd` holds the sine-type part at interior
// nodes, `even` the cosine-type part at closed nodes (either may be null).
// D bounds the trig degree of both parts.
SpectralField project_parity_samples(const DomainSpec& dom, const TrigTables& tab,
                                     const std::vector<double>* odd,
                                     const std::vector<double>* even, int D, int m);

namespace detail {
// closed-grid sample helpers shared with the Newton Jacobian assembly
std::vector<double> synth_closed_1d(const SpectralField& u, const TrigTables& tab);
std::vector<double> synth_closed_2d(const SpectralField& u, const TrigTables& tab);
std::vector<double> extract_interior_1d(const std::vector<double>& closed, int P);
std::vector<double> extract_interior_2d(const std::vector<double>& closed, int P);
// 2D raw sine coefficients (interior samples, row-major (P-1)x(P-1))
std::vector<double> sine_analyze_2d(const TrigTables& tab, const std::vector<double>& interior, int maxdeg);
// 2D raw cosine coefficients (closed samples, row-major (P+1)x(P+1))
std::vector<double> cos_analyze_2d(const TrigTables& tab, const std::vector<double>& closed, int maxdeg);
} // namespace detail

} // namespace ich
