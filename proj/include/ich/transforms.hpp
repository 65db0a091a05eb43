#pragma once

#include <memory>
#include <vector>

#include "ich/domain.hpp"

namespace ich {

// Shared sin/cos tables on the closed uniform grid x_i = i*pi/P, i = 0..P.
// The interior nodes (i = 1..P-1) carry the discrete sine orthogonality
//   sum_i sin(a x_i) sin(b x_i) = (P/2) delta_ab,   1 <= a,b <= P-1,
// and the trapezoid rule on the closed grid integrates cos(m x) exactly
// for 0 <= m <= 2P-1. Those two facts make every quadrature in this
// project exact for trigonometric polynomials of controlled degree.
struct TrigTables {
    int P = 0;       // subintervals
    int maxdeg = 0;  // frequencies covered: 0..maxdeg
    std::vector<double> sin_tab; // row m: sin(m x_i), i = 0..P
    std::vector<double> cos_tab;

    double h() const { return kPi / P; }
    const double* sin_row(int m) const { return sin_tab.data() + static_cast<std::size_t>(m) * (P + 1); }
    const double* cos_row(int m) const { return cos_tab.data() + static_cast<std::size_t>(m) * (P + 1); }
};

// Per-thread cache; tables are immutable once built.
std::shared_ptr<const TrigTables> trig_tables(int P, int maxdeg);

// Raw (unnormalized) sine coefficients of interior samples h_1..h_{P-1}:
// h(x) = sum_m beta_m sin(m x)  =>  beta_m = (2/P) sum_i h_i sin(m x_i),
// exact when h is a sine polynomial of degree <= maxdeg and maxdeg <= P-1.
std::vector<double> sine_analyze(const TrigTables& t, const std::vector<double>& interior, int maxdeg);

// Raw cosine coefficients of closed-grid samples h_0..h_P:
// h(x) = sum_m alpha_m cos(m x); trapezoid-weighted, exact for cosine
// polynomials of degree <= maxdeg when maxdeg <= P-1.
std::vector<double> cos_analyze(const TrigTables& t, const std::vector<double>& closed, int maxdeg);

// integral over (0,pi) of cos(m x): pi for m=0, else 0  -- folded into the
// trapezoid below; of sin(m x): 2/m for odd m, 0 for even m.
inline double sin_halfperiod_integral(int m) { return (m % 2 != 0) ? 2.0 / m : 0.0; }

// integral over (0,pi) of cos(m x) sin(k x): 2k/(k^2-m^2) when k+m is odd,
// 0 otherwise (including k = m).
inline double cos_sin_halfperiod_integral(int m, int k) {
    if (((m + k) & 1) == 0) return 0.0;
    return 2.0 * k / (static_cast<double>(k) * k - static_cast<double>(m) * m);
}

// Closed-grid trapezoid; exact for cosine polynomials of degree <= 2P-1.
double trapezoid_closed(const TrigTables& t, const std::vector<double>& closed);

} // namespace ich
