#pragma once

#include <string>
#include <vector>

#include "ich/functionals.hpp"
#include "ich/problem.hpp"

namespace ich {

// Cutoff profile theta with theta = 0 left of 0, 1 right of 1. The smooth
// bump is C-infinity; the polynomial smoothstep is C^4 (degree 9), enough
// for the residual and its time derivative.
class CutoffProfile {
public:
    enum class Kind { smooth_bump, poly_smoothstep };
    explicit CutoffProfile(Kind kind = Kind::smooth_bump) : kind_(kind) {}

    Kind kind() const { return kind_; }
    double theta(double t) const;
    double theta1(double t) const;
    double theta2(double t) const;
    double theta3(double t) const;

private:
    Kind kind_;
};

struct Equilibrium {
    SpectralField u_star;
    double residual = 0.0; // |A u* + P_n f(u*) - A^{-1} g|_{L2}
    bool converged = false;
    int iterations = 0;
    std::vector<double> residual_history;
    std::string basin_tag;
};

struct EquilibriumCatalog {
    std::vector<Equilibrium> members; // deterministic order
    std::vector<std::string> notes;   // dedup collisions etc.
};

// Damped Newton on the A^{-1}-preconditioned stationary equation
//   A u + P_n f(u) = A^{-1} g
// with the Jacobian A + P_n f'(u) P_n assembled densely (exact Fourier
// moments of f'(u)).
Equilibrium solve_equilibrium(const SpectralField& guess, const ProblemConfig& cfg,
                              const NonlinearityModel& f, double tol, int max_iter = 60);

// Residual field A u + P_n f(u) - A^{-1} g.
SpectralField equilibrium_residual(const SpectralField& u, const ProblemConfig& cfg,
                                   const NonlinearityModel& f);

// Multi-start Newton from deterministic pseudo-random low-mode guesses
// plus +/- basis seeds; dedup by pairwise L2 distance <= 1e-6.
EquilibriumCatalog enumerate_equilibria(const ProblemConfig& cfg, const NonlinearityModel& f,
                                        int seed_count, std::uint64_t rng_seed,
                                        double tol = 1e-11);

// min over the set of
// [ |A^{(1-beta)/2}(u-u*)|^2 + |u-u*|^2_{L^{p+4-beta}}
//   + eps |A^{-(1+beta)/2} u_t|^2 ]^{1/2},  beta in (0,1].
double distance_to_equilibria(const State& s, const std::vector<Equilibrium>& eqs, double beta,
                              const ProblemConfig& cfg, const NonlinearityModel& f);

// Glued quasi-trajectory between two equilibria and its exact residual
//   phi(t) = (eps theta'' + theta')(u_b - u_a)
//            + A [ P_n f(u_tilde) - theta P_n f(u_b) - (1-theta) P_n f(u_a) ].
struct GluedPath {
    SpectralField u_a;
    SpectralField u_b;
    CutoffProfile profile;
    double max_phi = 0.0;   // sup_t |phi(t)|_{L2}
    double max_phi_t = 0.0; // sup_t |d phi/dt|_{L2}
    int samples = 0;

    SpectralField at(double t) const; // u_tilde(t), t in [0,1]
};
GluedPath glue_quasi_trajectory(const Equilibrium& a, const Equilibrium& b,
                                const CutoffProfile& profile, const ProblemConfig& cfg,
                                const NonlinearityModel& f, int samples = 201);

// L > c3 lambda^3 selection with the interpolation constant of the
// implemented spectral norms; the chain |W|^2 <= c2 |A^{1/2}W|^{4/3}
// |A^{-1}W|^{2/3} followed by Young gives c3 = (32/27) c2^3 and c2 = 1
// (attained on single modes). A floor of 1 keeps L positive for
// monotone f (lambda = 0).
struct SelectedL {
    double L = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double lambda = 0.0;
    bool floored = false;
};
SelectedL select_L(double lambda, double c3_override = 0.0);

// Continuation along the ray g = s * g_dir to an equilibrium at the given
// H^3 gap from the base equilibrium (for the gluing experiment).
struct ContinuationPoint {
    double s = 0.0;
    Equilibrium eq;
    double gap_h3 = 0.0;
};
ContinuationPoint continue_to_gap(const Equilibrium& base, const SpectralField& g_dir,
                                  double target_gap, const ProblemConfig& cfg,
                                  const NonlinearityModel& f, double tol = 1e-11);

} // namespace ich
