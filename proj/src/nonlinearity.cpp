#include "ich/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ich/errors.hpp"

namespace ich {

namespace {

// largest delta with f'(r) + lambda - delta r^{p+2} >= 0 everywhere,
// located by bisection with the exact polynomial-minimum oracle
double certify_delta(const Poly& fp, double lambda, int p) {
    const int q = p + 2;
    auto feasible = [&](double delta) {
        std::vector<double> c(std::max<std::size_t>(fp.coeffs().size(), q + 1), 0.0);
        for (std::size_t k = 0; k < fp.coeffs().size(); ++k) c[k] = fp.coeffs()[k];
        c[0] += lambda;
        c[q] -= delta;
        Poly g{std::move(c)};
        if (g.is_zero()) return true;
        if (g.degree() % 2 != 0 || g.leading() < 0.0) return false;
        return g.global_min() >= -1e-13 * (1.0 + std::abs(lambda));
    };
    if (!feasible(0.0)) return 0.0; // cannot happen once lambda is certified
    double hi = fp.degree() == q ? fp.leading() : 1.0;
    if (fp.degree() < q) {
        // f' has lower degree than the delta term: any positive delta loses at infinity
        return 0.0;
    }
    if (!feasible(hi * 1e-12)) return 0.0;
    double lo = 0.0;
    if (feasible(hi)) {
        lo = hi;
    } else {
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            if (feasible(mid))
                lo = mid;
            else
                hi = mid;
        }
    }
    return lo;
}

// smallest kappa >= 0 with 2F(r) + kappa r^2 >= 0 for |r| >= r0; the
// exclusion of a tiny neighborhood of 0 keeps the boundary case
// F ~ -r^2/2 + higher certifiable (the quartic term takes over away
// from the origin).
double certify_kappa(const Poly& big_f, double r0) {
    auto feasible = [&](double kappa) {
        std::vector<double> c(std::max<std::size_t>(big_f.coeffs().size(), 3), 0.0);
        for (std::size_t k = 0; k < big_f.coeffs().size(); ++k) c[k] = 2.0 * big_f.coeffs()[k];
        c[2] += kappa;
        Poly g{std::move(c)};
        if (g.is_zero()) return true;
        if (g.degree() % 2 != 0 || g.leading() < 0.0) return false;
        double worst = std::numeric_limits<double>::infinity();
        for (double r : g.derivative().real_roots())
            if (std::abs(r) >= r0) worst = std::min(worst, g(r));
        worst = std::min(worst, g(r0));
        worst = std::min(worst, g(-r0));
        return worst >= -1e-13 * (1.0 + kappa);
    };
    if (feasible(0.0)) return 0.0;
    double hi = 1.0;
    while (!feasible(hi) && hi < 1e12) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (feasible(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// sup over r of |f'''(r)| / max(1, |r|^p), grid plus asymptote
double certify_m(const Poly& f3, int p) {
    if (f3.is_zero()) return 0.0;
    const double r_max = std::max(f3.root_bound() * 4.0, 16.0);
    double best = 0.0;
    const int grid = 200001;
    for (int i = 0; i < grid; ++i) {
        double r = -r_max + 2.0 * r_max * i / (grid - 1);
        double denom = std::max(1.0, std::pow(std::abs(r), p));
        best = std::max(best, std::abs(f3(r)) / denom);
    }
    if (f3.degree() == p) best = std::max(best, std::abs(f3.leading()));
    return best;
}

} // namespace

NonlinearityModel validate_assumptions(const std::vector<double>& coeffs, double lambda1) {
    return validate_assumptions(Poly(coeffs), lambda1);
}

NonlinearityModel validate_assumptions(const Poly& f, double lambda1) {
    NonlinearityModel m;
    m.f = f;
    if (f.coeff(0) != 0.0) throw AssumptionError("f(0) must be 0 (nonzero constant term)");

    m.f_prime = f.derivative();
    m.f_second = m.f_prime.derivative();
    m.f_third = m.f_second.derivative();
    m.potential = f.antiderivative();

    const int d = std::max(f.degree(), 0);
    m.p = std::max(d - 3, 0);

    // f1: liminf f(r)/r > -lambda1 forces an odd leading degree with a
    // positive coefficient, except for admissible linear/zero f.
    if (!f.is_zero()) {
        if (d == 1) {
            if (f.coeff(1) <= -lambda1)
                throw AssumptionError("f1 violated: slope of linear f does not exceed -lambda1");
        } else if (d % 2 == 0 || f.leading() <= 0.0) {
            throw AssumptionError("f1 violated: f(r)/r is unbounded below at infinity");
        }
    }

    // lambda = max(0, -inf f'), exact polynomial minimization
    double fp_min;
    if (m.f_prime.is_zero()) {
        fp_min = 0.0;
    } else if (m.f_prime.degree() == 0) {
        fp_min = m.f_prime.coeff(0);
    } else {
        fp_min = m.f_prime.global_min();
        if (!std::isfinite(fp_min))
            throw AssumptionError("f2 violated: f' is unbounded below");
    }
    m.lambda = std::max(0.0, -fp_min);

    m.delta = certify_delta(m.f_prime, m.lambda, m.p);
    if (m.p > 2 && m.delta <= 0.0)
        throw AssumptionError("p > 2 requires delta > 0 in f2");

    m.bound_m = certify_m(m.f_third, m.p);

    const double r0 = 1e-3;
    m.kappa = certify_kappa(m.potential, r0);
    if (!(m.kappa < lambda1)) {
        // the F(0)=0 normalization fails; use the freedom of the additive
        // constant in the primitive instead
        m.kappa = 0.5 * lambda1;
        std::vector<double> c(std::max<std::size_t>(m.potential.coeffs().size(), 3), 0.0);
        for (std::size_t k = 0; k < m.potential.coeffs().size(); ++k) c[k] = m.potential.coeffs()[k];
        c[2] += 0.5 * m.kappa;
        double lo = Poly(std::move(c)).global_min();
        if (!std::isfinite(lo))
            throw AssumptionError("potential lower bound fails for every primitive");
        m.kappa_shift = std::max(0.0, -lo);
    }
    m.kappa_margin = lambda1 - m.kappa;

    m.certification = "roots:exact-bracketing;delta:bisection;M:grid+asymptote;kappa:bisection(r0=1e-3)";
    return m;
}

} // namespace ich
