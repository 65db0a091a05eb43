#pragma once

#include <vector>

namespace ich {

// Dense univariate polynomial, coefficients constant-term first.
// Trailing zero coefficients are trimmed on construction.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<double> coeffs);

    static Poly zero() { return Poly(); }

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero poly
    bool is_zero() const { return c_.empty(); }
    double coeff(int k) const { return (k >= 0 && k < (int)c_.size()) ? c_[k] : 0.0; }
    double leading() const { return c_.empty() ? 0.0 : c_.back(); }
    const std::vector<double>& coeffs() const { return c_; }

    double operator()(double r) const; // Horner
    Poly derivative() const;
    Poly antiderivative() const;       // constant of integration 0
    Poly even_part() const;
    Poly odd_part() const;
    bool is_odd() const;               // only odd-degree terms
    Poly operator*(double s) const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;

    // Upper bound on the magnitude of real roots (Cauchy bound).
    double root_bound() const;

    // All real roots, ascending, found by recursive monotone bracketing:
    // the roots of the derivative split the line into monotone pieces,
    // each holding at most one root located by bisection.
    std::vector<double> real_roots() const;

    // Global minimum over R. Requires the polynomial to be bounded below
    // (even degree with positive leading coefficient, or constant).
    // For other shapes returns -inf.
    double global_min() const;

private:
    std::vector<double> c_;
};

} // namespace ich
