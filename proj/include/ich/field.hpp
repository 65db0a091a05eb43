#pragma once

#include <vector>

#include "ich/domain.hpp"

namespace ich {

struct GridValues {
    DomainSpec domain;
    int n = 0;         // mode cutoff of the originating field
    int points = 0;    // interior points per axis
    std::vector<double> values; // row-major in 2D: (ix, iy)

    double h() const { return kPi / (points + 1); }
    double node(int i) const { return (i + 1) * h(); } // interior node, i = 0..points-1
};

// Coefficients against the L2-orthonormal sine eigenfunctions
// sqrt(2/pi) sin(kx) (1D) and (2/pi) sin(ix) sin(jy) (2D), cut off at n
// modes per axis. Storage row-major: (i-1)*n + (j-1) in 2D.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(DomainSpec dom, int n);

    static SpectralField basis(DomainSpec dom, int n, ModeIndex idx, double amplitude = 1.0);

    const DomainSpec& domain() const { return dom_; }
    int n() const { return n_; }
    std::size_t size() const { return c_.size(); }
    const std::vector<double>& coeffs() const { return c_; }
    std::vector<double>& coeffs() { return c_; }

    double coeff(ModeIndex idx) const { return c_[flat(idx)]; }
    void set_coeff(ModeIndex idx, double v) { c_[flat(idx)] = v; }

    double eigenvalue_flat(std::size_t flat_index) const;
    std::size_t flat(ModeIndex idx) const;

    bool same_layout(const SpectralField& o) const { return dom_ == o.dom_ && n_ == o.n_; }

    // in-place arithmetic
    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

private:
    DomainSpec dom_;
    int n_ = 0;
    std::vector<double> c_;
};

// a_k -> lambda_k^s a_k. For s<0 fine here: all eigenvalues are >= 1.
SpectralField apply_power(const SpectralField& f, double s);

// (sum lambda_k^s a_k^2)^(1/2) = |A^(s/2) f|_L2, i.e. the H^s norm.
// s=1 is the V norm, s=-1 the V' norm, s=0 plain L2.
double sobolev_norm(const SpectralField& f, double s);

// Zeroes every coefficient with an index component beyond m. Idempotent.
SpectralField project(const SpectralField& f, int m);

// Same-layout l2 pairing sum a_k b_k and the A^s-weighted variant.
double inner(const SpectralField& a, const SpectralField& b);
double inner_power(const SpectralField& a, const SpectralField& b, double s);

// Change cutoff, keeping shared modes (pad with zeros or truncate).
SpectralField with_cutoff(const SpectralField& f, int new_n);

// Sine synthesis on the uniform interior grid with oversample*n points per
// axis; from_grid inverts it exactly for fields of matching cutoff.
GridValues to_grid(const SpectralField& f, int oversample);
SpectralField from_grid(const GridValues& g);

} // namespace ich
