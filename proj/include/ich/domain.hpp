#pragma once

#include <stdexcept>

namespace ich {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// The box (0,pi)^d with u = Lap u = 0 on the boundary. The sine eigenbasis
// diagonalizes both A = -Lap and A^2 exactly, so the operator carries no
// discretization error; eigenvalues are k^2 (1D) and j^2+k^2 (2D).
struct DomainSpec {
    int dimension = 1;

    DomainSpec() = default;
    explicit DomainSpec(int dim) : dimension(dim) {
        if (dim != 1 && dim != 2) throw std::domain_error("DomainSpec: dimension must be 1 or 2");
    }

    double lambda1() const { return dimension == 1 ? 1.0 : 2.0; }

    bool operator==(const DomainSpec&) const = default;
};

// Eigenbasis index: i (1D) or (i,j) (2D), components >= 1. j stays 0 in 1D.
struct ModeIndex {
    int i = 1;
    int j = 0;

    static ModeIndex d1(int i) { return ModeIndex{i, 0}; }
    static ModeIndex d2(int i, int j) { return ModeIndex{i, j}; }
};

inline double eigenvalue(const DomainSpec& dom, const ModeIndex& idx) {
    if (dom.dimension == 1) {
        if (idx.i < 1 || idx.j != 0) throw std::domain_error("eigenvalue: invalid 1D mode index");
        return static_cast<double>(idx.i) * idx.i;
    }
    if (idx.i < 1 || idx.j < 1) throw std::domain_error("eigenvalue: invalid 2D mode index");
    return static_cast<double>(idx.i) * idx.i + static_cast<double>(idx.j) * idx.j;
}

} // namespace ich
