#pragma once

#include <cstddef>
#include <vector>

namespace ich {

// Dense row-major matrix, just enough for the Newton solves at desk scale.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

// Solves A x = b in place via LU with partial pivoting. Throws
// NumericalError on a (numerically) singular pivot.
std::vector<double> lu_solve(DenseMatrix a, std::vector<double> b);

} // namespace ich
