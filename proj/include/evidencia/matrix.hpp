#pragma once

#include <cstddef>
#include <vector>

namespace evidencia {

using Vec = std::vector<double>;

/// Dense row-major matrix, sized for desk-scale problems (N <= a few hundred).
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    static Mat identity(std::size_t n);
};

Mat matmul(const Mat& a, const Mat& b);
Mat transpose(const Mat& a);
Vec matvec(const Mat& a, const Vec& v);

/// A^T * v without materializing the transpose.
Vec transpose_matvec(const Mat& a, const Vec& v);

double dot(const Vec& a, const Vec& b);
double norm_sq(const Vec& a);

/// Eigendecomposition H = V diag(values) V^T of a symmetric matrix.
/// values ascending; column j of vectors is the eigenvector for values[j].
struct Eigensystem {
    Vec values;
    Mat vectors;
};

/// Cyclic Jacobi rotations; stops when the off-diagonal Frobenius norm drops
/// below off_tol times the matrix Frobenius norm.
Eigensystem jacobi_eigensystem(const Mat& sym, double off_tol = 1e-14);

} // namespace evidencia
