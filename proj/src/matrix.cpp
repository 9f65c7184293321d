#include "evidencia/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evidencia/errors.hpp"

namespace evidencia {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols != b.rows) throw DomainError("matmul: inner dimensions differ");
    Mat c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Mat transpose(const Mat& a) {
    Mat t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

Vec matvec(const Mat& a, const Vec& v) {
    if (a.cols != v.size()) throw DomainError("matvec: dimension mismatch");
    Vec r(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

Vec transpose_matvec(const Mat& a, const Vec& v) {
    if (a.rows != v.size()) throw DomainError("transpose_matvec: dimension mismatch");
    Vec r(a.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double vi = v[i];
        for (std::size_t j = 0; j < a.cols; ++j) r[j] += a(i, j) * vi;
    }
    return r;
}

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm_sq(const Vec& a) { return dot(a, a); }

namespace {

double off_diagonal_norm_sq(const Mat& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (i != j) s += m(i, j) * m(i, j);
    return s;
}

double frobenius_norm_sq(const Mat& m) {
    double s = 0.0;
    for (double v : m.data) s += v * v;
    return s;
}

} // namespace

Eigensystem jacobi_eigensystem(const Mat& sym, double off_tol) {
    if (sym.rows != sym.cols) throw DomainError("jacobi: matrix not square");
    const std::size_t n = sym.rows;
    Mat a = sym;
    Mat v = Mat::identity(n);

    const double frob = std::sqrt(frobenius_norm_sq(a));
    const double threshold_sq = (frob > 0.0) ? (off_tol * frob) * (off_tol * frob) : 0.0;

    const int max_sweeps = 100;
    int sweep = 0;
    while (off_diagonal_norm_sq(a) > threshold_sq) {
        if (++sweep > max_sweeps)
            throw NumericalError("jacobi: no convergence after 100 sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                const double theta = 0.5 * std::atan2(2.0 * apq, aqq - app);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    Eigensystem es;
    es.values.resize(n);
    es.vectors = Mat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        es.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) es.vectors(i, j) = v(i, order[j]);
    }
    return es;
}

} // namespace evidencia
