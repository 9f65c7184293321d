#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "evidencia/errors.hpp"
#include "evidencia/linmodel.hpp"
#include "evidencia/rng.hpp"
#include "evidencia/simlab.hpp"

using namespace evidencia;

namespace {

Dataset random_dataset(int N, std::uint32_t stream) {
    Dataset d;
    for (int n = 0; n < N; ++n) {
        d.x.push_back(n + 1.0);
        d.y.push_back(standard_normal(11, stream, StreamRole::Aux,
                                      static_cast<std::uint32_t>(n)));
        d.sigma.push_back(1.0);
    }
    return d;
}

Mat random_table(int N, int M, std::uint32_t stream) {
    Mat t(static_cast<std::size_t>(N), static_cast<std::size_t>(M));
    for (std::size_t i = 0; i < t.data.size(); ++i)
        t.data[i] =
            standard_normal(12, stream, StreamRole::Aux, static_cast<std::uint32_t>(i));
    return t;
}

} // namespace

TEST_CASE("standardize divides by the uncertainties") {
    Dataset d{{0.0, 1.0}, {2.0, 4.0}, {2.0, 2.0}};
    const StandardizedData s = standardize(d);
    CHECK(s.z[0] == 1.0);
    CHECK(s.z[1] == 2.0);
    CHECK(s.z_sq == 5.0);
}

TEST_CASE("standardize of all-zero observations") {
    Dataset d{{0.0, 1.0, 2.0}, {0.0, 0.0, 0.0}, {0.5, 1.0, 2.0}};
    CHECK(standardize(d).z_sq == 0.0);
}

TEST_CASE("standardize rejects nonpositive uncertainties") {
    Dataset d{{0.0}, {1.0}, {0.0}};
    CHECK_THROWS_AS(standardize(d), InvalidUncertaintyError);
    d.sigma[0] = -1.0;
    CHECK_THROWS_AS(standardize(d), InvalidUncertaintyError);
}

TEST_CASE("cosine design column one is constant") {
    const int N = 32;
    Dataset d;
    d.x = sample_points(N);
    d.y.assign(N, 0.0);
    d.sigma.assign(N, 1.0);
    const DesignMatrix X = build_design_matrix(d, BasisSpec::cosine(), 1);
    for (int n = 0; n < N; ++n)
        CHECK(X.X(static_cast<std::size_t>(n), 0) ==
              doctest::Approx(1.0 / std::sqrt(32.0)).epsilon(1e-15));
}

TEST_CASE("table basis design and failure modes") {
    Dataset d{{0.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
    Mat ones(2, 1);
    ones(0, 0) = 1.0;
    ones(1, 0) = 1.0;
    const DesignMatrix X = build_design_matrix(d, BasisSpec::from_table(ones), 1);
    CHECK(X.X(0, 0) == 1.0);
    CHECK(X.X(1, 0) == 1.0);

    CHECK_THROWS_AS(build_design_matrix(d, BasisSpec::cosine(), 3),
                    OverparameterizedError);
    CHECK_THROWS_AS(build_design_matrix(d, BasisSpec::from_table(ones), 2),
                    BasisExhaustedError);
}

TEST_CASE("exact fit of a constant model") {
    Dataset d{{0.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
    Mat ones(2, 1);
    ones(0, 0) = 1.0;
    ones(1, 0) = 1.0;
    const StandardizedData s = standardize(d);
    const FitDecomposition f =
        fit(s, build_design_matrix(d, BasisSpec::from_table(ones), 1));
    CHECK(f.alpha_hat[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.F_sq == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.chi_sq == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("full-dimensional model absorbs all the data") {
    const int N = 8;
    Dataset d = random_dataset(N, 0);
    d.x = sample_points(N);
    const StandardizedData s = standardize(d);
    const FitDecomposition f =
        fit(s, build_design_matrix(d, BasisSpec::cosine(), N));
    CHECK(f.chi_sq == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(f.F_sq == doctest::Approx(s.z_sq).epsilon(1e-12));
}

TEST_CASE("orthonormal basis mode shortcut agrees with the general path") {
    const int N = 16;
    Dataset d = random_dataset(N, 1);
    d.x = sample_points(N);
    const StandardizedData s = standardize(d);
    for (int K : {1, 3, 7, 16}) {
        const DesignMatrix X = build_design_matrix(d, BasisSpec::cosine(), K);
        const FitDecomposition f = fit(s, X);
        const Vec direct = transpose_matvec(X.X, s.z);
        double dsq = 0.0;
        for (double v : direct) dsq += v * v;
        CHECK(f.F_sq == doctest::Approx(dsq).epsilon(1e-10));
        // beta_hat may differ from X^T z by the eigenvector rotation; its
        // norm and the projection itself must agree.
        Vec reproj = matvec(X.X, f.alpha_hat);
        Vec shortcut = matvec(X.X, direct);
        for (int n = 0; n < N; ++n)
            CHECK(reproj[static_cast<std::size_t>(n)] ==
                  doctest::Approx(shortcut[static_cast<std::size_t>(n)])
                      .epsilon(1e-10)
                      .scale(1.0));
    }
}

TEST_CASE("fit decomposition invariants on a random dataset") {
    const int N = 12;
    Dataset d = random_dataset(N, 2);
    d.x = sample_points(N);
    const StandardizedData s = standardize(d);
    const FitDecomposition f = fit(s, build_design_matrix(d, BasisSpec::cosine(), 5));

    // F_sq = alpha^T H alpha
    double quad = 0.0;
    const Vec h_alpha = matvec(f.hessian, f.alpha_hat);
    for (std::size_t i = 0; i < h_alpha.size(); ++i)
        quad += f.alpha_hat[i] * h_alpha[i];
    CHECK(f.F_sq == doctest::Approx(quad).epsilon(1e-10));

    // Pythagoras with the residual norm computed independently
    CHECK(f.F_sq + norm_sq(f.resid_hat) ==
          doctest::Approx(s.z_sq).epsilon(1e-10));

    // fitted curve orthogonal to the residual
    CHECK(std::abs(dot(f.f_hat, f.resid_hat)) < 1e-8 * s.z_sq);
}

TEST_CASE("noise basis spans the orthogonal complement") {
    const int N = 4;
    Dataset d = random_dataset(N, 3);
    d.x = sample_points(N);
    const StandardizedData s = standardize(d);
    const DesignMatrix X = build_design_matrix(d, BasisSpec::cosine(), 2);
    const FitDecomposition f = fit(s, X);
    const NoiseBasis nb = noise_basis(X, s, N);

    CHECK(nb.X_L.cols == 2);
    for (std::size_t k = 0; k < X.X.cols; ++k)
        for (std::size_t l = 0; l < nb.X_L.cols; ++l) {
            double ip = 0.0;
            for (std::size_t n = 0; n < X.X.rows; ++n) ip += X.X(n, k) * nb.X_L(n, l);
            CHECK(std::abs(ip) < 1e-10);
        }
    CHECK(norm_sq(nb.beta_hat_L) == doctest::Approx(f.chi_sq).epsilon(1e-8));
}

TEST_CASE("noise basis of the full model is empty") {
    const int N = 6;
    Dataset d = random_dataset(N, 4);
    d.x = sample_points(N);
    const StandardizedData s = standardize(d);
    const DesignMatrix X = build_design_matrix(d, BasisSpec::cosine(), N);
    const NoiseBasis nb = noise_basis(X, s, N);
    CHECK(nb.X_L.cols == 0);
    CHECK(norm_sq(nb.beta_hat_L) == 0.0);
}

TEST_CASE("profile is monotone and nested") {
    const int N = 10;
    Dataset d = random_dataset(N, 5);
    d.x = sample_points(N);
    std::fill(d.sigma.begin(), d.sigma.end(), 1.0);
    const StandardizedData s = standardize(d);
    const auto fits = fit_profile(d, BasisSpec::cosine());
    REQUIRE(fits.size() == static_cast<std::size_t>(N));
    for (int K = 1; K < N; ++K) {
        CHECK(fits[static_cast<std::size_t>(K)].F_sq >=
              fits[static_cast<std::size_t>(K) - 1].F_sq - 1e-12);
        CHECK(fits[static_cast<std::size_t>(K)].chi_sq <=
              fits[static_cast<std::size_t>(K) - 1].chi_sq + 1e-12);
    }
    CHECK(fits.back().chi_sq == doctest::Approx(0.0).epsilon(1e-10));

    // nested increments equal the newly added squared mode amplitude; the
    // unit-sigma cosine columns are orthonormal, so the amplitude is a plain
    // inner product regardless of how the eigen-rotation orders beta_hat
    for (int K = 2; K <= N; ++K) {
        const DesignMatrix XK = build_design_matrix(d, BasisSpec::cosine(), K);
        double amp = 0.0;
        for (int n = 0; n < N; ++n)
            amp += XK.X(static_cast<std::size_t>(n), static_cast<std::size_t>(K) - 1) *
                   s.z[static_cast<std::size_t>(n)];
        const double increment = fits[static_cast<std::size_t>(K) - 1].F_sq -
                                 fits[static_cast<std::size_t>(K) - 2].F_sq;
        CHECK(increment == doctest::Approx(amp * amp).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("projection norm is basis-independent") {
    const int N = 9;
    Dataset d = random_dataset(N, 6);
    d.x = sample_points(N);
    const StandardizedData s = standardize(d);
    const int K = 3;
    const DesignMatrix X1 = build_design_matrix(d, BasisSpec::cosine(), K);

    // mix the columns by a well-conditioned invertible matrix
    Mat mix(3, 3);
    const double m[9] = {1.0, 0.4, -0.2, 0.0, 1.2, 0.5, 0.3, -0.1, 0.9};
    for (std::size_t i = 0; i < 9; ++i) mix.data[i] = m[i];
    Mat mixed = matmul(X1.X, mix);
    const FitDecomposition f1 = fit(s, X1);
    const FitDecomposition f2 = fit(s, DesignMatrix{mixed});
    CHECK(f1.F_sq == doctest::Approx(f2.F_sq).epsilon(1e-8));
}

TEST_CASE("eigensystem invariants of the fit hessian") {
    const int N = 7;
    Dataset d = random_dataset(N, 7);
    const auto table = random_table(N, 4, 8);
    const StandardizedData s = standardize(d);
    const FitDecomposition f =
        fit(s, build_design_matrix(d, BasisSpec::from_table(table), 4));

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            double r = 0.0;
            for (std::size_t k = 0; k < 4; ++k)
                r += f.eigvecs(i, k) * f.eigvals[k] * f.eigvecs(j, k);
            num += (r - f.hessian(i, j)) * (r - f.hessian(i, j));
            den += f.hessian(i, j) * f.hessian(i, j);
        }
    CHECK(std::sqrt(num / den) < 1e-10);

    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            double ip = 0.0;
            for (std::size_t k = 0; k < 4; ++k)
                ip += f.eigvecs(k, i) * f.eigvecs(k, j);
            CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("duplicate design columns are rejected") {
    const int N = 5;
    Dataset d = random_dataset(N, 9);
    Mat table(static_cast<std::size_t>(N), 2);
    for (int n = 0; n < N; ++n) {
        table(static_cast<std::size_t>(n), 0) = n + 1.0;
        table(static_cast<std::size_t>(n), 1) = 2.0 * (n + 1.0);
    }
    const StandardizedData s = standardize(d);
    CHECK_THROWS_AS(fit(s, build_design_matrix(d, BasisSpec::from_table(table), 2)),
                    SingularDesignError);
}

TEST_CASE("geometry property suite over random table bases") {
    int checked = 0;
    for (std::uint32_t trial = 0; trial < 1000; ++trial) {
        const int N = 3 + static_cast<int>(trial % 10);
        const int M = 1 + static_cast<int>((trial / 7) % static_cast<std::uint32_t>(N));
        Dataset d = random_dataset(N, 100 + trial);
        const Mat table = random_table(N, M, 200 + trial);
        const StandardizedData s = standardize(d);
        const DesignMatrix X = build_design_matrix(d, BasisSpec::from_table(table), M);
        const FitDecomposition f = fit(s, X);

        const double scale = std::max(s.z_sq, 1.0);
        CHECK(std::abs(f.F_sq + norm_sq(f.resid_hat) - s.z_sq) < 1e-8 * scale);

        const NoiseBasis nb = noise_basis(X, s, N);
        CHECK(std::abs(norm_sq(nb.beta_hat_L) - f.chi_sq) < 1e-8 * scale);
        ++checked;
    }
    CHECK(checked == 1000);
}
