#pragma once

#include <vector>

#include "evidencia/matrix.hpp"

namespace evidencia {

/// Raw observations: sampling locations x, values y, positive uncertainties sigma.
struct Dataset {
    Vec x;
    Vec y;
    Vec sigma;

    int size() const { return static_cast<int>(x.size()); }

    /// Throws on length mismatch, empty data, or any sigma <= 0.
    void validate() const;
};

/// Uncertainty-standardized data z_n = y_n / sigma_n and its squared norm.
struct StandardizedData {
    Vec z;
    double z_sq = 0.0;

    int size() const { return static_cast<int>(z.size()); }
};

/// Basis-function family. Cosine is the closed-form family
///   f_1 = sqrt(1/N), f_k(x) = sqrt(2/N) cos((k-1) x) for k >= 2,
/// with N taken from the dataset; Table supplies explicit values f_k(x_n).
struct BasisSpec {
    enum class Kind { Cosine, Table };

    Kind kind = Kind::Cosine;
    Mat table; // N x M values, Table kind only

    static BasisSpec cosine() { return BasisSpec{Kind::Cosine, Mat{}}; }
    static BasisSpec from_table(Mat values) {
        return BasisSpec{Kind::Table, std::move(values)};
    }

    /// Number of basis functions available for a dataset of size N.
    int max_functions(int N) const;
};

/// Design matrix X[n][k] = f_k(x_n) / sigma_n.
struct DesignMatrix {
    Mat X;

    int rows() const { return static_cast<int>(X.rows); }
    int cols() const { return static_cast<int>(X.cols); }
};

/// Maximum-likelihood decomposition for one model dimension K.
struct FitDecomposition {
    int K = 0;
    Vec alpha_hat;   // H^{-1} X^T z
    Mat hessian;     // H = X^T X
    Mat eigvecs;     // S, columns orthonormal
    Vec eigvals;     // diagonal of L, ascending, all positive
    Vec beta_hat;    // L^{1/2} S^T alpha_hat
    double F_sq = 0.0;   // beta_hat^T beta_hat
    double chi_sq = 0.0; // z_sq - F_sq
    Vec f_hat;       // X alpha_hat
    Vec resid_hat;   // z - f_hat
};

/// Orthonormal basis of the noise space (orthogonal complement of the model
/// columns) and the data coordinates in it.
struct NoiseBasis {
    Mat X_L;        // N x L, L = N - K
    Vec beta_hat_L; // X_L^T z
};

StandardizedData standardize(const Dataset& data);

DesignMatrix build_design_matrix(const Dataset& data, const BasisSpec& basis, int K);

FitDecomposition fit(const StandardizedData& data, const DesignMatrix& design);

/// Extends the model columns to a full orthonormal frame via modified
/// Gram-Schmidt over coordinate seeds, re-orthogonalized twice; seeds whose
/// residual norm falls below 1e-10 are skipped.
NoiseBasis noise_basis(const DesignMatrix& model, const StandardizedData& data, int N);

/// Fits K = 1..N against the given basis.
std::vector<FitDecomposition> fit_profile(const Dataset& data, const BasisSpec& basis);

} // namespace evidencia
