#include "evidencia/linmodel.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "evidencia/errors.hpp"

namespace evidencia {

namespace {

constexpr double kRankTol = 1e-12;
constexpr double kSeedResidualTol = 1e-10;

/// Subtracts from v its projections onto the first `count` columns of basis.
void project_out(Vec& v, const Mat& basis, std::size_t count) {
    for (std::size_t j = 0; j < count; ++j) {
        double proj = 0.0;
        for (std::size_t n = 0; n < basis.rows; ++n) proj += basis(n, j) * v[n];
        for (std::size_t n = 0; n < basis.rows; ++n) v[n] -= proj * basis(n, j);
    }
}

} // namespace

void Dataset::validate() const {
    if (x.empty()) throw ConfigError("dataset is empty");
    if (x.size() != y.size() || x.size() != sigma.size())
        throw ConfigError("dataset columns x, y, sigma differ in length");
    for (std::size_t n = 0; n < sigma.size(); ++n) {
        if (!(sigma[n] > 0.0))
            throw InvalidUncertaintyError("sigma must be positive at row " +
                                          std::to_string(n + 1));
    }
}

int BasisSpec::max_functions(int N) const {
    return kind == Kind::Cosine ? N : static_cast<int>(table.cols);
}

StandardizedData standardize(const Dataset& data) {
    data.validate();
    StandardizedData out;
    out.z.resize(data.x.size());
    for (std::size_t n = 0; n < out.z.size(); ++n) out.z[n] = data.y[n] / data.sigma[n];
    out.z_sq = norm_sq(out.z);
    return out;
}

DesignMatrix build_design_matrix(const Dataset& data, const BasisSpec& basis, int K) {
    data.validate();
    const int N = data.size();
    if (K < 1) throw ConfigError("model dimension K must be at least 1");
    if (K > N) throw OverparameterizedError("model dimension K exceeds data size N");
    if (K > basis.max_functions(N))
        throw BasisExhaustedError("basis supplies fewer than K functions");
    if (basis.kind == BasisSpec::Kind::Table &&
        basis.table.rows != static_cast<std::size_t>(N))
        throw ConfigError("table basis row count does not match data size");

    DesignMatrix out;
    out.X = Mat(static_cast<std::size_t>(N), static_cast<std::size_t>(K));
    for (int n = 0; n < N; ++n) {
        for (int k = 0; k < K; ++k) {
            double f;
            if (basis.kind == BasisSpec::Kind::Cosine) {
                f = (k == 0) ? std::sqrt(1.0 / N)
                             : std::sqrt(2.0 / N) * std::cos(k * data.x[n]);
            } else {
                f = basis.table(n, k);
            }
            if (!std::isfinite(f)) throw ConfigError("basis value is not finite");
            out.X(n, k) = f / data.sigma[n];
        }
    }
    return out;
}

FitDecomposition fit(const StandardizedData& data, const DesignMatrix& design) {
    const std::size_t N = design.X.rows;
    const std::size_t K = design.X.cols;
    if (data.z.size() != N) throw ConfigError("data and design sizes differ");

    FitDecomposition out;
    out.K = static_cast<int>(K);
    out.hessian = matmul(transpose(design.X), design.X);
    Eigensystem eig = jacobi_eigensystem(out.hessian);
    out.eigvals = eig.values;
    out.eigvecs = eig.vectors;

    const double lam_max = out.eigvals.back();
    if (!(lam_max > 0.0) || out.eigvals.front() <= kRankTol * lam_max)
        throw SingularDesignError("design matrix is numerically rank-deficient");

    const Vec xtz = transpose_matvec(design.X, data.z);
    Vec s_t_xtz = transpose_matvec(out.eigvecs, xtz);
    out.beta_hat.resize(K);
    Vec alpha_rot(K);
    for (std::size_t j = 0; j < K; ++j) {
        out.beta_hat[j] = s_t_xtz[j] / std::sqrt(out.eigvals[j]);
        alpha_rot[j] = s_t_xtz[j] / out.eigvals[j];
    }
    out.alpha_hat = matvec(out.eigvecs, alpha_rot);
    out.F_sq = norm_sq(out.beta_hat);
    out.chi_sq = data.z_sq - out.F_sq;
    if (out.chi_sq < 0.0) {
        if (out.chi_sq < -1e-8 * std::max(data.z_sq, 1.0))
            throw NumericalError("fitted signal norm exceeds data norm");
        out.chi_sq = 0.0;
    }
    out.f_hat = matvec(design.X, out.alpha_hat);
    out.resid_hat.resize(N);
    for (std::size_t n = 0; n < N; ++n) out.resid_hat[n] = data.z[n] - out.f_hat[n];
    return out;
}

NoiseBasis noise_basis(const DesignMatrix& model, const StandardizedData& data, int N) {
    if (model.rows() != N || data.size() != N)
        throw ConfigError("noise_basis size mismatch");
    const std::size_t K = model.X.cols;
    const std::size_t L = static_cast<std::size_t>(N) - K;

    // Orthonormalize the model columns first so orthogonality against the
    // model space can be enforced by projection.
    Mat frame(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
    std::size_t built = 0;
    for (std::size_t k = 0; k < K; ++k) {
        Vec v(static_cast<std::size_t>(N));
        for (std::size_t n = 0; n < v.size(); ++n) v[n] = model.X(n, k);
        project_out(v, frame, built);
        project_out(v, frame, built);
        double norm = std::sqrt(norm_sq(v));
        if (norm < kSeedResidualTol)
            throw SingularDesignError("model columns are not linearly independent");
        for (std::size_t n = 0; n < v.size(); ++n) frame(n, built) = v[n] / norm;
        ++built;
    }

    for (std::size_t seed = 0; seed < static_cast<std::size_t>(N) && built < K + L;
         ++seed) {
        Vec v(static_cast<std::size_t>(N), 0.0);
        v[seed] = 1.0;
        project_out(v, frame, built);
        project_out(v, frame, built);
        double norm = std::sqrt(norm_sq(v));
        if (norm < kSeedResidualTol) continue;
        for (std::size_t n = 0; n < v.size(); ++n) frame(n, built) = v[n] / norm;
        ++built;
    }
    if (built < K + L)
        throw DegenerateSpaceError("could not complete the noise-space basis");

    NoiseBasis out;
    out.X_L = Mat(static_cast<std::size_t>(N), L);
    for (std::size_t n = 0; n < out.X_L.rows; ++n)
        for (std::size_t l = 0; l < L; ++l) out.X_L(n, l) = frame(n, K + l);
    out.beta_hat_L = transpose_matvec(out.X_L, data.z);
    return out;
}

std::vector<FitDecomposition> fit_profile(const Dataset& data, const BasisSpec& basis) {
    data.validate();
    const int N = data.size();
    if (basis.max_functions(N) < N)
        throw BasisExhaustedError("profile requires a basis with N functions");
    const StandardizedData std_data = standardize(data);
    std::vector<FitDecomposition> out;
    out.reserve(static_cast<std::size_t>(N));
    for (int K = 1; K <= N; ++K)
        out.push_back(fit(std_data, build_design_matrix(data, basis, K)));
    return out;
}

} // namespace evidencia
