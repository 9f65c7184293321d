#pragma once

#include <cstdint>
#include <vector>

#include "evidencia/criteria.hpp"
#include "evidencia/linmodel.hpp"
#include "evidencia/matrix.hpp"

namespace evidencia {

struct SimConfig {
    int N = 32;
    double a = 0.0;
    double b = 0.0;
    int replicates = 1;
    std::uint64_t seed = 0xD1CE;
    std::vector<Criterion> criteria{kAllCriteria.begin(), kAllCriteria.end()};

    void validate() const;
};

/// One replicate: N synthetic datasets (column S generated with Ksim = S)
/// sharing one quenched amplitude vector phi and one noise matrix E.
struct SimDraw {
    Mat D;    // N x N data, column S-1 for Ksim = S
    Mat E;    // N x N noise draws
    Vec phi;  // N quenched amplitude spreads
    Mat B;    // mode matrix X^T D
    Vec z_sq; // per-column squared norm, computed from B so the K=N model
              // closes the Pythagorean sum exactly
};

/// K-truncated view of a draw: the first K mode rows and the per-column
/// signal/noise split they induce.
struct ModeMatrix {
    Mat B_K;    // K x N
    Vec F_sq;   // per column S
    Vec chi_sq; // per column S
};

struct SuccessTable {
    SimConfig config;
    std::vector<std::vector<std::int64_t>> successes; // [criterion][S-1]
    Mat rates;                                        // criteria x N
    Mat std_errors;                                   // criteria x N
};

struct AnalyticEstimates {
    double E_F_sq = 0.0;
    double E_chi_sq = 0.0;
    double E_z_sq = 0.0;
    double E_beta_sq = 0.0;
};

struct CurveTable {
    std::vector<int> K;
    Vec E_chi_sq;
    Vec E_F_sq;
    Vec aic;
    Vec bic;
    Vec robust_large_k;
};

/// x_n = (2n-1) pi / 2N, n = 1..N.
Vec sample_points(int N);

/// Orthonormal cosine design matrix (unit sigma) evaluated at sample_points.
Mat cosine_design(int N);

/// Table-form basis holding the cosine family values at sample_points.
BasisSpec cosine_basis(int N);

SimDraw generate_draw(const SimConfig& config, std::uint32_t replicate);

/// Variant sharing a precomputed cosine design across replicates.
SimDraw generate_draw(const SimConfig& config, std::uint32_t replicate,
                      const Mat& design);

ModeMatrix mode_matrix(const SimDraw& draw, int K);

/// Success-rate experiment: for each replicate and each data column S, selects
/// the model dimension minimizing each configured criterion over K = 0..N
/// (K = 0 is the empty model) and counts selected K = S as a success.
/// threads = 0 uses the hardware concurrency; results are identical for any
/// thread count.
SuccessTable run_success_experiment(const SimConfig& config, int threads = 0);

/// Expectation formulas for the cosine-design experiment. E_beta_sq uses the
/// identification of the noncentrality with the accumulated signal power and
/// is interpretive rather than exact.
AnalyticEstimates analytic_estimates(double a, double b, int N, int S, int K);

/// AIC, BIC and the large-K robust criterion evaluated on the analytic
/// expectations over K = K_lo..K_hi.
CurveTable criterion_curves(double a, double b, int N, int S, int K_lo, int K_hi);

/// requested > 0 passes through; 0 resolves to the hardware concurrency.
int resolve_thread_count(int requested);

} // namespace evidencia
