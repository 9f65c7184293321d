#pragma once

#include <array>
#include <string>
#include <vector>

#include "evidencia/linmodel.hpp"

namespace evidencia {

enum class Criterion { AIC, AICc, BIC, RobustExact, RobustAsymptotic, RobustLargeK };

inline constexpr std::array<Criterion, 6> kAllCriteria = {
    Criterion::AIC,          Criterion::AICc,             Criterion::BIC,
    Criterion::RobustExact,  Criterion::RobustAsymptotic, Criterion::RobustLargeK};

std::string criterion_name(Criterion c);

/// Parses a criterion name as printed by criterion_name; throws ConfigError.
Criterion criterion_from_name(const std::string& name);

/// One criterion evaluated over K = 1..N. values[K-1] may be +infinity where
/// the criterion is undefined (AICc at K >= N-1).
struct CriterionResult {
    Criterion criterion = Criterion::AIC;
    Vec values;
    int selected_K = 0;
};

/// All six criteria over a fit profile, plus the shared geometry they were
/// computed from.
struct CriterionProfile {
    int N = 0;
    double z_sq = 0.0;
    Vec F_sq;   // per K = 1..N
    Vec chi_sq; // per K = 1..N
    std::vector<CriterionResult> results;

    const CriterionResult& result(Criterion c) const;
};

double aic(double chi_sq, int K);
double aicc(double chi_sq, int K, int N);
double bic(double chi_sq, int K, int N);

/// log Bayes factor of model K against the K=N reference under the unit-ball
/// prior: ((N-K)/2) ln(N+1) - N chi_sq / (2(N+1)).
double log_bf_bic_prior(double chi_sq, int K, int N);

/// log Bayes factor under Gaussian priors of scale delta (noise block) and
/// Delta (signal block): (L/2) ln((1+Delta^2)/(1+delta^2))
/// - (1/(1+delta^2) - 1/(1+Delta^2)) chi_sq / 2 with L = N-K.
double log_bf_akaike_prior(double chi_sq, int K, int N, double delta, double Delta);

/// Scale-free log Bayes factor against the K=N reference:
/// log 1F1(1/2; K/2; F_sq/2) - log 1F1(1/2; N/2; z_sq/2).
double log_bf_robust_exact(double F_sq, double z_sq, int K, int N);

/// chi_sq + (K-1) ln(F_sq/2) - 2 ln Gamma(K/2).
double robust_bic_asymptotic(double chi_sq, double F_sq, int K);

/// chi_sq + K ln(F_sq/K) + K.
double robust_bic_large_k(double chi_sq, double F_sq, int K);

/// log evidence (relative to the likelihood constant) for fixed noncentrality
/// gamma and prior scale Delta:
/// -(N/2) ln(1+Delta^2) - (gamma^2+z_sq)/(2(1+Delta^2))
///   + log 0F1(K/2; gamma^2 F_sq / (4(1+Delta^2)^2)).
double evidence_gamma_fixed_log(double F_sq, double z_sq, int K, int N, double Delta,
                                double gamma);

/// Criterion value from shared geometry; +infinity encodes inapplicability.
double criterion_value(Criterion c, double chi_sq, double F_sq, double z_sq, int K,
                       int N);

/// Index (1-based) of the minimum finite value, smallest index on ties.
int argmin_smallest_k(const Vec& values);

CriterionProfile build_profile(const std::vector<FitDecomposition>& fits, int N);

} // namespace evidencia
