#include "evidencia/criteria.hpp"

#include <cmath>
#include <limits>

#include "evidencia/errors.hpp"
#include "evidencia/specfun.hpp"

namespace evidencia {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_geometry(double F_sq, double z_sq, int K, int N) {
    if (!(F_sq >= 0.0 && z_sq >= 0.0)) throw DomainError("negative squared norm");
    if (F_sq > z_sq * (1.0 + 1e-12) + 1e-12)
        throw DomainError("F_sq exceeds z_sq");
    if (K < 1 || K > N) throw DomainError("model dimension K out of range");
}

} // namespace

std::string criterion_name(Criterion c) {
    switch (c) {
    case Criterion::AIC: return "AIC";
    case Criterion::AICc: return "AICc";
    case Criterion::BIC: return "BIC";
    case Criterion::RobustExact: return "RobustExact";
    case Criterion::RobustAsymptotic: return "RobustAsymptotic";
    case Criterion::RobustLargeK: return "RobustLargeK";
    }
    throw ConfigError("unknown criterion enum value");
}

Criterion criterion_from_name(const std::string& name) {
    for (Criterion c : kAllCriteria)
        if (criterion_name(c) == name) return c;
    throw ConfigError("unknown criterion '" + name + "'");
}

const CriterionResult& CriterionProfile::result(Criterion c) const {
    for (const CriterionResult& r : results)
        if (r.criterion == c) return r;
    throw ConfigError("criterion not present in profile");
}

double aic(double chi_sq, int K) {
    if (K < 1) throw DomainError("aic requires K >= 1");
    return chi_sq + 2.0 * K;
}

double aicc(double chi_sq, int K, int N) {
    if (K < 1 || K > N) throw DomainError("aicc requires 1 <= K <= N");
    const int denom = N - K - 1;
    if (denom <= 0) return kInf;
    return chi_sq + 2.0 * K + 2.0 * K * (K + 1.0) / denom;
}

double bic(double chi_sq, int K, int N) {
    if (K < 1 || K > N) throw DomainError("bic requires 1 <= K <= N");
    return chi_sq + K * std::log(static_cast<double>(N));
}

double log_bf_bic_prior(double chi_sq, int K, int N) {
    if (K < 1 || K > N) throw DomainError("log_bf_bic_prior requires 1 <= K <= N");
    return 0.5 * (N - K) * std::log(N + 1.0) - N * chi_sq / (2.0 * (N + 1.0));
}

double log_bf_akaike_prior(double chi_sq, int K, int N, double delta, double Delta) {
    if (K < 1 || K > N) throw DomainError("log_bf_akaike_prior requires 1 <= K <= N");
    if (!(delta > 0.0 && Delta > 0.0))
        throw DomainError("log_bf_akaike_prior requires positive prior scales");
    const double L = static_cast<double>(N - K);
    const double d2 = delta * delta;
    const double D2 = Delta * Delta;
    return 0.5 * L * std::log((1.0 + D2) / (1.0 + d2)) -
           0.5 * (1.0 / (1.0 + d2) - 1.0 / (1.0 + D2)) * chi_sq;
}

double log_bf_robust_exact(double F_sq, double z_sq, int K, int N) {
    check_geometry(F_sq, z_sq, K, N);
    return log_1F1(0.5, 0.5 * K, 0.5 * F_sq) - log_1F1(0.5, 0.5 * N, 0.5 * z_sq);
}

double robust_bic_asymptotic(double chi_sq, double F_sq, int K) {
    if (K < 1) throw DomainError("robust_bic_asymptotic requires K >= 1");
    if (K >= 2 && !(F_sq > 0.0))
        throw DegenerateSignalError("robust_bic_asymptotic requires F_sq > 0");
    const double log_term = (K == 1) ? 0.0 : (K - 1.0) * std::log(0.5 * F_sq);
    return chi_sq + log_term - 2.0 * std::lgamma(0.5 * K);
}

double robust_bic_large_k(double chi_sq, double F_sq, int K) {
    if (K < 1) throw DomainError("robust_bic_large_k requires K >= 1");
    if (!(F_sq > 0.0))
        throw DegenerateSignalError("robust_bic_large_k requires F_sq > 0");
    return chi_sq + K * std::log(F_sq / K) + K;
}

double evidence_gamma_fixed_log(double F_sq, double z_sq, int K, int N, double Delta,
                                double gamma) {
    check_geometry(F_sq, z_sq, K, N);
    if (!(Delta >= 0.0 && gamma >= 0.0))
        throw DomainError("evidence_gamma_fixed_log requires Delta, gamma >= 0");
    const double w = 1.0 + Delta * Delta;
    double value = -0.5 * N * std::log(w) - (gamma * gamma + z_sq) / (2.0 * w);
    if (gamma > 0.0)
        value += log_0F1(0.5 * K, gamma * gamma * F_sq / (4.0 * w * w));
    return value;
}

double criterion_value(Criterion c, double chi_sq, double F_sq, double z_sq, int K,
                       int N) {
    switch (c) {
    case Criterion::AIC: return aic(chi_sq, K);
    case Criterion::AICc: return aicc(chi_sq, K, N);
    case Criterion::BIC: return bic(chi_sq, K, N);
    case Criterion::RobustExact: return -2.0 * log_bf_robust_exact(F_sq, z_sq, K, N);
    case Criterion::RobustAsymptotic: return robust_bic_asymptotic(chi_sq, F_sq, K);
    case Criterion::RobustLargeK: return robust_bic_large_k(chi_sq, F_sq, K);
    }
    throw ConfigError("unknown criterion enum value");
}

int argmin_smallest_k(const Vec& values) {
    int best = 0;
    double best_value = kInf;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (std::isfinite(values[i]) && values[i] < best_value) {
            best_value = values[i];
            best = static_cast<int>(i) + 1;
        }
    }
    if (best == 0) throw NumericalError("criterion has no finite values");
    return best;
}

CriterionProfile build_profile(const std::vector<FitDecomposition>& fits, int N) {
    if (static_cast<int>(fits.size()) != N)
        throw ConfigError("profile requires fits for K = 1..N");
    CriterionProfile out;
    out.N = N;
    out.F_sq.resize(fits.size());
    out.chi_sq.resize(fits.size());
    for (std::size_t i = 0; i < fits.size(); ++i) {
        if (fits[i].K != static_cast<int>(i) + 1)
            throw ConfigError("fits must be ordered K = 1..N");
        out.F_sq[i] = fits[i].F_sq;
        out.chi_sq[i] = fits[i].chi_sq;
    }
    out.z_sq = fits.back().F_sq + fits.back().chi_sq;
    for (Criterion c : kAllCriteria) {
        CriterionResult r;
        r.criterion = c;
        r.values.resize(fits.size());
        for (int K = 1; K <= N; ++K)
            r.values[K - 1] =
                criterion_value(c, out.chi_sq[K - 1], out.F_sq[K - 1], out.z_sq, K, N);
        r.selected_K = argmin_smallest_k(r.values);
        out.results.push_back(std::move(r));
    }
    return out;
}

} // namespace evidencia
