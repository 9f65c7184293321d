#pragma once

#include <utility>

namespace evidencia {

/// Parameter pack for the radial prior family: model/noise radii (r, q),
/// subspace dimensions (K, L), prior scales (delta for noise, Delta for model),
/// noncentrality gamma and its prior width sigma_gamma.
struct RadialPriorParams {
    double r = 0.0;
    double q = 0.0;
    int K = 1;
    int L = 1;
    double delta = 1.0;
    double Delta = 0.0;
    double gamma = 0.0;
    double sigma_gamma = 1.0;

    /// Throws DomainError unless r,q,gamma >= 0, Delta >= 0, delta > 0,
    /// sigma_gamma > 0 and K,L >= 1.
    void validate() const;
};

/// log 0F1(;b;x) for b > 0, x >= 0. Series below x = 705, large-argument
/// asymptotic above (validated to 1e-9 relative against a 50-digit oracle).
double log_0F1(double b, double x);

/// log 1F1(a;b;x) for a,b > 0. Compensated series for x <= 5000, one-term
/// asymptotic beyond; negative x routed through the Kummer transform.
double log_1F1(double a, double b, double x);

/// One-term large-x form log(Gamma(b)/Gamma(a)) + x + (a-b) log x.
double log_1F1_asymptotic(double a, double b, double x);

/// log of the Humbert Psi2 double series
/// sum_{m,n} (a)_{m+n} x^m y^n / ((b)_m (c)_n m! n!),
/// summed diagonal-by-diagonal. Requires a,b,c > 0, x,y >= 0, x+y <= 200.
double humbert_psi2(double a, double b, double c, double x, double y);

/// Radial density of an L-dimensional spherical Gaussian of scale delta:
/// (q/delta^2) (q^2/2delta^2)^{L/2-1} exp(-q^2/2delta^2) / Gamma(L/2).
double gamma_radial_pdf(double q, double delta, int L);
double gamma_radial_pdf(const RadialPriorParams& p);

/// Noncentral radial density for mean norm gamma:
/// (r/Delta^2) (r^2/2Delta^2)^{K/2-1} exp(-(r^2+gamma^2)/2Delta^2)
///   0F1(K/2; gamma^2 r^2 / 4Delta^4) / Gamma(K/2).
double noncentral_gamma_radial_pdf(double r, double Delta, double gamma, int K);
double noncentral_gamma_radial_pdf(const RadialPriorParams& p);

/// log of Gamma(dim/2) / (2 pi^{dim/2} radius^{dim-1}), the uniform
/// hypersphere-surface prior prefactor.
double hypersphere_log_prior(int dim, double radius);

/// log evidence conditioned on the two prior radii (relative to the
/// likelihood's constant prefactor):
/// -1/2 (F_sq + r^2) + log 0F1(K/2; r^2 F_sq/4)
/// -1/2 (chi_sq + q^2) + log 0F1(L/2; q^2 chi_sq/4).
double conditioned_log_evidence(double F_sq, double chi_sq, double r, double q, int K,
                                int L);

/// Quadrature check of the identity
/// int_0^inf e^{-r} r^{a-1}/Gamma(a) 0F1(a;xr) 0F1(a;yr) dr = e^{x+y} 0F1(a;xy).
/// Returns {lhs by adaptive quadrature, rhs closed form}.
std::pair<double, double> verify_integral_identity(double a, double x, double y);

namespace detail {

/// Compensated power series for log 0F1; valid for any x >= 0.
double log_0F1_series(double b, double x);

/// Hankel-type large-argument expansion with optimal truncation; intended for
/// x > 705 where it is accurate to ~1e-15 relative for b <= 16.
double log_0F1_asymptotic(double b, double x);

/// Compensated power series for log 1F1 (x >= 0).
double log_1F1_series(double a, double b, double x);

} // namespace detail

} // namespace evidencia
