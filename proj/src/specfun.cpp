#include "evidencia/specfun.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "evidencia/errors.hpp"
#include "evidencia/quadrature.hpp"

namespace evidencia {

namespace {

constexpr double kRelTermTol = 1e-17;
constexpr double kRescaleThreshold = 1e280;
constexpr int kMaxSeriesTerms = 100000;
const double kLn2 = std::numbers::ln2;

/// Neumaier-compensated accumulator with a power-of-two rescale so the running
/// sum stays finite; `offset` carries the log of the discarded scale.
struct ScaledSum {
    double sum = 0.0;
    double comp = 0.0;
    double offset = 0.0;

    void add(double term) {
        double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }

    // Returns the factor the caller must apply to its own pending term.
    double rescale_if_needed() {
        if (sum <= kRescaleThreshold) return 1.0;
        const double scale = 0x1p-1000;
        sum *= scale;
        comp *= scale;
        offset += 1000.0 * kLn2;
        return scale;
    }

    double log_value() const { return std::log(sum + comp) + offset; }
    double value() const { return sum + comp; }
};

} // namespace

namespace detail {

double log_0F1_series(double b, double x) {
    ScaledSum acc;
    double term = 1.0;
    acc.add(term);
    for (int m = 0; m < kMaxSeriesTerms; ++m) {
        term *= x / ((b + m) * (m + 1.0));
        acc.add(term);
        term *= acc.rescale_if_needed();
        if (term < kRelTermTol * acc.sum) return acc.log_value();
    }
    throw NumericalError("log_0F1 series failed to converge");
}

double log_0F1_asymptotic(double b, double x) {
    // 0F1(;b;x) ~ Gamma(b) e^{2 sqrt x} x^{(1-2b)/4} / (2 sqrt pi) * S where S
    // is the modified-Bessel Hankel series in 1/(8 sqrt x). The series is
    // divergent; optimal truncation stops at the first term that grows again
    // after the terms have started shrinking.
    const double z = 2.0 * std::sqrt(x);
    const double nu = b - 1.0;
    const double four_nu_sq = 4.0 * nu * nu;
    ScaledSum acc;
    double term = 1.0;
    acc.add(term);
    bool shrinking = false;
    for (int k = 1; k < 400; ++k) {
        double odd = 2.0 * k - 1.0;
        double next = term * (-(four_nu_sq - odd * odd) / (8.0 * k * z));
        if (std::abs(next) < std::abs(term)) {
            shrinking = true;
        } else if (shrinking) {
            break;
        }
        term = next;
        acc.add(term);
        if (std::abs(term) < kRelTermTol * std::abs(acc.value())) break;
    }
    double s = acc.value();
    if (!(s > 0.0)) throw NumericalError("log_0F1 asymptotic series degenerate");
    return z + (0.25 - 0.5 * b) * std::log(x) + std::lgamma(b) -
           std::log(2.0 * std::sqrt(std::numbers::pi)) + std::log(s);
}

double log_1F1_series(double a, double b, double x) {
    ScaledSum acc;
    double term = 1.0;
    acc.add(term);
    for (int m = 0; m < kMaxSeriesTerms; ++m) {
        term *= (a + m) * x / ((b + m) * (m + 1.0));
        acc.add(term);
        term *= acc.rescale_if_needed();
        if (term < kRelTermTol * acc.sum) return acc.log_value();
    }
    throw NumericalError("log_1F1 series failed to converge");
}

} // namespace detail

double log_0F1(double b, double x) {
    if (!(b > 0.0)) throw DomainError("log_0F1 requires b > 0");
    if (!(x >= 0.0)) throw DomainError("log_0F1 requires x >= 0");
    if (x == 0.0) return 0.0;
    if (x > 705.0) return detail::log_0F1_asymptotic(b, x);
    return detail::log_0F1_series(b, x);
}

double log_1F1_asymptotic(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw DomainError("log_1F1_asymptotic requires a,b > 0");
    if (!(x > 0.0)) throw DomainError("log_1F1_asymptotic requires x > 0");
    return std::lgamma(b) - std::lgamma(a) + x + (a - b) * std::log(x);
}

double log_1F1(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw DomainError("log_1F1 requires a,b > 0");
    if (x == 0.0) return 0.0;
    if (x < 0.0) {
        // Kummer transform: 1F1(a;b;x) = e^x 1F1(b-a;b;-x).
        if (!(b - a > 0.0))
            throw DomainError("log_1F1 with x < 0 requires b > a");
        return x + detail::log_1F1_series(b - a, b, -x);
    }
    if (x > 5000.0) return log_1F1_asymptotic(a, b, x);
    return detail::log_1F1_series(a, b, x);
}

double humbert_psi2(double a, double b, double c, double x, double y) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0))
        throw DomainError("humbert_psi2 requires a,b,c > 0");
    if (!(x >= 0.0 && y >= 0.0)) throw DomainError("humbert_psi2 requires x,y >= 0");
    if (x + y > 200.0)
        throw DomainError("humbert_psi2 argument sum exceeds supported range");
    // Diagonal-by-diagonal recursion over t(m,n) = (a)_{m+n} x^m y^n /
    // ((b)_m (c)_n m! n!); each diagonal d holds total order m + n = d.
    ScaledSum total;
    std::vector<double> prev{1.0};
    total.add(1.0);
    int quiet = 0;
    for (int d = 1; d < kMaxSeriesTerms; ++d) {
        std::vector<double> cur(static_cast<size_t>(d) + 1);
        const double poch = a + d - 1.0;
        double diag = 0.0;
        for (int m = 0; m < d; ++m) {
            const int n = d - m;
            cur[m] = prev[m] * poch * y / ((c + n - 1.0) * n);
            diag += cur[m];
        }
        cur[d] = prev[d - 1] * poch * x / ((b + d - 1.0) * d);
        diag += cur[d];
        for (double t : cur) total.add(t);
        prev = std::move(cur);
        if (diag < kRelTermTol * total.sum) {
            if (++quiet >= 2) return total.log_value();
        } else {
            quiet = 0;
        }
    }
    throw NumericalError("humbert_psi2 series failed to converge");
}

void RadialPriorParams::validate() const {
    if (!(r >= 0.0)) throw DomainError("radial prior requires r >= 0");
    if (!(q >= 0.0)) throw DomainError("radial prior requires q >= 0");
    if (!(gamma >= 0.0)) throw DomainError("radial prior requires gamma >= 0");
    if (!(Delta >= 0.0)) throw DomainError("radial prior requires Delta >= 0");
    if (!(delta > 0.0)) throw DomainError("radial prior requires delta > 0");
    if (!(sigma_gamma > 0.0)) throw DomainError("radial prior requires sigma_gamma > 0");
    if (K < 1 || L < 1) throw DomainError("radial prior requires K, L >= 1");
}

double gamma_radial_pdf(double q, double delta, int L) {
    if (!(delta > 0.0)) throw DomainError("gamma_radial_pdf requires delta > 0");
    if (L < 1) throw DomainError("gamma_radial_pdf requires L >= 1");
    if (!(q >= 0.0)) throw DomainError("gamma_radial_pdf requires q >= 0");
    if (q == 0.0) {
        if (L == 1) return std::sqrt(2.0 / std::numbers::pi) / delta;
        return 0.0;
    }
    const double u = q * q / (2.0 * delta * delta);
    return std::exp(std::log(q / (delta * delta)) + (0.5 * L - 1.0) * std::log(u) - u -
                    std::lgamma(0.5 * L));
}

double gamma_radial_pdf(const RadialPriorParams& p) {
    p.validate();
    return gamma_radial_pdf(p.q, p.delta, p.L);
}

double noncentral_gamma_radial_pdf(double r, double Delta, double gamma, int K) {
    if (!(Delta > 0.0))
        throw DomainError("noncentral_gamma_radial_pdf requires Delta > 0");
    if (K < 1) throw DomainError("noncentral_gamma_radial_pdf requires K >= 1");
    if (!(r >= 0.0 && gamma >= 0.0))
        throw DomainError("noncentral_gamma_radial_pdf requires r, gamma >= 0");
    const double D2 = Delta * Delta;
    if (r == 0.0) {
        if (K == 1)
            return std::sqrt(2.0 / std::numbers::pi) / Delta *
                   std::exp(-gamma * gamma / (2.0 * D2));
        return 0.0;
    }
    const double u = r * r / (2.0 * D2);
    return std::exp(std::log(r / D2) + (0.5 * K - 1.0) * std::log(u) -
                    (r * r + gamma * gamma) / (2.0 * D2) +
                    log_0F1(0.5 * K, gamma * gamma * r * r / (4.0 * D2 * D2)) -
                    std::lgamma(0.5 * K));
}

double noncentral_gamma_radial_pdf(const RadialPriorParams& p) {
    p.validate();
    return noncentral_gamma_radial_pdf(p.r, p.Delta, p.gamma, p.K);
}

double hypersphere_log_prior(int dim, double radius) {
    if (dim < 1) throw DomainError("hypersphere_log_prior requires dim >= 1");
    if (!(radius > 0.0)) throw DomainError("hypersphere_log_prior requires radius > 0");
    return std::lgamma(0.5 * dim) - kLn2 - 0.5 * dim * std::log(std::numbers::pi) -
           (dim - 1.0) * std::log(radius);
}

double conditioned_log_evidence(double F_sq, double chi_sq, double r, double q, int K,
                                int L) {
    if (!(F_sq >= 0.0 && chi_sq >= 0.0))
        throw DomainError("conditioned_log_evidence requires F_sq, chi_sq >= 0");
    if (!(r >= 0.0 && q >= 0.0))
        throw DomainError("conditioned_log_evidence requires r, q >= 0");
    if (K < 1 || L < 1) throw DomainError("conditioned_log_evidence requires K, L >= 1");
    return -0.5 * (F_sq + r * r) + log_0F1(0.5 * K, 0.25 * r * r * F_sq) -
           0.5 * (chi_sq + q * q) + log_0F1(0.5 * L, 0.25 * q * q * chi_sq);
}

std::pair<double, double> verify_integral_identity(double a, double x, double y) {
    if (!(a > 0.0)) throw DomainError("verify_integral_identity requires a > 0");
    if (!(x >= 0.0 && y >= 0.0))
        throw DomainError("verify_integral_identity requires x, y >= 0");
    const double lga = std::lgamma(a);
    auto integrand = [&](double r) {
        if (r <= 0.0) return 0.0;
        return std::exp(-r + (a - 1.0) * std::log(r) - lga + log_0F1(a, x * r) +
                        log_0F1(a, y * r));
    };
    double lhs = integrate_to_infinity(integrand, 0.0, 1e-12);
    double rhs = std::exp(x + y + log_0F1(a, x * y));
    return {lhs, rhs};
}

} // namespace evidencia
