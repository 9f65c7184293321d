#include "evidencia/quadrature.hpp"

#include <cmath>
#include <limits>

#include "evidencia/errors.hpp"

namespace evidencia {

namespace {

// 15-point Kronrod nodes with the embedded 7-point Gauss rule on odd indices.
constexpr double kNodes[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993945, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWeights[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr double kGaussWeights[4] = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
    0.4179591836734694};

struct PanelResult {
    double kronrod;
    double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double lo = f(c - h * kNodes[i]);
        const double hi = f(c + h * kNodes[i]);
        kron += kWeights[i] * (lo + hi);
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (lo + hi);
    }
    kron *= h;
    gauss *= h;
    return {kron, std::abs(kron - gauss)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             int depth) {
    const PanelResult p = gk15(f, a, b);
    // The Gauss and Kronrod sums round independently, so their difference
    // carries ~1e-14 relative noise even when both rules are exact. Refining
    // below that floor cannot reduce the error; without this escape a tol
    // derived from a gross underestimate (mass at an unsampled endpoint)
    // drives the recursion to the depth cap across the whole panel.
    const double floor_err =
        256.0 * std::numeric_limits<double>::epsilon() * std::abs(p.kronrod) + 1e-300;
    if (p.err <= tol || p.err <= floor_err) return p.kronrod;
    if (depth >= 48) {
        if (p.err > 1e3 * tol)
            throw NumericalError("quadrature: panel refinement exhausted");
        return p.kronrod;
    }
    const double m = 0.5 * (a + b);
    return adapt(f, a, m, 0.5 * tol, depth + 1) + adapt(f, m, b, 0.5 * tol, depth + 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol) {
    if (!(a <= b)) throw DomainError("integrate: requires a <= b");
    if (a == b) return 0.0;
    const PanelResult rough = gk15(f, a, b);
    double tol = std::max(abs_tol, rel_tol * std::abs(rough.kronrod));
    if (tol <= 0.0) tol = 1e-300;
    return adapt(f, a, b, tol, 0);
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double rel_tol) {
    double peak = 0.0;
    auto tracked = [&f, &peak](double x) {
        const double v = f(x);
        const double av = std::abs(v);
        if (av > peak) peak = av;
        return v;
    };

    double right = (a == 0.0) ? 1.0 : std::abs(a) * 2.0 + 1.0;
    double total = integrate(tracked, a, right, rel_tol);
    int quiet = 0;
    for (int step = 0; step < 64; ++step) {
        const double next = right * 2.0;
        const double seg = integrate(tracked, right, next, rel_tol);
        total += seg;
        right = next;
        const bool seg_negligible = std::abs(seg) <= std::max(1e-300, 1e-15 * std::abs(total));
        const bool tail_low = std::abs(f(right)) <= 1e-14 * peak;
        quiet = (seg_negligible && tail_low) ? quiet + 1 : 0;
        if (quiet >= 2) return total;
    }
    throw NumericalError("quadrature: tail did not decay on [a, infinity)");
}

} // namespace evidencia
