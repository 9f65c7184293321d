#include "evidencia/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <thread>

#include "evidencia/errors.hpp"
#include "evidencia/rng.hpp"
#include "evidencia/specfun.hpp"

namespace evidencia {

namespace {

constexpr double kModeInvariantTol = 1e-10;

/// Criterion value for the empty model (K = 0, all data is noise). For the
/// exact robust criterion this is twice the reference-denominator log, the
/// F_sq -> 0 limit of the K >= 1 formula; for all others it is z_sq.
double null_criterion_value(Criterion c, double z_sq, int N) {
    if (c == Criterion::RobustExact) return 2.0 * log_1F1(0.5, 0.5 * N, 0.5 * z_sq);
    return z_sq;
}

struct ColumnSelector {
    const SimConfig& config;
    Vec values; // scratch, K = 0..N

    explicit ColumnSelector(const SimConfig& cfg)
        : config(cfg), values(static_cast<std::size_t>(cfg.N) + 1) {}

    /// Smallest K in 0..N minimizing the criterion for one data column.
    int select(Criterion c, const Vec& cum_F_sq, double z_sq) {
        const int N = config.N;
        values[0] = null_criterion_value(c, z_sq, N);
        for (int K = 1; K <= N; ++K) {
            const double F = cum_F_sq[static_cast<std::size_t>(K) - 1];
            const double chi = std::max(0.0, z_sq - F);
            values[static_cast<std::size_t>(K)] =
                criterion_value(c, chi, F, z_sq, K, N);
        }
        int best = -1;
        double best_value = 0.0;
        for (int K = 0; K <= N; ++K) {
            const double v = values[static_cast<std::size_t>(K)];
            if (std::isfinite(v) && (best < 0 || v < best_value)) {
                best = K;
                best_value = v;
            }
        }
        if (best < 0) throw NumericalError("criterion has no finite values");
        return best;
    }
};

} // namespace

void SimConfig::validate() const {
    if (N < 2) throw ConfigError("simulation requires N >= 2");
    if (!(a >= 0.0 && b >= 0.0))
        throw ConfigError("signal amplitudes a, b must be nonnegative");
    if (replicates < 1) throw ConfigError("replicates must be at least 1");
    if (criteria.empty()) throw ConfigError("no criteria configured");
}

Vec sample_points(int N) {
    if (N < 1) throw ConfigError("sample_points requires N >= 1");
    Vec x(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n)
        x[static_cast<std::size_t>(n) - 1] =
            (2.0 * n - 1.0) * std::numbers::pi / (2.0 * N);
    return x;
}

Mat cosine_design(int N) {
    const Vec x = sample_points(N);
    Mat X(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) {
        X(static_cast<std::size_t>(n), 0) = std::sqrt(1.0 / N);
        for (int k = 1; k < N; ++k)
            X(static_cast<std::size_t>(n), static_cast<std::size_t>(k)) =
                std::sqrt(2.0 / N) * std::cos(k * x[static_cast<std::size_t>(n)]);
    }
    return X;
}

BasisSpec cosine_basis(int N) { return BasisSpec::from_table(cosine_design(N)); }

SimDraw generate_draw(const SimConfig& config, std::uint32_t replicate) {
    return generate_draw(config, replicate, cosine_design(config.N));
}

SimDraw generate_draw(const SimConfig& config, std::uint32_t replicate,
                      const Mat& design) {
    config.validate();
    const int N = config.N;
    const auto Nu = static_cast<std::size_t>(N);
    if (design.rows != Nu || design.cols != Nu)
        throw ConfigError("design size does not match config");

    SimDraw draw;
    draw.phi.resize(Nu);
    for (int k = 0; k < N; ++k)
        draw.phi[static_cast<std::size_t>(k)] = standard_normal(
            config.seed, replicate, StreamRole::Phi, static_cast<std::uint32_t>(k));

    draw.E = Mat(Nu, Nu);
    for (int S = 1; S <= N; ++S)
        for (int n = 0; n < N; ++n)
            draw.E(static_cast<std::size_t>(n), static_cast<std::size_t>(S) - 1) =
                standard_normal(config.seed, replicate, StreamRole::Epsilon,
                                static_cast<std::uint32_t>(S * N + n));

    // M = (a I + b diag(phi)) A with A upper-triangular of ones: column S of M
    // holds a + b phi_k for rows k <= S.
    Mat M(Nu, Nu);
    for (int S = 1; S <= N; ++S)
        for (int k = 0; k < S; ++k)
            M(static_cast<std::size_t>(k), static_cast<std::size_t>(S) - 1) =
                config.a + config.b * draw.phi[static_cast<std::size_t>(k)];

    draw.D = matmul(design, M);
    for (std::size_t i = 0; i < draw.D.data.size(); ++i)
        draw.D.data[i] += draw.E.data[i];
    draw.B = matmul(transpose(design), draw.D);

    // The design is orthonormal, so the mode matrix must recover M plus the
    // rotated noise.
    Mat XtE = matmul(transpose(design), draw.E);
    double worst = 0.0;
    for (std::size_t i = 0; i < draw.B.data.size(); ++i)
        worst = std::max(worst, std::abs(draw.B.data[i] - M.data[i] - XtE.data[i]));
    if (worst >= kModeInvariantTol)
        throw NumericalError("mode-matrix identity violated in draw generation");

    draw.z_sq.assign(Nu, 0.0);
    for (std::size_t k = 0; k < Nu; ++k)
        for (std::size_t s = 0; s < Nu; ++s) draw.z_sq[s] += draw.B(k, s) * draw.B(k, s);
    return draw;
}

ModeMatrix mode_matrix(const SimDraw& draw, int K) {
    const std::size_t Nu = draw.B.cols;
    if (K < 1 || static_cast<std::size_t>(K) > draw.B.rows)
        throw ConfigError("mode_matrix K out of range");
    ModeMatrix out;
    out.B_K = Mat(static_cast<std::size_t>(K), Nu);
    out.F_sq.assign(Nu, 0.0);
    out.chi_sq.assign(Nu, 0.0);
    for (std::size_t k = 0; k < static_cast<std::size_t>(K); ++k)
        for (std::size_t s = 0; s < Nu; ++s) {
            out.B_K(k, s) = draw.B(k, s);
            out.F_sq[s] += draw.B(k, s) * draw.B(k, s);
        }
    for (std::size_t s = 0; s < Nu; ++s)
        out.chi_sq[s] = std::max(0.0, draw.z_sq[s] - out.F_sq[s]);
    return out;
}

int resolve_thread_count(int requested) {
    if (requested < 0) throw ConfigError("thread count must be nonnegative");
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

SuccessTable run_success_experiment(const SimConfig& config, int threads) {
    config.validate();
    const int N = config.N;
    const auto Nu = static_cast<std::size_t>(N);
    const std::size_t C = config.criteria.size();
    const int T = std::min(resolve_thread_count(threads), config.replicates);
    const Mat design = cosine_design(N);

    using Counts = std::vector<std::vector<std::int64_t>>;
    std::vector<Counts> partial(
        static_cast<std::size_t>(T),
        Counts(C, std::vector<std::int64_t>(Nu, 0)));

    auto worker = [&](int t, std::uint32_t rep_begin, std::uint32_t rep_end) {
        Counts& counts = partial[static_cast<std::size_t>(t)];
        ColumnSelector selector(config);
        Vec cum(Nu);
        for (std::uint32_t rep = rep_begin; rep < rep_end; ++rep) {
            const SimDraw draw = generate_draw(config, rep, design);
            for (std::size_t s = 0; s < Nu; ++s) {
                double acc = 0.0;
                for (std::size_t k = 0; k < Nu; ++k) {
                    acc += draw.B(k, s) * draw.B(k, s);
                    cum[k] = acc;
                }
                for (std::size_t c = 0; c < C; ++c) {
                    const int sel =
                        selector.select(config.criteria[c], cum, draw.z_sq[s]);
                    if (sel == static_cast<int>(s) + 1) ++counts[c][s];
                }
            }
        }
    };

    const auto R = static_cast<std::uint32_t>(config.replicates);
    if (T == 1) {
        worker(0, 0, R);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(T));
        for (int t = 0; t < T; ++t) {
            const auto lo = static_cast<std::uint32_t>(
                (static_cast<std::uint64_t>(R) * t) / T);
            const auto hi = static_cast<std::uint32_t>(
                (static_cast<std::uint64_t>(R) * (t + 1)) / T);
            pool.emplace_back(worker, t, lo, hi);
        }
        for (std::thread& th : pool) th.join();
    }

    SuccessTable table;
    table.config = config;
    table.successes.assign(C, std::vector<std::int64_t>(Nu, 0));
    for (int t = 0; t < T; ++t)
        for (std::size_t c = 0; c < C; ++c)
            for (std::size_t s = 0; s < Nu; ++s)
                table.successes[c][s] += partial[static_cast<std::size_t>(t)][c][s];

    table.rates = Mat(C, Nu);
    table.std_errors = Mat(C, Nu);
    for (std::size_t c = 0; c < C; ++c)
        for (std::size_t s = 0; s < Nu; ++s) {
            const double p =
                static_cast<double>(table.successes[c][s]) / config.replicates;
            table.rates(c, s) = p;
            table.std_errors(c, s) = std::sqrt(p * (1.0 - p) / config.replicates);
        }
    return table;
}

AnalyticEstimates analytic_estimates(double a, double b, int N, int S, int K) {
    if (N < 1 || K < 1 || K > N || S < 1 || S > N)
        throw ConfigError("analytic_estimates requires 1 <= K, S <= N");
    const double power = a * a + b * b;
    AnalyticEstimates est;
    est.E_F_sq = power * std::min(K, S) + K;
    est.E_z_sq = power * S + N;
    est.E_chi_sq = N - K + power * std::max(S - K, 0);
    est.E_beta_sq = (K <= S) ? a * a * S / K + b * b + 1.0 : 1.0;
    return est;
}

CurveTable criterion_curves(double a, double b, int N, int S, int K_lo, int K_hi) {
    if (K_lo < 1 || K_hi > N || K_lo > K_hi)
        throw ConfigError("criterion_curves requires 1 <= K_lo <= K_hi <= N");
    CurveTable t;
    for (int K = K_lo; K <= K_hi; ++K) {
        const AnalyticEstimates est = analytic_estimates(a, b, N, S, K);
        t.K.push_back(K);
        t.E_chi_sq.push_back(est.E_chi_sq);
        t.E_F_sq.push_back(est.E_F_sq);
        t.aic.push_back(aic(est.E_chi_sq, K));
        t.bic.push_back(bic(est.E_chi_sq, K, N));
        t.robust_large_k.push_back(robust_bic_large_k(est.E_chi_sq, est.E_F_sq, K));
    }
    return t;
}

} // namespace evidencia
