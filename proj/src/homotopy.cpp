#include "ulam/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ulam/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ulam {

namespace {

constexpr int kMaxDegreeTracked = 10;
constexpr int kRefineMaxIters = 50;

void validate_degree(int n, const char* who) {
    if (n < 1 || n > kMaxDegreeTracked)
        throw std::invalid_argument(std::string(who) +
                                    ": degree must be in [1,10]");
}

void validate_config(const TrackerConfig& cfg) {
    const bool ok = cfg.step_min > 0.0 && cfg.step_min <= cfg.step_init &&
                    cfg.step_init <= cfg.step_max && cfg.step_max <= 1.0 &&
                    cfg.newton_tol > 0.0 && cfg.max_corrector_iters >= 1 &&
                    cfg.max_steps >= 1 && cfg.divergence_radius > 0.0 &&
                    cfg.endgame_start_t > 0.0 && cfg.endgame_start_t < 1.0 &&
                    cfg.refine_tol > 0.0;
    if (!ok) throw std::invalid_argument("TrackerConfig: invalid settings");
}

double inf_norm(const CVec& v) { return max_norm(v); }

// Shared scratch for one path; avoids reallocating in the stepping loop.
struct Workspace {
    CVec F, G, H, sigma, deleted;
    Eigen::MatrixXcd J;
    Eigen::VectorXcd rhs, delta;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu;

    explicit Workspace(int n)
        : J(n, n), rhs(n), delta(n), lu(n) {}
};

// Start-system values g_j = x_j^j - c_j and diagonal derivative j*x_j^{j-1}.
void start_system_eval(const CVec& x, const StartSystem& sys, CVec& G,
                       CVec& Gdiag) {
    const int n = sys.n;
    G.resize(static_cast<std::size_t>(n));
    Gdiag.resize(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        const Cplx xj = x[static_cast<std::size_t>(j - 1)];
        Cplx p(1.0, 0.0);  // x_j^{j-1}
        for (int e = 1; e < j; ++e) p *= xj;
        G[static_cast<std::size_t>(j - 1)] =
            p * xj - sys.constants[static_cast<std::size_t>(j - 1)];
        Gdiag[static_cast<std::size_t>(j - 1)] = static_cast<double>(j) * p;
    }
}

// Fills ws.H with H(x,t) and ws.J with its x-Jacobian; ws.F and ws.G hold
// the target and start residuals for tangent right-hand sides.
void homotopy_eval_into(const CVec& x, double t, const StartSystem& sys,
                        Workspace& ws, CVec& Gdiag) {
    residual_into(x, ws.F, ws.sigma);
    jacobian_into(x, ws.J, ws.deleted, ws.sigma);
    start_system_eval(x, sys, ws.G, Gdiag);
    const Cplx g = sys.gamma * (1.0 - t);
    const std::size_t n = x.size();
    ws.H.resize(n);
    ws.J *= Cplx(t, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        ws.H[j] = g * ws.G[j] + t * ws.F[j];
        ws.J(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) +=
            g * Gdiag[j];
    }
}

// Relative size of the smallest LU pivot; a crude but deterministic
// singularity check for these small systems.
bool lu_is_singular(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu) {
    const auto& diag = lu.matrixLU().diagonal();
    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        const double a = std::abs(diag[i]);
        dmax = std::max(dmax, a);
        dmin = std::min(dmin, a);
    }
    return !(dmax > 0.0) || dmin <= 1e-14 * dmax;
}

// max-norm of the inverse via column solves on the factored Jacobian.
double inverse_inf_norm(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu, int n) {
    std::vector<double> row_sums(static_cast<std::size_t>(n), 0.0);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
    for (int k = 0; k < n; ++k) {
        e[k] = Cplx(1.0, 0.0);
        const Eigen::VectorXcd col = lu.solve(e);
        for (int i = 0; i < n; ++i)
            row_sums[static_cast<std::size_t>(i)] += std::abs(col[i]);
        e[k] = Cplx(0.0, 0.0);
    }
    return *std::max_element(row_sums.begin(), row_sums.end());
}

}  // namespace

CVec StartSystem::start_point(std::int64_t index) const {
    if (index < 0 || index >= start_count())
        throw std::invalid_argument("StartSystem::start_point: index out of range");
    CVec p(static_cast<std::size_t>(n));
    std::int64_t rem = index;
    for (int j = 1; j <= n; ++j) {
        const std::int64_t k = rem % j;
        rem /= j;
        const Cplx base = std::pow(constants[static_cast<std::size_t>(j - 1)],
                                   1.0 / static_cast<double>(j));
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(k) / j;
        p[static_cast<std::size_t>(j - 1)] =
            base * Cplx(std::cos(theta), std::sin(theta));
    }
    return p;
}

StartSystem build_start(int n, std::uint64_t seed) {
    validate_degree(n, "build_start");
    StartSystem sys;
    sys.n = n;
    sys.seed = seed;
    SeededRng rng(seed);
    sys.gamma = rng.unit_complex();
    sys.constants.resize(static_cast<std::size_t>(n));
    for (auto& c : sys.constants) c = rng.unit_complex();
    return sys;
}

std::pair<CVec, Eigen::MatrixXcd> homotopy_eval(const CVec& x, double t,
                                                const StartSystem& sys) {
    if (static_cast<int>(x.size()) != sys.n)
        throw std::invalid_argument("homotopy_eval: dimension mismatch");
    if (t < 0.0 || t > 1.0)
        throw std::invalid_argument("homotopy_eval: t must be in [0,1]");
    Workspace ws(sys.n);
    CVec gdiag;
    homotopy_eval_into(x, t, sys, ws, gdiag);
    return {ws.H, ws.J};
}

RefineResult refine_endpoint(const CVec& x, const TrackerConfig& cfg) {
    require_nonempty_finite(x, "refine_endpoint");
    const int n = static_cast<int>(x.size());

    RefineResult res;
    res.x = x;
    CVec F, sigma, deleted;
    Eigen::MatrixXcd J(n, n);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(n);
    Eigen::VectorXcd rhs(n);

    for (int iter = 0; iter <= kRefineMaxIters; ++iter) {
        residual_into(res.x, F, sigma);
        res.residual_norm = inf_norm(F);
        res.iterations = iter;
        if (res.residual_norm < cfg.refine_tol) {
            res.converged = true;
            break;
        }
        if (iter == kRefineMaxIters) break;

        jacobian_into(res.x, J, deleted, sigma);
        lu.compute(J);
        if (lu_is_singular(lu)) {
            res.singular = true;
            break;
        }
        for (int i = 0; i < n; ++i) rhs[i] = F[static_cast<std::size_t>(i)];
        const Eigen::VectorXcd delta = lu.solve(rhs);
        for (int i = 0; i < n; ++i) res.x[static_cast<std::size_t>(i)] -= delta[i];
        if (!all_finite(res.x)) {
            res.x = x;
            break;
        }
    }

    // condition estimate at the final point
    jacobian_into(res.x, J, deleted, sigma);
    lu.compute(J);
    if (lu_is_singular(lu)) {
        res.singular = true;
        res.condition_estimate = std::numeric_limits<double>::infinity();
    } else {
        res.condition_estimate = inverse_inf_norm(lu, n);
    }
    return res;
}

PathResult track_path(const CVec& start, const StartSystem& sys,
                      const TrackerConfig& cfg, const PathObserver* observer) {
    validate_config(cfg);
    if (static_cast<int>(start.size()) != sys.n)
        throw std::invalid_argument("track_path: dimension mismatch");
    const int n = sys.n;

    Workspace ws(n);
    CVec gdiag;
    CVec x = start;
    CVec x_try;
    double t = 0.0;
    double h = cfg.step_init;
    int successes = 0;

    PathResult result;
    if (observer && *observer) (*observer)(t, x);

    auto finish = [&](PathStatus status, const CVec& endpoint, double t_now) {
        result.status = status;
        result.endpoint = endpoint;
        result.t_final = t_now;
        CVec F, sigma;
        if (all_finite(endpoint)) {
            residual_into(endpoint, F, sigma);
            result.residual_norm = inf_norm(F);
        } else {
            result.residual_norm = std::numeric_limits<double>::infinity();
        }
        return result;
    };

    while (t < 1.0) {
        if (result.steps_taken >= cfg.max_steps)
            return finish(PathStatus::MaxSteps, x, t);
        ++result.steps_taken;

        // effective step: endgame cap, then land exactly on t = 1
        double h_step = h;
        if (t >= cfg.endgame_start_t)
            h_step = std::min(h_step, 10.0 * cfg.step_min);
        bool final_step = false;
        if (t + h_step >= 1.0 - 1e-15) {
            h_step = 1.0 - t;
            final_step = true;
        }
        const double t_new = final_step ? 1.0 : t + h_step;

        // Euler predictor: J_H(x,t) v = gamma*G - F  (= -dH/dt)
        homotopy_eval_into(x, t, sys, ws, gdiag);
        ws.lu.compute(ws.J);
        x_try = x;
        if (!lu_is_singular(ws.lu)) {
            for (int i = 0; i < n; ++i)
                ws.rhs[i] = sys.gamma * ws.G[static_cast<std::size_t>(i)] -
                            ws.F[static_cast<std::size_t>(i)];
            ws.delta = ws.lu.solve(ws.rhs);
            for (int i = 0; i < n; ++i)
                x_try[static_cast<std::size_t>(i)] += h_step * ws.delta[i];
        }

        // Newton corrector on H(., t_new)
        bool corrected = false;
        bool diverged = false;
        double r_prev = std::numeric_limits<double>::infinity();
        for (int it = 0;; ++it) {
            if (!all_finite(x_try) || max_norm(x_try) > cfg.divergence_radius) {
                diverged = true;
                break;
            }
            homotopy_eval_into(x_try, t_new, sys, ws, gdiag);
            const double r = inf_norm(ws.H);
            if (!std::isfinite(r)) break;
            if (r <= cfg.newton_tol) {
                corrected = true;
                break;
            }
            if (it >= cfg.max_corrector_iters) break;
            if (r >= r_prev) break;  // non-decreasing residual
            r_prev = r;
            ws.lu.compute(ws.J);
            if (lu_is_singular(ws.lu)) break;
            for (int i = 0; i < n; ++i)
                ws.rhs[i] = ws.H[static_cast<std::size_t>(i)];
            ws.delta = ws.lu.solve(ws.rhs);
            for (int i = 0; i < n; ++i)
                x_try[static_cast<std::size_t>(i)] -= ws.delta[i];
        }

        if (diverged)
            return finish(PathStatus::Diverged, x_try, t_new);

        if (corrected) {
            x = x_try;
            t = t_new;
            if (observer && *observer) (*observer)(t, x);
            if (++successes >= 3) {
                h = std::min(h * 1.5, cfg.step_max);
                successes = 0;
            }
        } else {
            successes = 0;
            h = std::max(h_step * 0.5, cfg.step_min);
        }
    }

    // endpoint refinement at t = 1
    const RefineResult ref = refine_endpoint(x, cfg);
    result.endpoint = ref.x;
    result.residual_norm = ref.residual_norm;
    result.condition_estimate = ref.condition_estimate;
    result.t_final = t;
    result.status = ref.converged ? PathStatus::Converged
                                  : PathStatus::SingularEndpoint;
    return result;
}

std::vector<PathResult> track_all_serial(int n, const TrackerConfig& cfg) {
    validate_degree(n, "track_all_serial");
    const StartSystem sys = build_start(n, cfg.seed);
    const std::int64_t m = sys.start_count();
    std::vector<PathResult> results(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i)
        results[static_cast<std::size_t>(i)] =
            track_path(sys.start_point(i), sys, cfg);
    return results;
}

std::vector<PathResult> track_all(int n, const TrackerConfig& cfg, int threads) {
    validate_degree(n, "track_all");
    const StartSystem sys = build_start(n, cfg.seed);
    const std::int64_t m = sys.start_count();
    std::vector<PathResult> results(static_cast<std::size_t>(m));
#ifdef _OPENMP
    const int requested = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(requested)
    for (std::int64_t i = 0; i < m; ++i)
        results[static_cast<std::size_t>(i)] =
            track_path(sys.start_point(i), sys, cfg);
#else
    (void)threads;
    for (std::int64_t i = 0; i < m; ++i)
        results[static_cast<std::size_t>(i)] =
            track_path(sys.start_point(i), sys, cfg);
#endif
    return results;
}

}  // namespace ulam
