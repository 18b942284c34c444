#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "ulam/core_map.hpp"

namespace ulam {

// Total-degree homotopy H(x,t) = gamma*(1-t)*G(x) + t*F(x), where F is
// the fixed-point residual of the coefficients-of-roots map and G is the
// start system g_j(x) = x_j^j - c_j. Equation j of F has total degree j,
// so the Bezout number (and path count) is n!.

struct StartSystem {
    int n = 0;
    CVec constants;      // c_j, random unit modulus
    Cplx gamma;          // random unit modulus homotopy twist
    std::uint64_t seed = 0;

    // product of the equation degrees 1*2*...*n
    std::int64_t start_count() const { return factorial(n); }

    // Start point for a mixed-radix index: component j runs over the j
    // roots x_j = c_j^{1/j} * exp(2*pi*i*k_j/j), k_j in {0,...,j-1}.
    CVec start_point(std::int64_t index) const;
};

struct TrackerConfig {
    double step_init = 0.05;
    double step_min = 1e-6;
    double step_max = 0.2;
    double newton_tol = 1e-10;
    int max_corrector_iters = 5;
    int max_steps = 10000;
    double divergence_radius = 1e6;
    double endgame_start_t = 0.99;   // from here the step is capped at 10*step_min
    double refine_tol = 1e-12;
    std::uint64_t seed = 0;

    // post-processing tolerances (enumerate module)
    double dedup_radius = 1e-6;
    double real_tol = 1e-8;     // |Im| below this counts as real
    double trivial_tol = 1e-8;  // |x_n| below this means P(0) = 0
};

enum class PathStatus { Converged, Diverged, MaxSteps, SingularEndpoint };

struct PathResult {
    PathStatus status = PathStatus::MaxSteps;
    CVec endpoint;
    double residual_norm = 0.0;      // max-norm of F at the endpoint
    int steps_taken = 0;             // accepted and rejected attempts
    double condition_estimate = 0.0; // max-norm of the inverse Jacobian
    double t_final = 0.0;
};

// Deterministic start system for a given seed: gamma first, then
// c_1,...,c_n, all unit modulus.
StartSystem build_start(int n, std::uint64_t seed);

// H(x,t) and its x-Jacobian.
std::pair<CVec, Eigen::MatrixXcd> homotopy_eval(const CVec& x, double t,
                                                const StartSystem& sys);

// Optional per-step observer (t, x after each accepted step, including
// the start). Used by tests to watch the t sequence.
using PathObserver = std::function<void(double, const CVec&)>;

// Track one path from a start solution at t=0 to t=1: Euler tangent
// predictor plus Newton corrector with adaptive step control, then a
// final Newton refinement of the endpoint.
PathResult track_path(const CVec& start, const StartSystem& sys,
                      const TrackerConfig& cfg,
                      const PathObserver* observer = nullptr);

struct RefineResult {
    CVec x;
    double residual_norm = 0.0;
    double condition_estimate = 0.0;
    bool converged = false;
    bool singular = false;
    int iterations = 0;
};

// Newton iteration on the fixed-point residual until its max-norm drops
// below refine_tol or 50 iterations; also estimates the max-norm of the
// inverse Jacobian at the result via column solves.
RefineResult refine_endpoint(const CVec& x, const TrackerConfig& cfg);

// All n! paths, one PathResult per start index. The parallel version
// partitions paths across OpenMP threads; results are merged by start
// index and are identical to the serial reference for a fixed seed.
std::vector<PathResult> track_all(int n, const TrackerConfig& cfg,
                                  int threads = 0);

// Serial reference implementation, kept as the ground truth the parallel
// kernel is tested against.
std::vector<PathResult> track_all_serial(int n, const TrackerConfig& cfg);

}  // namespace ulam
