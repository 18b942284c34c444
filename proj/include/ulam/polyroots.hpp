#pragma once

#include "ulam/cvec.hpp"

namespace ulam {

// Monic univariate polynomial z^n + c_1 z^{n-1} + ... + c_n. The leading
// coefficient is implicit; coeffs[j-1] multiplies z^{n-j}.
struct MonicPoly {
    CVec coeffs;

    int degree() const { return static_cast<int>(coeffs.size()); }
};

struct RootFindConfig {
    int max_iterations = 1000;
    double convergence_tol = 1e-13;
    double initial_radius_factor = 1.0;
};

// Matching tolerance used when comparing a root multiset against a
// coefficient tuple. Looser than the root-finder tolerance because
// multiple roots are only resolvable to roughly sqrt(machine epsilon).
inline constexpr double kRootsMatchTol = 1e-6;

struct HornerResult {
    Cplx value;
    Cplx derivative;
};

// P(z) and P'(z) in a single Horner pass.
HornerResult eval_horner(const MonicPoly& p, Cplx z);

struct RootFindResult {
    CVec roots;           // best iterate, order unspecified
    bool converged = false;
    int iterations = 0;
};

// All n roots (multiple roots as nearby clusters) by Ehrlich-Aberth
// simultaneous iteration, started on a circle of radius
// initial_radius_factor * (1 + max |coeff|) with equally spaced,
// phase-perturbed angles. Stops when the largest update falls below
// convergence_tol or every residual reaches its evaluation rounding
// floor; a result with converged=false carries the best iterate.
RootFindResult roots_aberth(const MonicPoly& p, const RootFindConfig& cfg = {});

// True iff some perfect matching pairs each a_i with a distinct b_j at
// distance <= tol. Exact decision via augmenting paths on the
// tol-thresholded bipartite graph; greedy pairing would be wrong here.
bool multiset_match(const CVec& a, const CVec& b, double tol);

// Second, independent Ulam test: find the roots of the monic polynomial
// with coefficient vector c and compare them against c as a multiset.
// Equivalent to the residual test (substitute x := c). Throws
// std::runtime_error if the root finder does not converge.
bool verify_ulam_by_roots(const CVec& c, const RootFindConfig& cfg = {},
                          double tol = kRootsMatchTol);

}  // namespace ulam
