#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "ulam/enumerate.hpp"

namespace ulam {

using Rational = boost::multiprecision::cpp_rational;

// Exact rational candidate for a fixed point. cpp_rational keeps entries
// in lowest terms with positive denominators.
struct RationalTuple {
    std::vector<Rational> entries;
};

// Parses "p/q", an integer, or a finite decimal ("-1.25") exactly.
Rational parse_rational(const std::string& text);

// Checks (-1)^j sigma_j(x) = x_j for all j over exact rationals, zero
// tolerance. No floating point is involved anywhere in this path.
bool exact_verify_rational(const RationalTuple& x);

// Probabilistic completeness check: Newton refinement from num_starts
// random tuples in the box of half-width box_radius, deduplicated and
// canonicalized like the homotopy output. No completeness guarantee;
// used for agreement testing against the path tracker.
SolutionSet multistart_newton(int n, int num_starts, double box_radius,
                              std::uint64_t seed, const TrackerConfig& cfg = {},
                              int threads = 0);

// Serial reference for the parallel kernel above.
SolutionSet multistart_newton_serial(int n, int num_starts, double box_radius,
                                     std::uint64_t seed,
                                     const TrackerConfig& cfg = {});

// Complete degree-3 solution set by case analysis. Equation 3 factors as
// x3*(1 + x1*x2) = 0. The branch x3 = 0 reduces to the degree-2 system
// (origin and (1,-2), zero-padded). On the branch x1*x2 = -1,
// substituting x2 = -1/x1 and x3 = -2*x1 - x2 into equation 2 gives
//   2*x1^4 - 2*x1^2 - x1 + 1 = 0,
// whose rational roots (found exactly among the candidates allowed by the
// rational root theorem) and numeric roots (after exact deflation) yield
// the remaining four solutions. Every member is validated, exactly for
// rational tuples and to residual 1e-12 otherwise; a validation failure
// throws std::runtime_error.
SolutionSet oracle_u3();

}  // namespace ulam
