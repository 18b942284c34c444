#pragma once

#include <Eigen/Dense>
#include <utility>

#include "ulam/cvec.hpp"

namespace ulam {

// The coefficients-of-roots map T_n : C^n -> C^n,
//   T_n(x)_j = (-1)^j sigma_j(x),
// i.e. T_n(x) is the coefficient vector of prod_i (z - x_i). A tuple with
// T_n(x) = x is a fixed point; the corresponding monic polynomial has its
// own coefficient vector as its root tuple (an Ulam polynomial). This
// module defines T_n, the fixed-point residual F(x) = T_n(x) - x, its
// analytic Jacobian, and related pure functions. Everything here is
// stateless and safe to call concurrently.

// Elementary symmetric functions (sigma_1,...,sigma_n) of the entries,
// computed by multiplying out prod (z - x_i) one factor at a time.
CVec elem_sym(const CVec& x);

// T_n(x): component j is (-1)^j sigma_j(x).
CVec ulam_map(const CVec& x);

// F(x) = T_n(x) - x; zero exactly at the fixed points of T_n.
CVec residual(const CVec& x);

// Analytic Jacobian of F: entry (j,k) = (-1)^j sigma_{j-1}(x without x_k)
// - delta_{jk}, with sigma_0 = 1.
Eigen::MatrixXcd jacobian(const CVec& x);

// (max-norm of residual(x) <= tol, that norm). tol must be positive.
std::pair<bool, double> verify_fixed_point(const CVec& x, double tol);

// f(z, x) = (z^n + x_1 z^{n-1} + ... + x_n) - prod (z - x_i). Vanishes
// identically in z exactly when x is a fixed point, in which case the
// line z -> (z, x) lies inside the hypersurface f = 0.
Cplx hypersurface_f(Cplx z, const CVec& x);

// (x_1,...,x_n,0): appends the root 0, which multiplies the polynomial by
// z and shifts coefficients. Preserves the fixed-point property.
CVec pad_zero(const CVec& x);

// T_n(x) + x; zero exactly when the roots equal the opposite of the
// coefficients. At n=1 this vanishes for every x (z - alpha always
// qualifies), so that variant admits infinite families.
CVec opposite_residual(const CVec& x);

struct Orbit {
    std::vector<CVec> points;  // x0, T(x0), T^2(x0), ...
    bool diverged = false;     // truncated once an iterate left the radius
};

inline constexpr double kOrbitDivergenceRadius = 1e8;

// Forward orbit [x0, T(x0), ..., T^k(x0)]; stops early with the flag set
// if an iterate exceeds divergence_radius in max-norm or overflows.
Orbit iterate_map(const CVec& x0, int k,
                  double divergence_radius = kOrbitDivergenceRadius);

// The n-dimensional fixed-point system F(x) = T_n(x) - x.
struct UlamSystem {
    int n = 0;

    explicit UlamSystem(int degree);

    CVec map(const CVec& x) const;
    CVec residual(const CVec& x) const;
    Eigen::MatrixXcd jacobian(const CVec& x) const;
};

// Allocation-free variants for hot loops. Buffers are resized as needed.
void elem_sym_into(const CVec& x, CVec& sigma);
void residual_into(const CVec& x, CVec& out, CVec& sigma_buf);
void jacobian_into(const CVec& x, Eigen::MatrixXcd& J, CVec& deleted_buf,
                   CVec& sigma_buf);

}  // namespace ulam
