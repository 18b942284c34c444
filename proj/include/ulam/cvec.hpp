#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ulam {

using Cplx = std::complex<double>;

// Ordered tuple of complex numbers. Serves both as a root tuple
// (x_1,...,x_n) and as the coefficient vector of a monic polynomial,
// coefficient of z^{n-j} at index j-1. The degree is the length.
using CVec = std::vector<Cplx>;

inline bool is_finite(Cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline bool all_finite(const CVec& x) {
    for (const Cplx& z : x)
        if (!is_finite(z)) return false;
    return true;
}

inline double max_norm(const CVec& x) {
    double m = 0.0;
    for (const Cplx& z : x) m = std::max(m, std::abs(z));
    return m;
}

inline double dist_inf(const CVec& a, const CVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dist_inf: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline CVec conjugate(const CVec& x) {
    CVec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::conj(x[i]);
    return y;
}

inline std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

inline void require_nonempty_finite(const CVec& x, const char* who) {
    if (x.empty())
        throw std::invalid_argument(std::string(who) + ": tuple must have at least one entry");
    if (!all_finite(x))
        throw std::invalid_argument(std::string(who) + ": tuple has a non-finite entry");
}

}  // namespace ulam
