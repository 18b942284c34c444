#include "ulam/core_map.hpp"

#include <algorithm>

namespace ulam {

void elem_sym_into(const CVec& x, CVec& sigma) {
    const std::size_t n = x.size();
    sigma.assign(n, Cplx(0.0, 0.0));
    // After processing x_k the prefix sigma[0..k) holds the elementary
    // symmetric functions of (x_1,...,x_k). Only additions and
    // multiplications, no divisions.
    for (std::size_t k = 0; k < n; ++k) {
        const Cplx xk = x[k];
        for (std::size_t j = std::min(k, n - 1); j >= 1; --j)
            sigma[j] += xk * sigma[j - 1];
        sigma[0] += xk;
    }
}

CVec elem_sym(const CVec& x) {
    require_nonempty_finite(x, "elem_sym");
    CVec sigma;
    elem_sym_into(x, sigma);
    return sigma;
}

CVec ulam_map(const CVec& x) {
    CVec t = elem_sym(x);
    for (std::size_t j = 0; j < t.size(); ++j)
        if (j % 2 == 0) t[j] = -t[j];  // odd 1-based index
    return t;
}

void residual_into(const CVec& x, CVec& out, CVec& sigma_buf) {
    elem_sym_into(x, sigma_buf);
    out.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const Cplx tj = (j % 2 == 0) ? -sigma_buf[j] : sigma_buf[j];
        out[j] = tj - x[j];
    }
}

CVec residual(const CVec& x) {
    require_nonempty_finite(x, "residual");
    CVec out, sigma;
    residual_into(x, out, sigma);
    return out;
}

void jacobian_into(const CVec& x, Eigen::MatrixXcd& J, CVec& deleted_buf,
                   CVec& sigma_buf) {
    const std::size_t n = x.size();
    J.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    deleted_buf.resize(n > 0 ? n - 1 : 0);
    for (std::size_t k = 0; k < n; ++k) {
        // sigma_{j-1} of the tuple with entry k removed, by re-expansion.
        // Stable when entries nearly coincide, unlike dividing the full
        // product by (z - x_k).
        std::size_t m = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (i != k) deleted_buf[m++] = x[i];
        elem_sym_into(deleted_buf, sigma_buf);
        for (std::size_t j = 0; j < n; ++j) {
            const Cplx s = (j == 0) ? Cplx(1.0, 0.0) : sigma_buf[j - 1];
            Cplx e = (j % 2 == 0) ? -s : s;
            if (j == k) e -= 1.0;
            J(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = e;
        }
    }
}

Eigen::MatrixXcd jacobian(const CVec& x) {
    require_nonempty_finite(x, "jacobian");
    Eigen::MatrixXcd J;
    CVec deleted, sigma;
    jacobian_into(x, J, deleted, sigma);
    return J;
}

std::pair<bool, double> verify_fixed_point(const CVec& x, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("verify_fixed_point: tol must be positive");
    const double r = max_norm(residual(x));
    return {r <= tol, r};
}

Cplx hypersurface_f(Cplx z, const CVec& x) {
    require_nonempty_finite(x, "hypersurface_f");
    if (!is_finite(z))
        throw std::invalid_argument("hypersurface_f: z must be finite");
    Cplx lhs(1.0, 0.0);  // Horner on z^n + x_1 z^{n-1} + ... + x_n
    for (const Cplx& xi : x) lhs = lhs * z + xi;
    Cplx rhs(1.0, 0.0);
    for (const Cplx& xi : x) rhs *= (z - xi);
    return lhs - rhs;
}

CVec pad_zero(const CVec& x) {
    require_nonempty_finite(x, "pad_zero");
    CVec y = x;
    y.push_back(Cplx(0.0, 0.0));
    return y;
}

CVec opposite_residual(const CVec& x) {
    require_nonempty_finite(x, "opposite_residual");
    CVec t = ulam_map(x);
    for (std::size_t j = 0; j < t.size(); ++j) t[j] += x[j];
    return t;
}

Orbit iterate_map(const CVec& x0, int k, double divergence_radius) {
    require_nonempty_finite(x0, "iterate_map");
    if (k < 0) throw std::invalid_argument("iterate_map: k must be >= 0");
    Orbit orbit;
    orbit.points.reserve(static_cast<std::size_t>(k) + 1);
    orbit.points.push_back(x0);
    for (int step = 0; step < k; ++step) {
        CVec next = ulam_map(orbit.points.back());
        const bool blown = !all_finite(next) || max_norm(next) > divergence_radius;
        orbit.points.push_back(std::move(next));
        if (blown) {
            orbit.diverged = true;
            break;
        }
    }
    return orbit;
}

UlamSystem::UlamSystem(int degree) : n(degree) {
    if (degree < 1)
        throw std::invalid_argument("UlamSystem: degree must be >= 1");
}

CVec UlamSystem::map(const CVec& x) const {
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("UlamSystem::map: dimension mismatch");
    return ulam_map(x);
}

CVec UlamSystem::residual(const CVec& x) const {
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("UlamSystem::residual: dimension mismatch");
    return ulam::residual(x);
}

Eigen::MatrixXcd UlamSystem::jacobian(const CVec& x) const {
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("UlamSystem::jacobian: dimension mismatch");
    return ulam::jacobian(x);
}

}  // namespace ulam
