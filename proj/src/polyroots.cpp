#include "ulam/polyroots.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace ulam {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxDegree = 32;

void validate_poly(const MonicPoly& p, const char* who) {
    if (p.coeffs.empty())
        throw std::invalid_argument(std::string(who) + ": degree must be >= 1");
    if (p.degree() > kMaxDegree)
        throw std::invalid_argument(std::string(who) + ": degree > 32 unsupported");
    if (!all_finite(p.coeffs))
        throw std::invalid_argument(std::string(who) + ": non-finite coefficient");
}

// Horner pass that also accumulates a running magnitude bound, used to
// decide when |P(z)| has hit its evaluation rounding floor.
void horner_with_bound(const MonicPoly& p, Cplx z, Cplx& value, Cplx& deriv,
                       double& bound) {
    const double az = std::abs(z);
    Cplx v(1.0, 0.0);
    Cplx d(0.0, 0.0);
    double b = 1.0;
    for (const Cplx& c : p.coeffs) {
        d = d * z + v;
        v = v * z + c;
        b = b * az + std::abs(c);
    }
    value = v;
    deriv = d;
    bound = b;
}

}  // namespace

HornerResult eval_horner(const MonicPoly& p, Cplx z) {
    validate_poly(p, "eval_horner");
    if (!is_finite(z))
        throw std::invalid_argument("eval_horner: z must be finite");
    Cplx v(1.0, 0.0);
    Cplx d(0.0, 0.0);
    for (const Cplx& c : p.coeffs) {
        d = d * z + v;
        v = v * z + c;
    }
    return {v, d};
}

RootFindResult roots_aberth(const MonicPoly& p, const RootFindConfig& cfg) {
    validate_poly(p, "roots_aberth");
    if (cfg.max_iterations < 1 || !(cfg.convergence_tol > 0.0))
        throw std::invalid_argument("roots_aberth: bad config");

    const int n = p.degree();
    const double radius =
        cfg.initial_radius_factor * (1.0 + max_norm(p.coeffs));

    RootFindResult result;
    result.roots.resize(static_cast<std::size_t>(n));
    // Equally spaced starting angles with a fixed offset so the initial
    // configuration is not symmetric about the real axis.
    for (int i = 0; i < n; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / n + 0.4;
        result.roots[static_cast<std::size_t>(i)] =
            radius * Cplx(std::cos(theta), std::sin(theta));
    }

    CVec& z = result.roots;
    std::vector<bool> settled(static_cast<std::size_t>(n), false);

    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        result.iterations = iter;
        double max_update = 0.0;
        bool all_settled = true;

        for (int i = 0; i < n; ++i) {
            const std::size_t ii = static_cast<std::size_t>(i);
            if (settled[ii]) continue;

            Cplx v, d;
            double bound;
            horner_with_bound(p, z[ii], v, d, bound);

            // |P(z_i)| indistinguishable from zero at this precision:
            // multiple roots stagnate here rather than reaching the
            // update tolerance.
            if (std::abs(v) <= 4.0 * n * kEps * bound) {
                settled[ii] = true;
                continue;
            }
            all_settled = false;

            if (d == Cplx(0.0, 0.0)) {
                // exact critical point; nudge off it
                z[ii] += Cplx(1e-6, 1e-6) * (1.0 + std::abs(z[ii]));
                max_update = std::max(max_update, 1.0);
                continue;
            }

            const Cplx w = v / d;  // Newton correction
            Cplx s(0.0, 0.0);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Cplx diff = z[ii] - z[static_cast<std::size_t>(j)];
                if (diff == Cplx(0.0, 0.0))
                    diff = Cplx(1e-12, 1e-12) * (1.0 + std::abs(z[ii]));
                s += 1.0 / diff;
            }
            const Cplx denom = 1.0 - w * s;
            const Cplx dz = (denom == Cplx(0.0, 0.0)) ? w : w / denom;
            z[ii] -= dz;
            max_update = std::max(max_update, std::abs(dz));
        }

        if (all_settled || max_update < cfg.convergence_tol) {
            result.converged = true;
            return result;
        }
    }
    return result;  // converged stays false; best iterate kept
}

bool multiset_match(const CVec& a, const CVec& b, double tol) {
    if (a.size() != b.size())
        throw std::invalid_argument("multiset_match: length mismatch");
    if (!(tol > 0.0))
        throw std::invalid_argument("multiset_match: tol must be positive");

    const int n = static_cast<int>(a.size());
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(a[static_cast<std::size_t>(i)] -
                         b[static_cast<std::size_t>(j)]) <= tol)
                adj[static_cast<std::size_t>(i)].push_back(j);

    std::vector<int> match_right(static_cast<std::size_t>(n), -1);
    std::vector<bool> visited;

    // Kuhn's augmenting paths: exact perfect-matching decision.
    auto augment = [&](auto&& self, int i) -> bool {
        for (int j : adj[static_cast<std::size_t>(i)]) {
            if (visited[static_cast<std::size_t>(j)]) continue;
            visited[static_cast<std::size_t>(j)] = true;
            if (match_right[static_cast<std::size_t>(j)] < 0 ||
                self(self, match_right[static_cast<std::size_t>(j)])) {
                match_right[static_cast<std::size_t>(j)] = i;
                return true;
            }
        }
        return false;
    };

    for (int i = 0; i < n; ++i) {
        visited.assign(static_cast<std::size_t>(n), false);
        if (!augment(augment, i)) return false;
    }
    return true;
}

bool verify_ulam_by_roots(const CVec& c, const RootFindConfig& cfg, double tol) {
    require_nonempty_finite(c, "verify_ulam_by_roots");
    const RootFindResult rr = roots_aberth(MonicPoly{c}, cfg);
    if (!rr.converged)
        throw std::runtime_error("verify_ulam_by_roots: root finder did not converge");
    return multiset_match(rr.roots, c, tol);
}

}  // namespace ulam
