#include "ulam/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ulam/polyroots.hpp"
#include "ulam/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ulam {

namespace {

using BigInt = boost::multiprecision::cpp_int;

SolutionSet collect_solutions(int n, const std::vector<CVec>& converged,
                              const PathStats& stats, std::uint64_t seed,
                              const TrackerConfig& cfg) {
    SolutionSet set;
    set.degree = n;
    set.seed = seed;
    set.config = cfg;
    set.path_stats = stats;

    const auto clusters = dedup_cluster(converged, cfg.dedup_radius);
    for (const auto& [mean, count] : clusters) {
        const RefineResult ref = refine_endpoint(mean, cfg);
        Solution s;
        s.x = ref.converged ? ref.x : mean;
        const auto [ok, rnorm] = verify_fixed_point(s.x, kVerifyResidualTol);
        if (!ok) {
            set.warning = true;
            continue;
        }
        s.residual_norm = rnorm;
        s.condition_estimate = ref.condition_estimate;
        s.cluster_size = count;
        double max_im = 0.0;
        for (const Cplx& z : s.x) max_im = std::max(max_im, std::abs(z.imag()));
        s.is_real = max_im <= cfg.real_tol;
        s.is_trivial = std::abs(s.x.back()) <= cfg.trivial_tol;
        set.solutions.push_back(std::move(s));
    }
    set.solutions = canonicalize(std::move(set.solutions));
    return set;
}

SolutionSet multistart_impl(int n, int num_starts, double box_radius,
                            std::uint64_t seed, const TrackerConfig& cfg,
                            int threads, bool parallel) {
    if (n < 1)
        throw std::invalid_argument("multistart_newton: degree must be >= 1");
    if (num_starts < 1)
        throw std::invalid_argument("multistart_newton: num_starts must be >= 1");
    if (!(box_radius > 0.0))
        throw std::invalid_argument("multistart_newton: box_radius must be positive");

    // starts drawn up front so the parallel loop stays deterministic
    SeededRng rng(seed);
    std::vector<CVec> starts(static_cast<std::size_t>(num_starts));
    for (auto& s : starts) s = rng.box_tuple(n, box_radius);

    std::vector<RefineResult> refined(static_cast<std::size_t>(num_starts));
#ifdef _OPENMP
    if (parallel) {
        const int requested = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(requested)
        for (int i = 0; i < num_starts; ++i)
            refined[static_cast<std::size_t>(i)] =
                refine_endpoint(starts[static_cast<std::size_t>(i)], cfg);
    } else {
        for (int i = 0; i < num_starts; ++i)
            refined[static_cast<std::size_t>(i)] =
                refine_endpoint(starts[static_cast<std::size_t>(i)], cfg);
    }
#else
    (void)threads;
    (void)parallel;
    for (int i = 0; i < num_starts; ++i)
        refined[static_cast<std::size_t>(i)] =
            refine_endpoint(starts[static_cast<std::size_t>(i)], cfg);
#endif

    PathStats stats;
    stats.total = num_starts;
    std::vector<CVec> converged;
    for (const RefineResult& r : refined) {
        if (r.converged && max_norm(r.x) <= cfg.divergence_radius) {
            stats.converged++;
            converged.push_back(r.x);
        } else if (r.singular) {
            stats.singular++;
        } else if (!all_finite(r.x) || max_norm(r.x) > cfg.divergence_radius) {
            stats.diverged++;
        } else {
            stats.max_steps++;  // ran out of Newton iterations
        }
    }
    return collect_solutions(n, converged, stats, seed, cfg);
}

// sigma_1..sigma_n over exact rationals, incremental product
std::vector<Rational> elem_sym_exact(const std::vector<Rational>& x) {
    const std::size_t n = x.size();
    std::vector<Rational> sigma(n, Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = std::min(k, n - 1); j >= 1; --j)
            sigma[j] += x[k] * sigma[j - 1];
        sigma[0] += x[k];
    }
    return sigma;
}

double to_double(const Rational& r) { return static_cast<double>(r); }

Solution make_exact_solution(const std::vector<Rational>& entries,
                             const TrackerConfig& cfg) {
    Solution s;
    s.x.reserve(entries.size());
    for (const Rational& r : entries) s.x.push_back(Cplx(to_double(r), 0.0));
    const auto [ok, rnorm] = verify_fixed_point(s.x, 1e-12);
    if (!ok)
        throw std::runtime_error("oracle_u3: rational solution failed the residual check");
    s.residual_norm = rnorm;
    const RefineResult ref = refine_endpoint(s.x, cfg);
    s.condition_estimate = ref.condition_estimate;
    s.cluster_size = 1;
    s.is_real = true;
    s.is_trivial = std::abs(s.x.back()) <= cfg.trivial_tol;
    return s;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw std::invalid_argument("parse_rational: empty input");

    const auto slash = t.find('/');
    if (slash != std::string::npos) {
        const BigInt num(t.substr(0, slash));
        const BigInt den(t.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(num, den);
    }
    const auto dot = t.find('.');
    if (dot != std::string::npos) {
        std::string digits = t.substr(0, dot) + t.substr(dot + 1);
        const std::size_t frac_len = t.size() - dot - 1;
        if (frac_len == 0 || digits.empty())
            throw std::invalid_argument("parse_rational: malformed decimal");
        BigInt den(1);
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(BigInt(digits), den);
    }
    return Rational(BigInt(t));
}

bool exact_verify_rational(const RationalTuple& x) {
    if (x.entries.empty())
        throw std::invalid_argument("exact_verify_rational: tuple must have at least one entry");
    const std::vector<Rational> sigma = elem_sym_exact(x.entries);
    for (std::size_t j = 0; j < x.entries.size(); ++j) {
        const Rational t = (j % 2 == 0) ? Rational(-sigma[j]) : sigma[j];
        if (t != x.entries[j]) return false;
    }
    return true;
}

SolutionSet multistart_newton(int n, int num_starts, double box_radius,
                              std::uint64_t seed, const TrackerConfig& cfg,
                              int threads) {
    return multistart_impl(n, num_starts, box_radius, seed, cfg, threads, true);
}

SolutionSet multistart_newton_serial(int n, int num_starts, double box_radius,
                                     std::uint64_t seed,
                                     const TrackerConfig& cfg) {
    return multistart_impl(n, num_starts, box_radius, seed, cfg, 1, false);
}

SolutionSet oracle_u3() {
    const TrackerConfig cfg;
    std::vector<Solution> sols;

    // Branch x3 = 0: x2 = -2*x1 and x2*(x1 - 1) = 0, i.e. the degree-2
    // solutions with a zero appended.
    const std::vector<std::vector<Rational>> branch_a = {
        {Rational(0), Rational(0), Rational(0)},
        {Rational(1), Rational(-2), Rational(0)},
    };
    for (const auto& entries : branch_a) {
        if (!exact_verify_rational(RationalTuple{entries}))
            throw std::runtime_error("oracle_u3: branch x3=0 candidate is not a fixed point");
        sols.push_back(make_exact_solution(entries, cfg));
    }

    // Branch x1*x2 = -1: quartic q(x1) = 2*x1^4 - 2*x1^2 - x1 + 1.
    // Rational roots must be among +-1, +-1/2 (rational root theorem).
    const Rational two(2), zero(0);
    auto quartic_exact = [&](const Rational& v) {
        return two * v * v * v * v - two * v * v - v + Rational(1);
    };
    std::vector<Rational> rational_roots;
    for (const Rational& cand :
         {Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2)}) {
        if (quartic_exact(cand) == zero) rational_roots.push_back(cand);
    }
    if (rational_roots.size() != 1 || rational_roots[0] != Rational(1))
        throw std::runtime_error("oracle_u3: unexpected rational quartic roots");

    for (const Rational& r : rational_roots) {
        const Rational x1 = r;
        const Rational x2 = Rational(-1) / x1;
        const Rational x3 = Rational(-2) * x1 - x2;
        const std::vector<Rational> entries = {x1, x2, x3};
        if (!exact_verify_rational(RationalTuple{entries}))
            throw std::runtime_error("oracle_u3: rational quartic root is not a fixed point");
        sols.push_back(make_exact_solution(entries, cfg));
    }

    // Exact deflation of the quartic by (x1 - 1) leaves 2*x1^3 + 2*x1^2 - 1
    // (synthetic division of 2,0,-2,-1,1 at 1: 2,2,0,-1). Monic form:
    // x^3 + x^2 - 1/2.
    const MonicPoly cubic{CVec{Cplx(1.0, 0.0), Cplx(0.0, 0.0), Cplx(-0.5, 0.0)}};
    const RootFindResult rr = roots_aberth(cubic);
    if (!rr.converged)
        throw std::runtime_error("oracle_u3: cubic root finding did not converge");

    // Polish each root on the monic quartic x^4 - x^2 - x/2 + 1/2 before
    // building the tuple.
    const MonicPoly quartic{CVec{Cplx(0.0, 0.0), Cplx(-1.0, 0.0),
                                 Cplx(-0.5, 0.0), Cplx(0.5, 0.0)}};
    for (Cplx x1 : rr.roots) {
        for (int it = 0; it < 40; ++it) {
            const HornerResult h = eval_horner(quartic, x1);
            if (std::abs(h.value) < 1e-15 || h.derivative == Cplx(0.0, 0.0)) break;
            x1 -= h.value / h.derivative;
        }
        const Cplx x2 = -1.0 / x1;
        const Cplx x3 = -2.0 * x1 - x2;
        Solution s;
        s.x = {x1, x2, x3};
        const auto [ok, rnorm] = verify_fixed_point(s.x, 1e-12);
        if (!ok)
            throw std::runtime_error("oracle_u3: quartic branch root failed the residual check");
        s.residual_norm = rnorm;
        const RefineResult ref = refine_endpoint(s.x, cfg);
        s.condition_estimate = ref.condition_estimate;
        s.cluster_size = 1;
        double max_im = 0.0;
        for (const Cplx& z : s.x) max_im = std::max(max_im, std::abs(z.imag()));
        s.is_real = max_im <= cfg.real_tol;
        s.is_trivial = std::abs(s.x.back()) <= cfg.trivial_tol;
        sols.push_back(std::move(s));
    }

    SolutionSet set;
    set.degree = 3;
    set.config = cfg;
    set.solutions = canonicalize(std::move(sols));
    set.path_stats.total = 0;  // not produced by path tracking
    return set;
}

}  // namespace ulam
