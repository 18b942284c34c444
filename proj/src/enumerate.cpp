#include "ulam/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ulam/polyroots.hpp"

namespace ulam {

namespace {

double round9(double v) { return std::round(v * 1e9) / 1e9; }

std::vector<double> sort_key(const CVec& x) {
    std::vector<double> key;
    key.reserve(2 * x.size());
    for (const Cplx& z : x) {
        key.push_back(round9(z.real()));
        key.push_back(round9(z.imag()));
    }
    return key;
}

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int m) : parent(static_cast<std::size_t>(m)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

}  // namespace

std::vector<std::pair<CVec, int>> dedup_cluster(const std::vector<CVec>& points,
                                                double radius) {
    if (!(radius > 0.0))
        throw std::invalid_argument("dedup_cluster: radius must be positive");
    const int m = static_cast<int>(points.size());
    if (m == 0) return {};

    UnionFind uf(m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (dist_inf(points[static_cast<std::size_t>(i)],
                         points[static_cast<std::size_t>(j)]) <= radius)
                uf.unite(i, j);

    // clusters keyed by their smallest member index, in that order
    std::vector<int> roots;
    std::vector<std::vector<int>> members;
    std::vector<int> slot(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
        const int r = uf.find(i);
        if (slot[static_cast<std::size_t>(r)] < 0) {
            slot[static_cast<std::size_t>(r)] = static_cast<int>(roots.size());
            roots.push_back(r);
            members.emplace_back();
        }
        members[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])]
            .push_back(i);
    }

    std::vector<std::pair<CVec, int>> out;
    out.reserve(roots.size());
    for (const auto& cluster : members) {
        const std::size_t dim = points[static_cast<std::size_t>(cluster[0])].size();
        CVec mean(dim, Cplx(0.0, 0.0));
        for (int idx : cluster)
            for (std::size_t c = 0; c < dim; ++c)
                mean[c] += points[static_cast<std::size_t>(idx)][c];
        for (std::size_t c = 0; c < dim; ++c)
            mean[c] /= static_cast<double>(cluster.size());
        out.emplace_back(std::move(mean), static_cast<int>(cluster.size()));
    }
    return out;
}

std::vector<Solution> canonicalize(std::vector<Solution> solutions) {
    std::stable_sort(solutions.begin(), solutions.end(),
                     [](const Solution& a, const Solution& b) {
                         return sort_key(a.x) < sort_key(b.x);
                     });
    return solutions;
}

SolutionSet enumerate_from_paths(int n, const std::vector<PathResult>& paths,
                                 const TrackerConfig& cfg) {
    SolutionSet set;
    set.degree = n;
    set.seed = cfg.seed;
    set.config = cfg;

    std::vector<CVec> endpoints;
    for (const PathResult& p : paths) {
        set.path_stats.total++;
        switch (p.status) {
            case PathStatus::Converged:
                set.path_stats.converged++;
                endpoints.push_back(p.endpoint);
                break;
            case PathStatus::Diverged:
                set.path_stats.diverged++;
                break;
            case PathStatus::MaxSteps:
                set.path_stats.max_steps++;
                break;
            case PathStatus::SingularEndpoint:
                set.path_stats.singular++;
                break;
        }
    }
    set.warning = set.path_stats.max_steps > 0 || set.path_stats.singular > 0;

    const auto clusters = dedup_cluster(endpoints, cfg.dedup_radius);
    for (const auto& [mean, count] : clusters) {
        const RefineResult ref = refine_endpoint(mean, cfg);
        Solution s;
        s.x = ref.converged ? ref.x : mean;
        s.residual_norm = ref.residual_norm;
        s.condition_estimate = ref.condition_estimate;
        s.cluster_size = count;

        const auto [ok_res, rnorm] = verify_fixed_point(s.x, kVerifyResidualTol);
        s.residual_norm = rnorm;
        bool ok_roots = false;
        try {
            ok_roots = verify_ulam_by_roots(s.x, RootFindConfig{}, kVerifyRootsTol);
        } catch (const std::runtime_error&) {
            ok_roots = false;
        }
        if (!ok_res || !ok_roots) {
            set.warning = true;  // landed point did not re-verify; drop it
            continue;
        }

        double max_im = 0.0;
        for (const Cplx& z : s.x) max_im = std::max(max_im, std::abs(z.imag()));
        s.is_real = max_im <= cfg.real_tol;
        s.is_trivial = std::abs(s.x.back()) <= cfg.trivial_tol;
        set.solutions.push_back(std::move(s));
    }

    set.solutions = canonicalize(std::move(set.solutions));
    return set;
}

SolutionSet enumerate_ulam(int n, const TrackerConfig& cfg, int threads) {
    if (n < 1 || n > 8)
        throw std::invalid_argument("enumerate_ulam: degree must be in [1,8]");
    const std::vector<PathResult> paths = track_all(n, cfg, threads);
    return enumerate_from_paths(n, paths, cfg);
}

Summary summarize(const SolutionSet& set) {
    Summary s;
    s.total = static_cast<int>(set.solutions.size());
    s.diverged_paths = set.path_stats.diverged;
    for (const Solution& sol : set.solutions) {
        if (sol.is_real) {
            s.real_count++;
            if (!sol.is_trivial) s.real_nontrivial++;
        }
        if (max_norm(sol.x) <= set.config.real_tol) s.contains_origin = true;
    }
    const std::size_t m = set.solutions.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (set.solutions[i].is_real) continue;
        const CVec conj_i = conjugate(set.solutions[i].x);
        for (std::size_t j = i + 1; j < m; ++j) {
            if (dist_inf(conj_i, set.solutions[j].x) <= 1e-8) {
                s.conjugate_pairs++;
                break;
            }
        }
    }
    return s;
}

std::string summary_text(const SolutionSet& set) {
    const Summary s = summarize(set);
    std::ostringstream os;
    os << "degree " << set.degree << ": " << s.total << " solutions ("
       << s.real_count << " real, " << s.real_nontrivial
       << " real with P(0) != 0, " << s.conjugate_pairs
       << " conjugate pairs)";
    if (s.contains_origin) os << "; includes the origin";
    os << "; paths: " << set.path_stats.converged << " converged, "
       << set.path_stats.diverged << " diverged, " << set.path_stats.max_steps
       << " out of steps, " << set.path_stats.singular << " singular";
    if (set.warning) os << " [warning: incomplete accounting]";
    return os.str();
}

}  // namespace ulam
