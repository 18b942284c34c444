#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ulam/homotopy.hpp"

namespace ulam {

// Tolerances the enumeration pipeline uses when re-verifying every
// reported solution through both independent tests.
inline constexpr double kVerifyResidualTol = 1e-8;
inline constexpr double kVerifyRootsTol = 1e-6;

struct Solution {
    CVec x;
    double residual_norm = 0.0;
    bool is_real = false;
    bool is_trivial = false;  // |x_n| below tolerance, i.e. P(0) = 0
    int cluster_size = 0;     // paths (or starts) that landed here
    double condition_estimate = 0.0;
};

struct PathStats {
    std::int64_t total = 0;
    std::int64_t converged = 0;
    std::int64_t diverged = 0;
    std::int64_t max_steps = 0;
    std::int64_t singular = 0;
};

// The finite set of degree-n fixed points, realized at tolerance:
// deduplicated, canonically ordered, classified, with full path
// accounting.
struct SolutionSet {
    int degree = 0;
    std::vector<Solution> solutions;
    PathStats path_stats;
    std::uint64_t seed = 0;
    TrackerConfig config;
    bool warning = false;  // set when paths failed or a point flunked re-verification
};

// Single-linkage clustering at max-norm distance radius; returns
// (component-wise mean, cluster size) per cluster, ordered by the
// smallest member index.
std::vector<std::pair<CVec, int>> dedup_cluster(const std::vector<CVec>& points,
                                                double radius);

// Sorts by the lexicographic key (Re x_1, Im x_1, Re x_2, ...) with each
// component rounded to 9 decimal digits first, so the order is stable
// across seeds for sets that agree to well below 1e-9.
std::vector<Solution> canonicalize(std::vector<Solution> solutions);

// Full pipeline: track all n! paths, refine, deduplicate, canonicalize,
// classify. Every reported solution passes the residual test at 1e-8 and
// the root-multiset test at 1e-6.
SolutionSet enumerate_ulam(int n, const TrackerConfig& cfg, int threads = 0);

// Post-processing half of enumerate_ulam, usable on path results that
// were tracked elsewhere.
SolutionSet enumerate_from_paths(int n, const std::vector<PathResult>& paths,
                                 const TrackerConfig& cfg);

struct Summary {
    int total = 0;
    int real_count = 0;
    int real_nontrivial = 0;   // real with P(0) != 0
    int conjugate_pairs = 0;
    std::int64_t diverged_paths = 0;
    bool contains_origin = false;
};

Summary summarize(const SolutionSet& set);

std::string summary_text(const SolutionSet& set);

}  // namespace ulam
