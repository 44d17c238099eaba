#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "kbp/configlp.hpp"

namespace kbp {

struct ExactOptions {
    std::size_t config_cap = default_config_cap;
    std::int64_t node_budget = 200'000;
};

struct ExactResult {
    Packing packing;
    bool optimal = false;           // proven minimum
    bool volume_certified = false;  // bins == ceil(k V / S)
    std::int64_t lower_bound = 0;
    std::int64_t nodes = 0;
};

// Minimum-bin packing of D_k by branch and bound over configuration counts.
// When the node budget runs out the best packing found is returned with optimal = false.
ExactResult exact_kbp(const Instance& instance, int k, const ExactOptions& options = {});

struct WeightedSubset {
    std::vector<AgentId> agents;
    mpq_class weight;
};

struct RmaxResult {
    mpq_class r_max;
    std::vector<WeightedSubset> support;
};

// Largest r with r * (1, ..., 1) in the convex hull of feasible agent subsets.
RmaxResult rmax(const Instance& instance, std::size_t cap = default_config_cap);

struct MinimalK {
    int k = 0;
    std::int64_t bins = 0;  // OPT(D_k) = k / r_max
};

// Smallest k <= k_max with k / OPT(D_k) = r_max. Since OPT(D_k) >= k / r_max,
// only k making k / r_max integral can qualify; those are tested with the
// corresponding bin count as a cutoff.
std::optional<MinimalK> minimal_k(const Instance& instance, int k_max, const ExactOptions& options = {});

struct DeterminantBound {
    double value = 0;
    bool bound_only = false;  // Hadamard bound rather than the known maximum
};

// Maximal determinant of an n x n 0/1 matrix (known values up to n = 21).
DeterminantBound a_n(int n);

}  // namespace kbp
