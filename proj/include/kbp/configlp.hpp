#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "kbp/packing.hpp"

namespace kbp {

constexpr std::size_t default_config_cap = 200'000;
constexpr std::int64_t default_node_budget = 20'000;

// Count of each size class in one bin.
using Configuration = std::vector<int>;

struct ConfigurationSystem {
    Size capacity;
    std::vector<Size> sizes;                    // distinct, decreasing
    std::vector<int> counts;                    // n[i]
    std::vector<std::vector<AgentId>> members;  // agents of class i, increasing id
    std::vector<Configuration> configs;         // columns of A
    std::map<Configuration, std::size_t> index;

    std::size_t m() const { return sizes.size(); }
    std::size_t t() const { return configs.size(); }
    Size load(const Configuration& c) const;
    std::optional<std::size_t> find(const Configuration& c) const;
};

// All non-empty feasible configurations, ordered lexicographically decreasing
// by count vector. Throws InstanceTooLarge when more than `cap` exist.
ConfigurationSystem enumerate_configurations(const Instance& instance, std::size_t cap = default_config_cap);

struct LpSolution {
    std::vector<mpq_class> x;
    mpq_class objective;
    bool basic = true;
};

// Optimal basic solution of: minimize 1.x subject to A x = k n, x >= 0.
LpSolution solve_fractional(const ConfigurationSystem& system, int k);

struct RoundedSolution {
    std::vector<std::int64_t> counts;
    std::int64_t bins = 0;
    std::int64_t floor_bins = 0;     // bins kept from floor(x)
    bool residual_first_fit = false;  // residual packed by first fit rather than per-configuration bins
    mpq_class lp_objective;
};

RoundedSolution round_lp(const LpSolution& solution, const ConfigurationSystem& system, int k);

// Configuration counts of a valid packing of the instance the system was built from.
std::vector<std::int64_t> counts_from_packing(const ConfigurationSystem& system, const Instance& instance,
                                              const Packing& packing);

// Queue realization: each class holds k copies of its agents, first copies first.
// Throws std::invalid_argument unless A counts = k n.
Packing realize_solution(std::span<const std::int64_t> counts, const ConfigurationSystem& system, int k);

struct IlpOptions {
    std::int64_t node_budget = default_node_budget;
    // Only solutions with at most this many bins are of interest.
    std::optional<std::int64_t> cutoff;
    std::vector<std::vector<std::int64_t>> initial;  // known feasible count vectors
};

struct IntegerSolution {
    std::vector<std::int64_t> counts;  // empty if nothing within the cutoff was found
    std::int64_t bins = 0;
    std::int64_t lower_bound = 0;
    bool optimal = false;  // search completed (relative to the cutoff, if any)
    std::int64_t nodes = 0;
};

// Branch and bound on the configuration integer program.
IntegerSolution solve_integer(const ConfigurationSystem& system, int k, const IlpOptions& options = {});

struct Item {
    AgentId id;
    Size size;
};

struct LinearGrouping {
    std::vector<Item> top;      // first group, original sizes
    std::vector<Item> rounded;  // later groups raised to their group maximum
};

// Items sorted non-increasing; groups of g consecutive items.
LinearGrouping linear_grouping(std::span<const Item> items, int g);

struct GeometricGrouping {
    std::vector<std::vector<Item>> groups;  // each but the last sums to >= g*S
    std::vector<Item> top;                  // G_1 plus the smallest l_i - l_{i-1} items of later groups
    std::vector<Item> rounded;              // rest of later groups, raised to the group maximum
};

// Items sorted non-increasing.
GeometricGrouping alt_geometric_grouping(std::span<const Item> items, int g, Size capacity);

// First fit of k copies of each small agent (copy-major order) into the
// packing, opening bins as needed; a bin never receives a second copy.
Packing add_small_items(const Instance& instance, Packing packing, std::span<const AgentId> small);

struct SchemeOptions {
    std::size_t config_cap = default_config_cap;
    std::int64_t node_budget = default_node_budget;
};

struct SchemeResult {
    Packing packing;
    bool subproblem_optimal = true;  // dlvl: the rounded integer program was solved to optimality
};

SchemeResult dlvl_pack(const Instance& instance, int k, double eps, const SchemeOptions& options = {});
Packing kk1_pack(const Instance& instance, int k, double eps, const SchemeOptions& options = {});

struct Kk2Trace {
    std::vector<Size> large_volume;  // V(J) at the start of each loop iteration
};

// eps <= 0 selects the default S / V(D), clamped to 1/2.
Packing kk2_pack(const Instance& instance, int k, double eps = 0, int g = 2, const SchemeOptions& options = {},
                 Kk2Trace* trace = nullptr);

}  // namespace kbp
