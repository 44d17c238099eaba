#pragma once

#include <gmpxx.h>

#include <compare>
#include <functional>
#include <span>
#include <vector>

#include "kbp/configlp.hpp"
#include "kbp/packing.hpp"

namespace kbp {

enum class Backend { ffk, ffdk };

struct WattsSolution {
    std::size_t g = 0;                // always-on prefix length (agents, groups for HA2/HA3)
    std::vector<AgentId> always_on;   // connected in every bin
    std::vector<Bin> bins;            // remaining agents only
    std::vector<mpq_class> durations;
    std::vector<double> watts;        // per agent, kW averaged over the hour

    // Minimum watts over agents not always on (over all agents if every agent is).
    double egalitarian() const;
    // Bins with the always-on agents appended.
    std::vector<Bin> completed_bins() const;
};

// Durations positive and summing to one, completed bins duplicate-free and
// within capacity, watts consistent with the durations.
Verdict validate_watts(const Instance& instance, const WattsSolution& solution);

struct LeximinKey {
    std::vector<double> values;  // non-decreasing
};

LeximinKey leximin_key(std::span<const double> watts);

// Lexicographic on the sorted vectors; entries within 1e-9 count as equal.
// `greater` means the first key is leximin-preferred. Throws on length mismatch.
std::weak_ordering leximin_compare(const LeximinKey& a, const LeximinKey& b);

struct Cutoff {
    Size d_l;           // largest demand in the prefix (0 when the prefix is empty)
    std::size_t g_max;  // prefix length
};

// Longest prefix of the ascending demands summing to at most S - d_max.
// Throws PreconditionError when V(D) <= S.
Cutoff cutoff(const Instance& instance);

struct CopiesInstance {
    std::vector<int> copies;       // aligned with the `remaining` argument
    std::vector<AgentId> stream;   // round-robin interleaving of the copies
};

// copies = k * d_max / demand rounded to the nearest integer, exact halves to
// even; agents with zero copies are left out.
CopiesInstance derive_copies_instance(std::span<const Item> remaining, int k, Size d_max);

using WattsEvaluator = std::function<WattsSolution(std::size_t g)>;

// Shrinks [g_begin, g_end] by thirds while wider than 3, then scans the rest.
// Returns the leximin-best solution among all evaluated g (ties: smaller g).
WattsSolution ternary_search(const WattsEvaluator& evaluate, std::size_t g_begin, std::size_t g_end);

// Evaluation of each heuristic at a fixed always-on prefix.
WattsSolution ha1_at(const Instance& instance, int k, std::size_t g, Backend backend = Backend::ffk);
WattsSolution ha4_at(const Instance& instance, int k, std::size_t g, Backend backend = Backend::ffk);

WattsSolution ha1(const Instance& instance, int k, Backend backend = Backend::ffk);
WattsSolution ha4(const Instance& instance, int k, Backend backend = Backend::ffk);

struct DyadicGroup {
    int index;  // members lie in (d_max 2^-(index+1), d_max 2^-index]
    std::vector<Item> items;
};

// Non-empty dyadic buckets in increasing index order.
std::vector<DyadicGroup> geometric_grouping(std::span<const Item> items);

// HA2 with the `always_on` smallest-bucket groups connected throughout and one
// multiplicity per remaining group (k_per_group[i] for the i-th remaining group).
WattsSolution ha2_at(const Instance& instance, std::span<const int> k_per_group, std::size_t always_on,
                     Backend backend = Backend::ffk);
WattsSolution ha2(const Instance& instance, int k, Backend backend = Backend::ffk);

struct DemandGroup {
    std::vector<AgentId> members;
    Size volume;
    Size pseudo;  // volume, or u * d_max for a short last group
};

std::vector<DemandGroup> ha3_groups(const Instance& instance, double u);

WattsSolution ha3_at(const Instance& instance, int k, double u, std::size_t g, Backend backend = Backend::ffk);
WattsSolution ha3(const Instance& instance, int k, double u, Backend backend = Backend::ffk);

}  // namespace kbp
