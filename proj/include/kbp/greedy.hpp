#pragma once

#include <span>
#include <vector>

#include "kbp/packing.hpp"

namespace kbp {

// How first fit locates the lowest-index bin with room.
//   linear: scan every bin in creation order (reference implementation).
//   tree:   max segment tree over residual capacities; identical output.
enum class Search { linear, tree };

// First fit over a stream of agent ids. sizes[a] is the size used for agent a.
// An item never joins a bin that already holds a copy of the same agent.
std::vector<Bin> first_fit(std::span<const AgentId> stream, std::span<const Size> sizes, Size capacity,
                           Search search = Search::linear);

// `order` concatenated k times.
std::vector<AgentId> repeat_stream(std::span<const AgentId> order, int k);

// Agent ids sorted by non-increasing demand, ties by index.
std::vector<AgentId> decreasing_order(const Instance& instance);

Packing ffk(const Instance& instance, int k, Search search = Search::linear);
Packing ffdk(const Instance& instance, int k, Search search = Search::linear);
Packing nfk(const Instance& instance, int k);

}  // namespace kbp
