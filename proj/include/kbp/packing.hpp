#pragma once

#include <string>
#include <vector>

#include "kbp/instance.hpp"

namespace kbp {

using Bin = std::vector<AgentId>;

struct Packing {
    int k = 1;
    std::vector<Bin> bins;

    std::size_t size() const { return bins.size(); }
};

enum class Violation { none, unknown_agent, duplicate_in_bin, wrong_multiplicity, capacity_overflow };

struct Verdict {
    Violation kind = Violation::none;
    std::size_t bin = 0;
    AgentId agent = 0;
    std::string message;

    bool ok() const { return kind == Violation::none; }
};

Size bin_load(const Instance& instance, const Bin& bin);

// Checks, in this order: ids in range, no duplicate agent inside a bin,
// every agent in exactly k bins, every bin within capacity.
Verdict validate_packing(const Instance& instance, const Packing& packing);

}  // namespace kbp
