#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kbp/size.hpp"

namespace kbp {

using AgentId = std::uint32_t;

// Agent demands plus bin capacity. Every demand is in (0, capacity].
class Instance {
public:
    // Throws std::invalid_argument when the invariants do not hold.
    Instance(std::vector<Size> demands, Size capacity);

    std::size_t size() const { return demands_.size(); }
    Size demand(AgentId a) const { return demands_[a]; }
    std::span<const Size> demands() const { return demands_; }
    Size capacity() const { return capacity_; }
    Size volume() const { return volume_; }
    Size max_demand() const;

private:
    std::vector<Size> demands_;
    Size capacity_;
    Size volume_;
};

// ceil(a / b) for positive integers.
constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// Smallest number of bins able to hold k copies of every item by volume.
std::int64_t volume_bound(const Instance& instance, int k);

}  // namespace kbp
