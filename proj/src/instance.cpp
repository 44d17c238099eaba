#include "kbp/instance.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace kbp {

Instance::Instance(std::vector<Size> demands, Size capacity)
    : demands_(std::move(demands)), capacity_(capacity)
{
    if (demands_.empty()) throw std::invalid_argument("instance needs at least one agent");
    for (std::size_t i = 0; i < demands_.size(); ++i) {
        Size d = demands_[i];
        if (d <= Size{} || d > capacity_)
            throw std::invalid_argument("demand of agent " + std::to_string(i) + " (" + d.to_string() +
                                        ") is not in (0, capacity=" + capacity_.to_string() + "]");
        volume_ += d;
    }
}

Size Instance::max_demand() const { return *std::max_element(demands_.begin(), demands_.end()); }

std::int64_t volume_bound(const Instance& instance, int k)
{
    return ceil_div(instance.volume().raw() * k, instance.capacity().raw());
}

}  // namespace kbp
