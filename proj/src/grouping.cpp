#include <algorithm>
#include <stdexcept>

#include "kbp/configlp.hpp"

namespace kbp {

LinearGrouping linear_grouping(std::span<const Item> items, int g)
{
    if (items.empty()) throw std::invalid_argument("linear_grouping: no items");
    if (g < 1) throw std::invalid_argument("linear_grouping: g must be positive");
    LinearGrouping out;
    const std::size_t first = std::min<std::size_t>(g, items.size());
    out.top.assign(items.begin(), items.begin() + first);
    for (std::size_t start = first; start < items.size(); start += g) {
        const std::size_t end = std::min(items.size(), start + g);
        const Size top = items[start].size;
        for (std::size_t i = start; i < end; ++i) out.rounded.push_back({items[i].id, top});
    }
    return out;
}

GeometricGrouping alt_geometric_grouping(std::span<const Item> items, int g, Size capacity)
{
    if (items.empty()) throw std::invalid_argument("alt_geometric_grouping: no items");
    if (g < 2) throw std::invalid_argument("alt_geometric_grouping: g must exceed 1");
    GeometricGrouping out;
    const Size target = capacity * g;
    Size sum;
    for (const Item& it : items) {
        if (out.groups.empty() || sum >= target) {
            out.groups.emplace_back();
            sum = Size{};
        }
        out.groups.back().push_back(it);
        sum += it.size;
    }
    out.top = out.groups.front();
    for (std::size_t i = 1; i < out.groups.size(); ++i) {
        const auto& grp = out.groups[i];
        const std::size_t prev = out.groups[i - 1].size();
        const std::size_t spare = grp.size() > prev ? grp.size() - prev : 0;
        const std::size_t keep = grp.size() - spare;
        for (std::size_t j = 0; j < keep; ++j) out.rounded.push_back({grp[j].id, grp.front().size});
        out.top.insert(out.top.end(), grp.begin() + keep, grp.end());
    }
    return out;
}

Packing add_small_items(const Instance& instance, Packing packing, std::span<const AgentId> small)
{
    std::vector<Size> loads;
    for (const Bin& b : packing.bins) loads.push_back(bin_load(instance, b));
    const Size cap = instance.capacity();
    // Copies of one small agent land in increasing bins, so bins before the
    // latest one either hold the agent or had no room for it.
    std::vector<std::size_t> next(instance.size(), 0);
    for (int c = 0; c < packing.k; ++c) {
        for (AgentId a : small) {
            const Size s = instance.demand(a);
            std::size_t j = next[a];
            for (; j < packing.bins.size(); ++j)
                if (loads[j] + s <= cap) break;
            if (j == packing.bins.size()) {
                packing.bins.emplace_back();
                loads.emplace_back();
            }
            packing.bins[j].push_back(a);
            loads[j] += s;
            next[a] = j + 1;
        }
    }
    return packing;
}

}  // namespace kbp
