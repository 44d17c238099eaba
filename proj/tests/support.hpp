#pragma once

#include <algorithm>
#include <initializer_list>
#include <random>
#include <vector>

#include "kbp/packing.hpp"

namespace kbp::test {

inline Instance make(std::initializer_list<double> demands, double capacity)
{
    std::vector<Size> d;
    for (double v : demands) d.push_back(Size::from_double(v));
    return Instance(std::move(d), Size::from_double(capacity));
}

inline Instance make(const std::vector<double>& demands, double capacity)
{
    std::vector<Size> d;
    for (double v : demands) d.push_back(Size::from_double(v));
    return Instance(std::move(d), Size::from_double(capacity));
}

// Minimum bins for k copies of every agent by exhaustive search; tiny inputs only.
inline std::size_t brute_force_opt(const Instance& inst, int k)
{
    std::vector<AgentId> items;
    for (int c = 0; c < k; ++c)
        for (AgentId a = 0; a < inst.size(); ++a) items.push_back(a);
    std::size_t best = items.size();
    std::vector<Bin> bins;
    std::vector<Size> loads;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (bins.size() >= best) return;
        if (i == items.size()) {
            best = bins.size();
            return;
        }
        const AgentId a = items[i];
        for (std::size_t b = 0; b < bins.size(); ++b) {
            if (loads[b] + inst.demand(a) > inst.capacity()) continue;
            if (std::find(bins[b].begin(), bins[b].end(), a) != bins[b].end()) continue;
            bins[b].push_back(a);
            loads[b] += inst.demand(a);
            self(self, i + 1);
            bins[b].pop_back();
            loads[b] -= inst.demand(a);
        }
        bins.push_back({a});
        loads.push_back(inst.demand(a));
        self(self, i + 1);
        bins.pop_back();
        loads.pop_back();
    };
    rec(rec, 0);
    return best;
}

// Random instance with integer demands in [1, cap].
inline Instance random_instance(std::mt19937_64& rng, std::size_t n_max, int cap_lo, int cap_hi)
{
    std::uniform_int_distribution<int> cap_d(cap_lo, cap_hi);
    std::uniform_int_distribution<std::size_t> n_d(1, n_max);
    const int cap = cap_d(rng);
    std::uniform_int_distribution<int> dem(1, cap);
    std::vector<Size> d(n_d(rng));
    for (auto& s : d) s = Size::units(dem(rng));
    return Instance(std::move(d), Size::units(cap));
}

}  // namespace kbp::test
