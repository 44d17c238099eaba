#include "kbp/packing.hpp"

#include <algorithm>
#include <cstdint>

namespace kbp {

Size bin_load(const Instance& instance, const Bin& bin)
{
    Size load;
    for (AgentId a : bin) load += instance.demand(a);
    return load;
}

Verdict validate_packing(const Instance& instance, const Packing& packing)
{
    const std::size_t n = instance.size();
    auto where = [](std::size_t b) { return " in bin " + std::to_string(b); };

    for (std::size_t b = 0; b < packing.bins.size(); ++b)
        for (AgentId a : packing.bins[b])
            if (a >= n)
                return {Violation::unknown_agent, b, a, "unknown agent " + std::to_string(a) + where(b)};

    std::vector<std::size_t> seen_in(n, SIZE_MAX);
    std::vector<int> copies(n, 0);
    for (std::size_t b = 0; b < packing.bins.size(); ++b) {
        for (AgentId a : packing.bins[b]) {
            if (seen_in[a] == b)
                return {Violation::duplicate_in_bin, b, a, "duplicate agent " + std::to_string(a) + where(b)};
            seen_in[a] = b;
            ++copies[a];
        }
    }

    for (AgentId a = 0; a < n; ++a) {
        if (copies[a] != packing.k) {
            // Report the last bin holding the agent, or bin 0 when it is absent.
            std::size_t b = seen_in[a] == SIZE_MAX ? 0 : seen_in[a];
            return {Violation::wrong_multiplicity, b, a,
                    "agent " + std::to_string(a) + " packed " + std::to_string(copies[a]) + " times, expected " +
                        std::to_string(packing.k)};
        }
    }

    for (std::size_t b = 0; b < packing.bins.size(); ++b) {
        Size load = bin_load(instance, packing.bins[b]);
        if (load > instance.capacity())
            return {Violation::capacity_overflow, b, 0,
                    "load " + load.to_string() + " exceeds capacity " + instance.capacity().to_string() + where(b)};
    }
    return {};
}

}  // namespace kbp
