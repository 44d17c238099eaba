#include "kbp/greedy.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace kbp {
namespace {

std::vector<Bin> first_fit_linear(std::span<const AgentId> stream, std::span<const Size> sizes, Size capacity)
{
    std::vector<Bin> bins;
    std::vector<Size> loads;
    for (AgentId a : stream) {
        Size s = sizes[a];
        std::size_t j = 0;
        for (; j < bins.size(); ++j)
            if (loads[j] + s <= capacity && std::find(bins[j].begin(), bins[j].end(), a) == bins[j].end()) break;
        if (j == bins.size()) {
            bins.emplace_back();
            loads.emplace_back();
        }
        bins[j].push_back(a);
        loads[j] += s;
    }
    return bins;
}

// Leaves hold residual capacity; unopened bins hold the full capacity, so the
// first unopened bin is found exactly when no open bin has room.
class ResidualTree {
public:
    ResidualTree(std::size_t bins, std::int64_t capacity)
        : leaves_(std::bit_ceil(std::max<std::size_t>(bins, 1))), node_(2 * leaves_, capacity)
    {
    }

    // Lowest index >= from whose residual is >= need.
    std::size_t first_at_least(std::size_t from, std::int64_t need) const
    {
        return descend(1, 0, leaves_, from, need);
    }

    void take(std::size_t leaf, std::int64_t amount)
    {
        std::size_t i = leaf + leaves_;
        node_[i] -= amount;
        for (i /= 2; i >= 1; i /= 2) node_[i] = std::max(node_[2 * i], node_[2 * i + 1]);
    }

private:
    std::size_t descend(std::size_t node, std::size_t lo, std::size_t hi, std::size_t from, std::int64_t need) const
    {
        if (hi <= from || node_[node] < need) return SIZE_MAX;
        if (hi - lo == 1) return lo;
        std::size_t mid = (lo + hi) / 2;
        std::size_t r = descend(2 * node, lo, mid, from, need);
        return r != SIZE_MAX ? r : descend(2 * node + 1, mid, hi, from, need);
    }

    std::size_t leaves_;
    std::vector<std::int64_t> node_;
};

// Copies of one agent land in strictly increasing bins: every bin before the
// agent's latest bin either holds the agent or had no room then (and loads only
// grow). So the answer is the first bin after the latest one with enough room.
std::vector<Bin> first_fit_tree(std::span<const AgentId> stream, std::span<const Size> sizes, Size capacity)
{
    ResidualTree tree(stream.size(), capacity.raw());
    std::vector<std::size_t> next_allowed(sizes.size(), 0);
    std::vector<Bin> bins;
    for (AgentId a : stream) {
        std::int64_t s = sizes[a].raw();
        std::size_t j = tree.first_at_least(next_allowed[a], s);
        if (j == bins.size()) bins.emplace_back();
        bins[j].push_back(a);
        tree.take(j, s);
        next_allowed[a] = j + 1;
    }
    return bins;
}

}  // namespace

std::vector<Bin> first_fit(std::span<const AgentId> stream, std::span<const Size> sizes, Size capacity,
                           Search search)
{
    for (AgentId a : stream)
        if (a >= sizes.size() || sizes[a] > capacity) throw std::invalid_argument("first_fit: item does not fit a bin");
    return search == Search::tree ? first_fit_tree(stream, sizes, capacity)
                                  : first_fit_linear(stream, sizes, capacity);
}

std::vector<AgentId> repeat_stream(std::span<const AgentId> order, int k)
{
    std::vector<AgentId> stream;
    stream.reserve(order.size() * static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) stream.insert(stream.end(), order.begin(), order.end());
    return stream;
}

std::vector<AgentId> decreasing_order(const Instance& instance)
{
    std::vector<AgentId> order(instance.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](AgentId a, AgentId b) { return instance.demand(a) > instance.demand(b); });
    return order;
}

Packing ffk(const Instance& instance, int k, Search search)
{
    if (k < 1) throw std::invalid_argument("k must be positive");
    std::vector<AgentId> order(instance.size());
    std::iota(order.begin(), order.end(), 0);
    return {k, first_fit(repeat_stream(order, k), instance.demands(), instance.capacity(), search)};
}

Packing ffdk(const Instance& instance, int k, Search search)
{
    if (k < 1) throw std::invalid_argument("k must be positive");
    return {k, first_fit(repeat_stream(decreasing_order(instance), k), instance.demands(), instance.capacity(),
                         search)};
}

Packing nfk(const Instance& instance, int k)
{
    if (k < 1) throw std::invalid_argument("k must be positive");
    const std::size_t n = instance.size();
    Packing p{k, {}};
    if (instance.volume() <= instance.capacity()) {
        Bin all(n);
        std::iota(all.begin(), all.end(), 0);
        p.bins.assign(static_cast<std::size_t>(k), all);
        return p;
    }
    std::vector<std::size_t> last_bin(n, SIZE_MAX);
    Size load;
    for (int c = 0; c < k; ++c) {
        for (AgentId a = 0; a < n; ++a) {
            Size s = instance.demand(a);
            bool open = !p.bins.empty();
            if (!open || load + s > instance.capacity() || last_bin[a] == p.bins.size() - 1) {
                p.bins.emplace_back();
                load = Size{};
            }
            p.bins.back().push_back(a);
            load += s;
            last_bin[a] = p.bins.size() - 1;
        }
    }
    return p;
}

}  // namespace kbp
