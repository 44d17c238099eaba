#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kbp/configlp.hpp"
#include "kbp/greedy.hpp"

namespace kbp {
namespace {

void check_eps(double eps)
{
    if (!(eps > 0 && eps <= 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2]");
}

Size scaled(Size s, double f) { return Size::micro(static_cast<std::int64_t>(std::floor(s.raw() * static_cast<long double>(f)))); }

int group_size(std::size_t n, double eps)
{
    return std::max(1, static_cast<int>(std::ceil(static_cast<double>(n) * eps * eps - 1e-9)));
}

bool larger_first(const Item& a, const Item& b) { return a.size > b.size || (a.size == b.size && a.id < b.id); }
bool smaller_first(const Item& a, const Item& b) { return a.size < b.size || (a.size == b.size && a.id < b.id); }

// Items renumbered 0..n-1 as an instance of their own.
struct LocalInstance {
    Instance instance;
    std::vector<AgentId> original;

    static LocalInstance of(std::span<const Item> items, Size capacity)
    {
        std::vector<Size> sizes;
        std::vector<AgentId> ids;
        for (const Item& it : items) {
            sizes.push_back(it.size);
            ids.push_back(it.id);
        }
        return {Instance(std::move(sizes), capacity), std::move(ids)};
    }

    void restore(std::vector<Bin>& bins) const
    {
        for (Bin& b : bins)
            for (AgentId& a : b) a = original[a];
    }
};

void append(Packing& to, std::vector<Bin> bins)
{
    for (Bin& b : bins) to.bins.push_back(std::move(b));
}

}  // namespace

SchemeResult dlvl_pack(const Instance& instance, int k, double eps, const SchemeOptions& options)
{
    check_eps(eps);
    const Size threshold = scaled(instance.capacity(), eps);
    std::vector<Item> large;
    std::vector<AgentId> small;
    for (AgentId a = 0; a < instance.size(); ++a) {
        if (instance.demand(a) <= threshold) small.push_back(a);
        else large.push_back({a, instance.demand(a)});
    }
    std::sort(large.begin(), large.end(), smaller_first);

    SchemeResult out{Packing{k, {}}, true};
    if (!large.empty()) {
        const std::size_t g = static_cast<std::size_t>(group_size(large.size(), eps));
        std::vector<Item> rounded;
        for (std::size_t start = 0; start < large.size(); start += g) {
            const std::size_t end = std::min(large.size(), start + g);
            for (std::size_t i = start; i < end; ++i) rounded.push_back({large[i].id, large[end - 1].size});
        }
        LocalInstance local = LocalInstance::of(rounded, instance.capacity());
        ConfigurationSystem sys = enumerate_configurations(local.instance, options.config_cap);
        IlpOptions ilp;
        ilp.node_budget = options.node_budget;
        ilp.initial.push_back(counts_from_packing(sys, local.instance, ffdk(local.instance, k, Search::tree)));
        IntegerSolution sol = solve_integer(sys, k, ilp);
        out.subproblem_optimal = sol.optimal;
        Packing p = realize_solution(sol.counts, sys, k);
        local.restore(p.bins);
        out.packing = std::move(p);
    }
    out.packing = add_small_items(instance, std::move(out.packing), small);
    return out;
}

Packing kk1_pack(const Instance& instance, int k, double eps, const SchemeOptions& options)
{
    check_eps(eps);
    const double share = std::max(1.0 / static_cast<double>(instance.size()), eps);
    const Size threshold = scaled(instance.capacity(), share);
    std::vector<Item> large;
    std::vector<AgentId> small;
    for (AgentId a = 0; a < instance.size(); ++a) {
        if (instance.demand(a) <= threshold) small.push_back(a);
        else large.push_back({a, instance.demand(a)});
    }
    std::sort(large.begin(), large.end(), larger_first);

    Packing p{k, {}};
    if (!large.empty()) {
        LinearGrouping lg = linear_grouping(large, group_size(large.size(), eps));
        for (const Item& it : lg.top)
            for (int c = 0; c < k; ++c) p.bins.push_back({it.id});
        if (!lg.rounded.empty()) {
            LocalInstance local = LocalInstance::of(lg.rounded, instance.capacity());
            ConfigurationSystem sys = enumerate_configurations(local.instance, options.config_cap);
            RoundedSolution rd = round_lp(solve_fractional(sys, k), sys, k);
            Packing rest = realize_solution(rd.counts, sys, k);
            local.restore(rest.bins);
            append(p, std::move(rest.bins));
        }
    }
    return add_small_items(instance, std::move(p), small);
}

Packing kk2_pack(const Instance& instance, int k, double eps, int g, const SchemeOptions& options, Kk2Trace* trace)
{
    if (g < 2) throw std::invalid_argument("g must exceed 1");
    const Size cap = instance.capacity();
    if (eps <= 0) eps = std::min(0.5, cap.to_double() / instance.volume().to_double());
    check_eps(eps);

    const Size threshold = scaled(cap, eps);
    std::vector<Item> large;
    std::vector<AgentId> small;
    for (AgentId a = 0; a < instance.size(); ++a) {
        if (instance.demand(a) <= threshold) small.push_back(a);
        else large.push_back({a, instance.demand(a)});
    }

    // Sizes are normalized to S = 1 for the loop threshold.
    const double limit = 1.0 + static_cast<double>(g) / (g - 1) * std::log(1.0 / eps);
    auto volume = [](const std::vector<Item>& items) {
        Size v;
        for (const Item& it : items) v += it.size;
        return v;
    };
    auto replicate = [&](Packing& to, const std::vector<Bin>& bins) {
        for (const Bin& b : bins)
            for (int c = 0; c < k; ++c) to.bins.push_back(b);
    };

    Packing p{k, {}};
    while (!large.empty() && volume(large).to_double() / cap.to_double() > limit) {
        if (trace) trace->large_volume.push_back(volume(large));
        std::sort(large.begin(), large.end(), larger_first);
        GeometricGrouping gg = alt_geometric_grouping(large, g, cap);
        std::vector<bool> packed(instance.size(), false);

        if (!gg.rounded.empty()) {
            LocalInstance local = LocalInstance::of(gg.rounded, cap);
            ConfigurationSystem sys = enumerate_configurations(local.instance, options.config_cap);
            LpSolution x = solve_fractional(sys, k);
            // x / k solves the single-copy program; its whole bins are kept, each k times.
            std::vector<std::size_t> head(sys.m(), 0);
            std::vector<Bin> whole;
            for (std::size_t j = 0; j < sys.t(); ++j) {
                mpq_class y = x.x[j] / k;
                mpz_class fl;
                mpz_fdiv_q(fl.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
                for (long r = 0; r < fl.get_si(); ++r) {
                    Bin b;
                    for (std::size_t i = 0; i < sys.m(); ++i)
                        for (int c = 0; c < sys.configs[j][i]; ++c) b.push_back(sys.members[i][head[i]++]);
                    whole.push_back(std::move(b));
                }
            }
            local.restore(whole);
            for (const Bin& b : whole)
                for (AgentId a : b) packed[a] = true;
            replicate(p, whole);
        }

        LocalInstance top = LocalInstance::of(gg.top, cap);
        Packing tp = ffk(top.instance, k, Search::tree);
        top.restore(tp.bins);
        append(p, std::move(tp.bins));
        for (const Item& it : gg.top) packed[it.id] = true;

        std::erase_if(large, [&](const Item& it) { return packed[it.id]; });
    }

    if (!large.empty()) {
        std::sort(large.begin(), large.end(), larger_first);
        LocalInstance tail = LocalInstance::of(large, cap);
        Packing tp = ffk(tail.instance, 1, Search::tree);
        tail.restore(tp.bins);
        replicate(p, tp.bins);
    }
    return add_small_items(instance, std::move(p), small);
}

}  // namespace kbp
