#include "kbp/watts.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "kbp/errors.hpp"
#include "kbp/greedy.hpp"
#include "kbp/rational.hpp"

namespace kbp {
namespace {

constexpr double leximin_tolerance = 1e-9;

std::vector<AgentId> ascending_order(const Instance& instance)
{
    std::vector<AgentId> order(instance.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](AgentId a, AgentId b) { return instance.demand(a) < instance.demand(b); });
    return order;
}

// Nearest integer; exact halves go to the even neighbour.
std::int64_t round_nearest(std::int64_t num, std::int64_t den)
{
    std::int64_t q = num / den;
    const std::int64_t r = num % den;
    if (2 * r > den || (2 * r == den && q % 2 == 1)) ++q;
    return q;
}

std::vector<double> watts_from_times(const Instance& instance, const std::vector<mpq_class>& time)
{
    std::vector<double> w(instance.size());
    for (AgentId a = 0; a < instance.size(); ++a) w[a] = mpq_class(time[a] * to_rational(instance.demand(a))).get_d();
    return w;
}

// Uniform durations over `bins`; always-on agents get time 1.
WattsSolution uniform_solution(const Instance& instance, std::size_t g, std::vector<AgentId> always_on,
                               std::vector<Bin> bins)
{
    WattsSolution s;
    s.g = g;
    const mpq_class d(1, static_cast<unsigned long>(bins.size()));
    std::vector<mpq_class> time(instance.size(), 0);
    for (const Bin& b : bins)
        for (AgentId a : b) time[a] += d;
    for (AgentId a : always_on) time[a] = 1;
    s.always_on = std::move(always_on);
    s.durations.assign(bins.size(), d);
    s.bins = std::move(bins);
    s.watts = watts_from_times(instance, time);
    return s;
}

// Everyone fits: a single bin for the whole hour.
WattsSolution everyone_connected(const Instance& instance)
{
    Bin all(instance.size());
    std::iota(all.begin(), all.end(), 0);
    return uniform_solution(instance, 0, {}, {all});
}

bool preferred(const WattsSolution& a, const WattsSolution& b)
{
    auto c = leximin_compare(leximin_key(a.watts), leximin_key(b.watts));
    return c > 0 || (c == 0 && a.g < b.g);
}

std::vector<AgentId> order_stream(const Instance& instance, std::vector<AgentId> stream, Backend backend)
{
    if (backend == Backend::ffdk)
        std::stable_sort(stream.begin(), stream.end(),
                         [&](AgentId a, AgentId b) { return instance.demand(a) > instance.demand(b); });
    return stream;
}

struct Split {
    std::vector<AgentId> always_on;
    std::vector<Item> remaining;  // original index order
    Size capacity;                // S - V(G)
};

Split split_prefix(const Instance& instance, std::size_t g)
{
    std::vector<AgentId> order = ascending_order(instance);
    if (g >= order.size()) throw std::invalid_argument("always-on prefix leaves no agent");
    Split s;
    s.always_on.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(g));
    std::vector<bool> on(instance.size(), false);
    Size used;
    for (AgentId a : s.always_on) {
        on[a] = true;
        used += instance.demand(a);
    }
    for (AgentId a = 0; a < instance.size(); ++a)
        if (!on[a]) s.remaining.push_back({a, instance.demand(a)});
    if (used > instance.capacity()) throw std::invalid_argument("always-on agents exceed the capacity");
    s.capacity = instance.capacity() - used;
    return s;
}

Size max_size(std::span<const Item> items)
{
    Size m;
    for (const Item& it : items) m = std::max(m, it.size);
    return m;
}

}  // namespace

double WattsSolution::egalitarian() const
{
    std::vector<bool> on(watts.size(), false);
    for (AgentId a : always_on) on[a] = true;
    double lo = INFINITY, all = INFINITY;
    for (std::size_t a = 0; a < watts.size(); ++a) {
        all = std::min(all, watts[a]);
        if (!on[a]) lo = std::min(lo, watts[a]);
    }
    return std::isinf(lo) ? all : lo;
}

std::vector<Bin> WattsSolution::completed_bins() const
{
    std::vector<Bin> out = bins;
    for (Bin& b : out) b.insert(b.end(), always_on.begin(), always_on.end());
    return out;
}

Verdict validate_watts(const Instance& instance, const WattsSolution& s)
{
    if (s.bins.size() != s.durations.size() || s.bins.empty())
        return {Violation::wrong_multiplicity, 0, 0, "bins and durations disagree"};
    mpq_class total = 0;
    for (std::size_t b = 0; b < s.durations.size(); ++b) {
        if (s.durations[b] <= 0) return {Violation::wrong_multiplicity, b, 0, "non-positive duration"};
        total += s.durations[b];
    }
    if (total != 1) return {Violation::wrong_multiplicity, 0, 0, "durations do not sum to 1"};

    std::vector<Bin> completed = s.completed_bins();
    std::vector<mpq_class> time(instance.size(), 0);
    for (std::size_t b = 0; b < completed.size(); ++b) {
        Bin sorted = completed[b];
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] >= instance.size())
                return {Violation::unknown_agent, b, sorted[i], "unknown agent in bin " + std::to_string(b)};
            if (i > 0 && sorted[i] == sorted[i - 1])
                return {Violation::duplicate_in_bin, b, sorted[i], "duplicate agent in bin " + std::to_string(b)};
        }
        if (bin_load(instance, completed[b]) > instance.capacity())
            return {Violation::capacity_overflow, b, 0, "bin " + std::to_string(b) + " exceeds capacity"};
        for (AgentId a : completed[b]) time[a] += s.durations[b];
    }
    if (s.watts.size() != instance.size()) return {Violation::wrong_multiplicity, 0, 0, "watts vector length"};
    for (AgentId a = 0; a < instance.size(); ++a) {
        double expect = mpq_class(time[a] * to_rational(instance.demand(a))).get_d();
        if (std::abs(expect - s.watts[a]) > 1e-9)
            return {Violation::wrong_multiplicity, 0, a, "watts of agent " + std::to_string(a) + " inconsistent"};
    }
    return {};
}

LeximinKey leximin_key(std::span<const double> watts)
{
    LeximinKey k{{watts.begin(), watts.end()}};
    std::sort(k.values.begin(), k.values.end());
    return k;
}

std::weak_ordering leximin_compare(const LeximinKey& a, const LeximinKey& b)
{
    if (a.values.size() != b.values.size()) throw std::invalid_argument("leximin keys differ in length");
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        double d = a.values[i] - b.values[i];
        if (d > leximin_tolerance) return std::weak_ordering::greater;
        if (d < -leximin_tolerance) return std::weak_ordering::less;
    }
    return std::weak_ordering::equivalent;
}

Cutoff cutoff(const Instance& instance)
{
    if (instance.volume() <= instance.capacity())
        throw PreconditionError("cutoff: total demand does not exceed the capacity");
    const Size room = instance.capacity() - instance.max_demand();
    Cutoff c{Size{}, 0};
    Size sum;
    for (AgentId a : ascending_order(instance)) {
        if (sum + instance.demand(a) > room) break;
        sum += instance.demand(a);
        c.d_l = instance.demand(a);
        ++c.g_max;
    }
    return c;
}

CopiesInstance derive_copies_instance(std::span<const Item> remaining, int k, Size d_max)
{
    if (k < 1) throw std::invalid_argument("k must be positive");
    CopiesInstance out;
    for (const Item& it : remaining)
        out.copies.push_back(static_cast<int>(round_nearest(static_cast<std::int64_t>(k) * d_max.raw(), it.size.raw())));
    std::vector<int> left = out.copies;
    for (bool any = true; any;) {
        any = false;
        for (std::size_t i = 0; i < remaining.size(); ++i)
            if (left[i] > 0) {
                out.stream.push_back(remaining[i].id);
                --left[i];
                any = true;
            }
    }
    return out;
}

WattsSolution ternary_search(const WattsEvaluator& evaluate, std::size_t g_begin, std::size_t g_end)
{
    if (g_end < g_begin) throw std::invalid_argument("ternary_search: empty range");
    std::map<std::size_t, WattsSolution> seen;
    std::optional<WattsSolution> best;
    auto visit = [&](std::size_t g) {
        auto it = seen.find(g);
        if (it == seen.end()) it = seen.emplace(g, evaluate(g)).first;
        if (!best || preferred(it->second, *best)) best = it->second;
    };
    while (g_end - g_begin > 3) {
        visit(g_begin);
        visit(g_end);
        g_begin = static_cast<std::size_t>(std::lround((2.0 * g_begin + g_end) / 3.0));
        g_end = static_cast<std::size_t>(std::lround((g_begin + 2.0 * g_end) / 3.0));
    }
    for (std::size_t g = g_begin; g <= g_end; ++g) visit(g);
    return *best;
}

WattsSolution ha1_at(const Instance& instance, int k, std::size_t g, Backend backend)
{
    Split s = split_prefix(instance, g);
    CopiesInstance ci = derive_copies_instance(s.remaining, k, max_size(s.remaining));
    std::vector<AgentId> stream = order_stream(instance, std::move(ci.stream), backend);
    std::vector<Bin> bins = first_fit(stream, instance.demands(), s.capacity, Search::tree);
    return uniform_solution(instance, g, std::move(s.always_on), std::move(bins));
}

WattsSolution ha4_at(const Instance& instance, int k, std::size_t g, Backend backend)
{
    if (k < 1) throw std::invalid_argument("k must be positive");
    Split s = split_prefix(instance, g);
    std::vector<AgentId> order;
    for (const Item& it : s.remaining) order.push_back(it.id);
    order = order_stream(instance, std::move(order), backend);
    std::vector<Bin> bins = first_fit(repeat_stream(order, k), instance.demands(), s.capacity, Search::tree);
    return uniform_solution(instance, g, std::move(s.always_on), std::move(bins));
}

WattsSolution ha1(const Instance& instance, int k, Backend backend)
{
    if (instance.volume() <= instance.capacity()) return everyone_connected(instance);
    return ternary_search([&](std::size_t g) { return ha1_at(instance, k, g, backend); }, 0, cutoff(instance).g_max);
}

WattsSolution ha4(const Instance& instance, int k, Backend backend)
{
    if (instance.volume() <= instance.capacity()) return everyone_connected(instance);
    return ternary_search([&](std::size_t g) { return ha4_at(instance, k, g, backend); }, 0, cutoff(instance).g_max);
}

std::vector<DyadicGroup> geometric_grouping(std::span<const Item> items)
{
    if (items.empty()) throw std::invalid_argument("geometric_grouping: no items");
    const std::int64_t top = max_size(items).raw();
    std::map<int, std::vector<Item>> buckets;
    for (const Item& it : items) {
        int i = 0;
        while ((it.size.raw() << (i + 1)) <= top) ++i;
        buckets[i].push_back(it);
    }
    std::vector<DyadicGroup> out;
    for (auto& [i, members] : buckets) out.push_back({i, std::move(members)});
    return out;
}

namespace {

std::vector<Item> all_items(const Instance& instance)
{
    std::vector<Item> items;
    for (AgentId a = 0; a < instance.size(); ++a) items.push_back({a, instance.demand(a)});
    return items;
}

}  // namespace

WattsSolution ha2_at(const Instance& instance, std::span<const int> k_per_group, std::size_t always_on,
                     Backend backend)
{
    std::vector<DyadicGroup> groups = geometric_grouping(all_items(instance));
    if (always_on >= groups.size()) throw std::invalid_argument("ha2: every group would be always on");
    const std::size_t live = groups.size() - always_on;
    if (k_per_group.size() != live) throw std::invalid_argument("ha2: one multiplicity per remaining group");

    WattsSolution s;
    s.g = always_on;
    Size used;
    for (std::size_t i = live; i < groups.size(); ++i)
        for (const Item& it : groups[i].items) {
            s.always_on.push_back(it.id);
            used += it.size;
        }
    if (used > instance.capacity()) throw std::invalid_argument("ha2: always-on groups exceed the capacity");
    const Size cap = instance.capacity() - used;

    std::vector<std::vector<Bin>> packed(live);
    std::vector<mpq_class> weight(live);
    mpq_class total = 0;
    for (std::size_t i = 0; i < live; ++i) {
        if (k_per_group[i] < 1) throw std::invalid_argument("ha2: multiplicities must be positive");
        std::vector<AgentId> order;
        for (const Item& it : groups[i].items) order.push_back(it.id);
        order = order_stream(instance, std::move(order), backend);
        packed[i] = first_fit(repeat_stream(order, k_per_group[i]), instance.demands(), cap, Search::tree);
        weight[i] = mpq_class(mpz_class(1) << (groups[i].index - groups[0].index)) * k_per_group[0] / k_per_group[i];
        weight[i].canonicalize();
        total += weight[i] * static_cast<long>(packed[i].size());
    }

    std::vector<mpq_class> time(instance.size(), 0);
    for (AgentId a : s.always_on) time[a] = 1;
    for (std::size_t i = 0; i < live; ++i) {
        const mpq_class t = weight[i] / total;
        for (Bin& b : packed[i]) {
            for (AgentId a : b) time[a] += t;
            s.bins.push_back(std::move(b));
            s.durations.push_back(t);
        }
    }
    s.watts = watts_from_times(instance, time);
    return s;
}

WattsSolution ha2(const Instance& instance, int k, Backend backend)
{
    if (instance.volume() <= instance.capacity()) return everyone_connected(instance);
    std::vector<DyadicGroup> groups = geometric_grouping(all_items(instance));
    const Size room = instance.capacity() - instance.max_demand();
    std::size_t suffix = 0;
    Size sum;
    for (std::size_t i = groups.size(); i-- > 1;) {
        Size v;
        for (const Item& it : groups[i].items) v += it.size;
        if (sum + v > room) break;
        sum += v;
        ++suffix;
    }
    std::optional<WattsSolution> best;
    for (std::size_t s = 0; s <= suffix; ++s) {
        std::vector<int> ks(groups.size() - s, k);
        WattsSolution cand = ha2_at(instance, ks, s, backend);
        if (!best || preferred(cand, *best)) best = std::move(cand);
    }
    return *best;
}

std::vector<DemandGroup> ha3_groups(const Instance& instance, double u)
{
    if (!(u > 0)) throw std::invalid_argument("u must be positive");
    const Size target = Size::micro(static_cast<std::int64_t>(std::ceil(instance.max_demand().raw() * static_cast<long double>(u))));
    std::vector<AgentId> order = decreasing_order(instance);
    std::vector<DemandGroup> groups;
    for (AgentId a : order) {
        if (groups.empty() || groups.back().volume >= target) groups.push_back({});
        groups.back().members.push_back(a);
        groups.back().volume += instance.demand(a);
    }
    for (DemandGroup& grp : groups) grp.pseudo = std::max(grp.volume, target);
    return groups;
}

namespace {

// Group indices sorted by ascending pseudo-size, ties by formation order.
std::vector<std::size_t> groups_ascending(const std::vector<DemandGroup>& groups)
{
    std::vector<std::size_t> order(groups.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return groups[a].pseudo < groups[b].pseudo; });
    return order;
}

}  // namespace

WattsSolution ha3_at(const Instance& instance, int k, double u, std::size_t g, Backend backend)
{
    std::vector<DemandGroup> groups = ha3_groups(instance, u);
    std::vector<std::size_t> asc = groups_ascending(groups);
    if (g >= groups.size()) throw std::invalid_argument("ha3: every group would be always on");

    std::vector<bool> on(groups.size(), false);
    std::vector<AgentId> always_on;
    Size used;
    for (std::size_t i = 0; i < g; ++i) {
        on[asc[i]] = true;
        used += groups[asc[i]].volume;
        for (AgentId a : groups[asc[i]].members) always_on.push_back(a);
    }
    if (used > instance.capacity()) throw std::invalid_argument("ha3: always-on groups exceed the capacity");
    const Size cap = instance.capacity() - used;

    // Super-agents are group indices sized by their pseudo-size.
    std::vector<Item> remaining;
    std::vector<Size> pseudo;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        pseudo.push_back(groups[i].pseudo);
        if (!on[i]) remaining.push_back({static_cast<AgentId>(i), groups[i].pseudo});
    }
    CopiesInstance ci = derive_copies_instance(remaining, k, max_size(remaining));
    std::vector<AgentId> stream = std::move(ci.stream);
    if (backend == Backend::ffdk)
        std::stable_sort(stream.begin(), stream.end(), [&](AgentId a, AgentId b) { return pseudo[a] > pseudo[b]; });
    for (AgentId gi : stream)
        if (pseudo[gi] > cap) throw PreconditionError("ha3: a group does not fit the remaining capacity");
    std::vector<Bin> group_bins = first_fit(stream, pseudo, cap, Search::tree);

    std::vector<Bin> bins;
    for (const Bin& gb : group_bins) {
        Bin b;
        for (AgentId gi : gb) b.insert(b.end(), groups[gi].members.begin(), groups[gi].members.end());
        bins.push_back(std::move(b));
    }
    return uniform_solution(instance, g, std::move(always_on), std::move(bins));
}

WattsSolution ha3(const Instance& instance, int k, double u, Backend backend)
{
    if (instance.volume() <= instance.capacity()) return everyone_connected(instance);
    std::vector<DemandGroup> groups = ha3_groups(instance, u);
    std::vector<std::size_t> asc = groups_ascending(groups);
    Size biggest;
    for (const DemandGroup& grp : groups) biggest = std::max(biggest, grp.pseudo);
    if (biggest > instance.capacity()) throw PreconditionError("ha3: a group exceeds the capacity");
    const Size room = instance.capacity() - biggest;
    std::size_t g_max = 0;
    Size sum;
    for (std::size_t i : asc) {
        if (i == asc.back() || sum + groups[i].pseudo > room) break;
        sum += groups[i].pseudo;
        ++g_max;
    }
    return ternary_search([&](std::size_t g) { return ha3_at(instance, k, u, g, backend); }, 0, g_max);
}

}  // namespace kbp
