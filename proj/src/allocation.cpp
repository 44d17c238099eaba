#include "kbp/allocation.hpp"

#include "kbp/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace kbp {

TimeAllocation uniform_allocation(const Packing& packing)
{
    if (packing.bins.empty()) throw std::invalid_argument("uniform_allocation: empty packing");
    const mpq_class d(1, static_cast<unsigned long>(packing.bins.size()));
    return {packing.bins, std::vector<mpq_class>(packing.bins.size(), d)};
}

mpq_class utility_time(const TimeAllocation& alloc, AgentId agent)
{
    mpq_class t = 0;
    for (std::size_t b = 0; b < alloc.bins.size(); ++b)
        if (std::find(alloc.bins[b].begin(), alloc.bins[b].end(), agent) != alloc.bins[b].end())
            t += alloc.durations[b];
    return t;
}

mpq_class utility_watts_exact(const TimeAllocation& alloc, const Instance& instance, AgentId agent)
{
    if (agent >= instance.size()) throw std::out_of_range("unknown agent");
    return utility_time(alloc, agent) * to_rational(instance.demand(agent));
}

double utility_watts(const TimeAllocation& alloc, const Instance& instance, AgentId agent)
{
    return utility_watts_exact(alloc, instance, agent).get_d();
}

std::vector<mpq_class> connection_times(const TimeAllocation& alloc, std::size_t n)
{
    std::vector<mpq_class> t(n, 0);
    for (std::size_t b = 0; b < alloc.bins.size(); ++b)
        for (AgentId a : alloc.bins[b]) t.at(a) += alloc.durations[b];
    return t;
}

DemandMatrix comfort_table(const DemandMatrix& history)
{
    if (history.hours() == 0 || history.agents() == 0) throw std::invalid_argument("comfort: empty history");
    const std::size_t H = history.hours(), n = history.agents();
    DemandMatrix raw(H, n);
    for (std::size_t h = 0; h < H; ++h) {
        const std::size_t weeks = std::min(comfort_weeks, h / hours_per_week);
        for (std::size_t a = 0; a < n; ++a) {
            if (weeks == 0) {
                raw(h, a) = history(h, a);
                continue;
            }
            double s = 0;
            for (std::size_t w = 1; w <= weeks; ++w) s += history(h - w * hours_per_week, a);
            raw(h, a) = s / static_cast<double>(weeks);
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        double top = 0;
        for (std::size_t h = 0; h < H; ++h) top = std::max(top, raw(h, a));
        for (std::size_t h = 0; h < H; ++h) raw(h, a) = top > 0 ? raw(h, a) / top : 0;
    }
    return raw;
}

double comfort(const DemandMatrix& history, std::size_t agent, std::size_t hour)
{
    if (history.hours() == 0 || history.agents() == 0) throw std::invalid_argument("comfort: empty history");
    if (agent >= history.agents() || hour >= history.hours()) throw std::out_of_range("comfort: bad index");
    return comfort_table(history)(hour, agent);
}

HourReport hour_report(const TimeAllocation& alloc, const Instance& instance, const std::vector<double>& comfort)
{
    const std::size_t n = instance.size();
    if (comfort.size() != n) throw std::invalid_argument("hour_report: comfort vector has the wrong length");
    std::vector<mpq_class> t = connection_times(alloc, n);
    std::vector<double> time(n), watts(n), comf(n);
    for (AgentId a = 0; a < n; ++a) {
        time[a] = t[a].get_d();
        watts[a] = mpq_class(t[a] * to_rational(instance.demand(a))).get_d();
        comf[a] = comfort[a] * time[a];
    }
    return {welfare(time), welfare(watts), welfare(comf)};
}

}  // namespace kbp
