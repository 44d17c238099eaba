#pragma once

#include <gmpxx.h>

#include <vector>

#include "kbp/packing.hpp"
#include "kbp/welfare.hpp"

namespace kbp {

struct TimeAllocation {
    std::vector<Bin> bins;
    std::vector<mpq_class> durations;  // fraction of the hour per bin, summing to 1
};

// Each of the q bins gets duration 1/q. Throws on an empty packing.
TimeAllocation uniform_allocation(const Packing& packing);

// Sum of durations of the bins holding the agent.
mpq_class utility_time(const TimeAllocation& alloc, AgentId agent);
// Energy over the hour: demand times connected time.
mpq_class utility_watts_exact(const TimeAllocation& alloc, const Instance& instance, AgentId agent);
double utility_watts(const TimeAllocation& alloc, const Instance& instance, AgentId agent);

// Connected time of every agent 0..n-1.
std::vector<mpq_class> connection_times(const TimeAllocation& alloc, std::size_t n);

// Row-major hours x agents matrix of demands in kW.
class DemandMatrix {
public:
    DemandMatrix() = default;
    DemandMatrix(std::size_t hours, std::size_t agents, double fill = 0)
        : hours_(hours), agents_(agents), data_(hours * agents, fill)
    {
    }

    std::size_t hours() const { return hours_; }
    std::size_t agents() const { return agents_; }
    double& operator()(std::size_t h, std::size_t a) { return data_[h * agents_ + a]; }
    double operator()(std::size_t h, std::size_t a) const { return data_[h * agents_ + a]; }
    const double* row(std::size_t h) const { return data_.data() + h * agents_; }

private:
    std::size_t hours_ = 0;
    std::size_t agents_ = 0;
    std::vector<double> data_;
};

constexpr std::size_t hours_per_week = 168;
constexpr std::size_t comfort_weeks = 4;

// Comfort of every agent at every hour: the mean demand at the same hour of
// week over the (up to four) preceding weeks, divided by that agent's largest
// such mean. Hours without a preceding week use the current demand.
DemandMatrix comfort_table(const DemandMatrix& history);

// Single entry of comfort_table. Throws on an empty history or bad indices.
double comfort(const DemandMatrix& history, std::size_t agent, std::size_t hour);

struct HourReport {
    WelfareReport time;
    WelfareReport watts;
    WelfareReport comfort;
};

// Comfort utility of an agent is its comfort times its connected time.
HourReport hour_report(const TimeAllocation& alloc, const Instance& instance, const std::vector<double>& comfort);

}  // namespace kbp
