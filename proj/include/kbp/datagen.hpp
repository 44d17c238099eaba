#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "kbp/allocation.hpp"
#include "kbp/packing.hpp"

namespace kbp {

using Rng = std::mt19937_64;

// Independent seed for sub-stream `index` of `seed` (SplitMix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Integer draws in [2, S-1] micro-units until the next draw would overflow S;
// the remainder closes the batch. Sums to S exactly.
std::vector<Size> generate_items(Size capacity, Rng& rng);

struct GeneratedInstance {
    Instance instance;
    int opt = 0;
    std::vector<Bin> certificate;  // opt full bins, one per batch
};

// opt batches of generate_items, shuffled. OPT(D_k) = k * opt.
GeneratedInstance generate_instance(Size capacity, int opt, Rng& rng);

struct SeriesProfile {
    double base_min = 0.2;     // kW
    double base_max = 2.0;     // kW
    double diurnal = 0.8;      // evening peak amplitude, relative
    double weekly = 0.15;      // weekend uplift, relative
    double noise = 0.1;        // multiplicative noise sd
};

struct DemandSeries {
    DemandMatrix demand;               // hours x agents, kW
    std::vector<double> supply_per_day;

    double supply(std::size_t hour) const { return supply_per_day.at(hour / 24); }
};

// Supply of each day is the mean hourly aggregate demand of that day.
// Throws std::invalid_argument unless hours is a positive multiple of 24.
DemandSeries generate_timeseries(std::size_t agents, std::size_t hours, Rng& rng, const SeriesProfile& profile = {});

constexpr double demand_floor = 1e-3;

// Each demand redrawn from normal(recorded, sigma), clamped below at demand_floor.
DemandSeries perturb_demands(const DemandSeries& series, double sigma, Rng& rng);

// CSV with header hour,agent_0,...,agent_{n-1},supply. Lines starting with '#' are skipped.
void write_series_csv(std::ostream& out, const DemandSeries& series);
DemandSeries read_series_csv(std::istream& in);

}  // namespace kbp
