#pragma once

#include <cstdint>
#include <vector>

#include "kbp/datagen.hpp"
#include "kbp/watts.hpp"
#include "kbp/welfare.hpp"

namespace kbp {

struct SimulationOptions {
    int k = 1;
    Backend alg = Backend::ffk;
    double sigma = 0.05;
    int runs = 9;
    std::uint64_t seed = 1;
    bool discard_warmup = true;  // leave the first four weeks out of the comfort metrics
    bool parallel = true;        // pack hours concurrently (results are identical)
};

// Welfare over agents of the utilities accumulated over all hours.
struct RunMetrics {
    WelfareReport time;     // connection hours
    WelfareReport watts;    // kWh
    WelfareReport comfort;  // comfort-weighted connection hours
};

struct SimulationResult {
    std::vector<RunMetrics> runs;
    RunMetrics mean;
    RunMetrics sd;  // sample standard deviation over runs
};

// Bins used in every hour when packing `series` (perturbed demands, recorded supply).
std::vector<std::size_t> bins_per_hour(const DemandSeries& series, int k, Backend alg, bool parallel);

// One run: each hour is packed with the chosen algorithm and every agent
// receives k/q of the hour. Comfort comes from the recorded series.
RunMetrics simulate_run(const DemandSeries& perturbed, const DemandMatrix& comfort, const SimulationOptions& options);

SimulationResult simulate(const DemandSeries& recorded, const SimulationOptions& options);

}  // namespace kbp
