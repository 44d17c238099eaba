#include "kbp/simulation.hpp"

#include <cmath>
#include <stdexcept>

#include "kbp/errors.hpp"
#include "kbp/greedy.hpp"

namespace kbp {
namespace {

std::size_t bins_for_hour(const DemandSeries& series, std::size_t h, int k, Backend alg)
{
    const std::size_t n = series.demand.agents();
    std::vector<Size> demands(n);
    for (std::size_t a = 0; a < n; ++a) demands[a] = Size::from_double(std::max(series.demand(h, a), demand_floor));
    const Size cap = Size::from_double(series.supply(h));
    Instance inst(std::move(demands), cap);
    // With everything fitting one bin, both algorithms give exactly k bins.
    if (inst.volume() <= cap) return static_cast<std::size_t>(k);
    Packing p = alg == Backend::ffdk ? ffdk(inst, k, Search::tree) : ffk(inst, k, Search::tree);
    return p.size();
}

WelfareReport mean_of(const std::vector<WelfareReport>& r)
{
    WelfareReport m;
    for (const auto& x : r) {
        m.utilitarian += x.utilitarian;
        m.egalitarian += x.egalitarian;
        m.max_utility_difference += x.max_utility_difference;
    }
    const double n = static_cast<double>(r.size());
    return {m.utilitarian / n, m.egalitarian / n, m.max_utility_difference / n};
}

WelfareReport sd_of(const std::vector<WelfareReport>& r, const WelfareReport& m)
{
    if (r.size() < 2) return {};
    WelfareReport s;
    for (const auto& x : r) {
        s.utilitarian += (x.utilitarian - m.utilitarian) * (x.utilitarian - m.utilitarian);
        s.egalitarian += (x.egalitarian - m.egalitarian) * (x.egalitarian - m.egalitarian);
        s.max_utility_difference +=
            (x.max_utility_difference - m.max_utility_difference) * (x.max_utility_difference - m.max_utility_difference);
    }
    const double d = static_cast<double>(r.size() - 1);
    return {std::sqrt(s.utilitarian / d), std::sqrt(s.egalitarian / d), std::sqrt(s.max_utility_difference / d)};
}

}  // namespace

std::vector<std::size_t> bins_per_hour(const DemandSeries& series, int k, Backend alg, bool parallel)
{
    if (k < 1) throw std::invalid_argument("k must be positive");
    const std::size_t H = series.demand.hours();
    std::vector<std::size_t> q(H);
    if (!parallel) {
        for (std::size_t h = 0; h < H; ++h) q[h] = bins_for_hour(series, h, k, alg);
        return q;
    }
    bool failed = false;
    std::string error;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t h = 0; h < H; ++h) {
        try {
            q[h] = bins_for_hour(series, h, k, alg);
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failed = true;
                error = e.what();
            }
        }
    }
    if (failed) throw PreconditionError(error);
    return q;
}

RunMetrics simulate_run(const DemandSeries& perturbed, const DemandMatrix& comfort, const SimulationOptions& opt)
{
    const std::size_t H = perturbed.demand.hours(), n = perturbed.demand.agents();
    const std::vector<std::size_t> q = bins_per_hour(perturbed, opt.k, opt.alg, opt.parallel);
    const std::size_t warmup = opt.discard_warmup ? comfort_weeks * hours_per_week : 0;

    std::vector<double> time(n, 0.0), watts(n, 0.0), comf(n, 0.0);
    for (std::size_t h = 0; h < H; ++h) {
        const double share = static_cast<double>(opt.k) / static_cast<double>(q[h]);
        for (std::size_t a = 0; a < n; ++a) {
            time[a] += share;
            watts[a] += perturbed.demand(h, a) * share;
            if (h >= warmup) comf[a] += comfort(h, a) * share;
        }
    }
    return {welfare(time), welfare(watts), welfare(comf)};
}

SimulationResult simulate(const DemandSeries& recorded, const SimulationOptions& opt)
{
    if (opt.runs < 1) throw std::invalid_argument("runs must be positive");
    const DemandMatrix comfort = comfort_table(recorded.demand);
    SimulationResult out;
    for (int r = 0; r < opt.runs; ++r) {
        Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(r)));
        out.runs.push_back(simulate_run(perturb_demands(recorded, opt.sigma, rng), comfort, opt));
    }
    std::vector<WelfareReport> t, w, c;
    for (const auto& r : out.runs) {
        t.push_back(r.time);
        w.push_back(r.watts);
        c.push_back(r.comfort);
    }
    out.mean = {mean_of(t), mean_of(w), mean_of(c)};
    out.sd = {sd_of(t, out.mean.time), sd_of(w, out.mean.watts), sd_of(c, out.mean.comfort)};
    return out;
}

}  // namespace kbp
