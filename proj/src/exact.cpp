#include "kbp/exact.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "kbp/errors.hpp"
#include "kbp/greedy.hpp"
#include "kbp/lp.hpp"

namespace kbp {

ExactResult exact_kbp(const Instance& instance, int k, const ExactOptions& options)
{
    if (k < 1) throw std::invalid_argument("k must be positive");
    ConfigurationSystem sys = enumerate_configurations(instance, options.config_cap);
    IlpOptions ilp;
    ilp.node_budget = options.node_budget;
    ilp.initial.push_back(counts_from_packing(sys, instance, ffdk(instance, k, Search::tree)));
    ilp.initial.push_back(counts_from_packing(sys, instance, ffk(instance, k, Search::tree)));
    IntegerSolution sol = solve_integer(sys, k, ilp);

    ExactResult out;
    out.packing = realize_solution(sol.counts, sys, k);
    out.optimal = sol.optimal;
    out.lower_bound = std::max(sol.lower_bound, volume_bound(instance, k));
    out.volume_certified = sol.bins == volume_bound(instance, k);
    out.optimal = out.optimal || out.volume_certified;
    out.nodes = sol.nodes;
    return out;
}

RmaxResult rmax(const Instance& instance, std::size_t cap)
{
    const std::size_t n = instance.size();
    std::vector<std::vector<AgentId>> subsets;
    std::vector<AgentId> cur;
    auto rec = [&](auto&& self, AgentId a, Size room) -> void {
        if (a == n) {
            if (!cur.empty()) {
                if (subsets.size() >= cap)
                    throw InstanceTooLarge("more than " + std::to_string(cap) + " feasible agent subsets");
                subsets.push_back(cur);
            }
            return;
        }
        if (instance.demand(a) <= room) {
            cur.push_back(a);
            self(self, a + 1, room - instance.demand(a));
            cur.pop_back();
        }
        self(self, a + 1, room);
    };
    rec(rec, 0, instance.capacity());

    // Rows 0..n-1: sum_w lambda_w w_i - r = 0; row n: sum_w lambda_w = 1. Minimize -r.
    lp::Problem p;
    p.rows = static_cast<int>(n) + 1;
    p.rhs.assign(n, 0);
    p.rhs.emplace_back(1);
    for (const auto& w : subsets) {
        lp::SparseColumn col;
        for (AgentId a : w) col.entries.emplace_back(static_cast<int>(a), 1);
        col.entries.emplace_back(static_cast<int>(n), 1);
        p.add_column(std::move(col), 0);
    }
    lp::SparseColumn rcol;
    for (std::size_t i = 0; i < n; ++i) rcol.entries.emplace_back(static_cast<int>(i), -1);
    p.add_column(std::move(rcol), -1);

    lp::Result res = lp::solve(p);
    if (res.status != lp::Status::optimal) throw std::logic_error("rmax program is not solvable");
    RmaxResult out;
    out.r_max = res.x.back();
    for (std::size_t j = 0; j < subsets.size(); ++j)
        if (res.x[j] != 0) out.support.push_back({subsets[j], res.x[j]});
    return out;
}

std::optional<MinimalK> minimal_k(const Instance& instance, int k_max, const ExactOptions& options)
{
    if (k_max < 1) throw std::invalid_argument("k_max must be positive");
    const mpq_class r = rmax(instance, options.config_cap).r_max;
    const long step = r.get_num().get_si();  // k / r integral iff numerator divides k
    ConfigurationSystem sys = enumerate_configurations(instance, options.config_cap);
    for (long k = step; k <= k_max; k += step) {
        const mpq_class target_q = mpq_class(k) / r;
        const std::int64_t target = target_q.get_num().get_si();
        IlpOptions ilp;
        ilp.node_budget = options.node_budget;
        ilp.cutoff = target;
        ilp.initial.push_back(counts_from_packing(sys, instance, ffdk(instance, static_cast<int>(k), Search::tree)));
        IntegerSolution sol = solve_integer(sys, static_cast<int>(k), ilp);
        if (!sol.counts.empty() && sol.bins == target) return MinimalK{static_cast<int>(k), target};
        if (!sol.optimal) throw std::runtime_error("minimal_k: node budget exhausted at k=" + std::to_string(k));
    }
    return std::nullopt;
}

DeterminantBound a_n(int n)
{
    static constexpr std::array<double, 21> known{1,      1,       2,       3,        5,        9,        32,
                                                  56,     144,     320,     1458,     3645,     9477,     25515,
                                                  131072, 327680,  1114112, 3411968,  19531250, 56640625, 195312500};
    if (n < 1) throw std::invalid_argument("a_n: n must be positive");
    if (n <= 21) return {known[n - 1], false};
    const double hadamard = std::exp2(-n) * std::pow(n + 1.0, (n + 1.0) / 2.0);
    return {hadamard, true};
}

}  // namespace kbp
