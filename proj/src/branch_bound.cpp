#include <algorithm>
#include <stdexcept>

#include "kbp/configlp.hpp"
#include "kbp/lp.hpp"

namespace kbp {
namespace {

std::int64_t ceil_int(const mpq_class& v)
{
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return c.get_si();
}

struct Bound {
    std::size_t var;
    std::int64_t lo;
    std::optional<std::int64_t> up;
};

}  // namespace

IntegerSolution solve_integer(const ConfigurationSystem& sys, int k, const IlpOptions& options)
{
    lp::Problem prob;
    prob.rows = static_cast<int>(sys.m());
    for (std::size_t i = 0; i < sys.m(); ++i) prob.rhs.emplace_back(static_cast<long>(k) * sys.counts[i]);
    std::vector<Size> config_load;
    for (const auto& c : sys.configs) {
        lp::SparseColumn col;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) col.entries.emplace_back(static_cast<int>(i), c[i]);
        prob.add_column(std::move(col), 1);
        config_load.push_back(sys.load(c));
    }

    IntegerSolution best;
    std::int64_t incumbent = options.cutoff ? *options.cutoff + 1 : INT64_MAX;
    auto offer = [&](const std::vector<std::int64_t>& counts) {
        std::int64_t bins = 0;
        for (auto c : counts) bins += c;
        if (bins < incumbent) {
            incumbent = bins;
            best.counts = counts;
            best.bins = bins;
        }
    };
    for (const auto& c : options.initial) offer(c);

    std::vector<std::vector<Bound>> stack{{}};
    bool root = true;
    bool exhausted = true;
    while (!stack.empty()) {
        if (best.nodes >= options.node_budget) {
            exhausted = false;
            break;
        }
        std::vector<Bound> node = std::move(stack.back());
        stack.pop_back();
        ++best.nodes;

        for (const Bound& b : node) {
            prob.lower[b.var] = b.lo;
            if (b.up) prob.upper[b.var] = mpq_class(*b.up);
            else prob.upper[b.var].reset();
        }
        lp::Result r = lp::solve(prob);
        for (const Bound& b : node) {
            prob.lower[b.var] = 0;
            prob.upper[b.var].reset();
        }

        if (r.status != lp::Status::optimal) {
            if (root) throw std::logic_error("configuration program is infeasible");
            continue;
        }
        const std::int64_t bound = ceil_int(r.objective);
        if (root) {
            best.lower_bound = bound;
            root = false;
        }
        if (bound >= incumbent) continue;

        LpSolution lp_sol{r.x, r.objective, true};
        RoundedSolution rounded = round_lp(lp_sol, sys, k);
        offer(rounded.counts);
        if (incumbent <= best.lower_bound) break;
        if (bound >= incumbent) continue;

        // Most fractional count; ties by larger configuration load, then lower index.
        std::optional<std::size_t> pick;
        mpq_class pick_dist;
        const mpq_class half(1, 2);
        for (std::size_t j = 0; j < sys.t(); ++j) {
            const mpq_class& v = r.x[j];
            if (v.get_den() == 1) continue;
            mpq_class frac = v - mpq_class(ceil_int(v) - 1);
            mpq_class dist = abs(frac - half);
            if (!pick || dist < pick_dist || (dist == pick_dist && config_load[j] > config_load[*pick])) {
                pick = j;
                pick_dist = dist;
            }
        }
        if (!pick) continue;  // integral; already offered through rounding

        const std::int64_t fl = ceil_int(r.x[*pick]) - 1;
        std::vector<Bound> down = node, up = node;
        auto tighten = [&](std::vector<Bound>& bs, std::int64_t lo, std::optional<std::int64_t> hi) {
            for (Bound& b : bs)
                if (b.var == *pick) {
                    b.lo = std::max(b.lo, lo);
                    if (hi) b.up = b.up ? std::min(*b.up, *hi) : *hi;
                    return;
                }
            bs.push_back({*pick, lo, hi});
        };
        tighten(down, 0, fl);
        tighten(up, fl + 1, std::nullopt);
        stack.push_back(std::move(down));
        stack.push_back(std::move(up));
    }

    best.optimal = exhausted;
    if (!best.counts.empty() && best.bins <= best.lower_bound) best.optimal = true;
    return best;
}

}  // namespace kbp
