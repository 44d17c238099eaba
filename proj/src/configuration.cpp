#include "kbp/configlp.hpp"

#include <algorithm>
#include <stdexcept>

#include "kbp/errors.hpp"
#include "kbp/lp.hpp"

namespace kbp {

Size ConfigurationSystem::load(const Configuration& c) const
{
    Size s;
    for (std::size_t i = 0; i < c.size(); ++i) s += sizes[i] * c[i];
    return s;
}

std::optional<std::size_t> ConfigurationSystem::find(const Configuration& c) const
{
    auto it = index.find(c);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

ConfigurationSystem enumerate_configurations(const Instance& instance, std::size_t cap)
{
    ConfigurationSystem sys;
    sys.capacity = instance.capacity();
    std::map<Size, std::vector<AgentId>, std::greater<>> classes;
    for (AgentId a = 0; a < instance.size(); ++a) classes[instance.demand(a)].push_back(a);
    for (auto& [s, ids] : classes) {
        sys.sizes.push_back(s);
        sys.counts.push_back(static_cast<int>(ids.size()));
        sys.members.push_back(std::move(ids));
    }

    const std::size_t m = sys.m();
    Configuration cur(m, 0);
    auto rec = [&](auto&& self, std::size_t i, Size room) -> void {
        if (i == m) {
            if (std::any_of(cur.begin(), cur.end(), [](int v) { return v > 0; })) {
                if (sys.configs.size() >= cap)
                    throw InstanceTooLarge("more than " + std::to_string(cap) + " feasible configurations");
                sys.configs.push_back(cur);
            }
            return;
        }
        int most = static_cast<int>(std::min<std::int64_t>(sys.counts[i], room.raw() / sys.sizes[i].raw()));
        for (int a = most; a >= 0; --a) {
            cur[i] = a;
            self(self, i + 1, room - sys.sizes[i] * a);
        }
        cur[i] = 0;
    };
    rec(rec, 0, sys.capacity);
    for (std::size_t j = 0; j < sys.configs.size(); ++j) sys.index.emplace(sys.configs[j], j);
    return sys;
}

namespace {

lp::Problem configuration_lp(const ConfigurationSystem& sys, int k)
{
    lp::Problem p;
    p.rows = static_cast<int>(sys.m());
    for (std::size_t i = 0; i < sys.m(); ++i) p.rhs.emplace_back(static_cast<long>(k) * sys.counts[i]);
    for (const auto& c : sys.configs) {
        lp::SparseColumn col;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) col.entries.emplace_back(static_cast<int>(i), c[i]);
        p.add_column(std::move(col), 1);
    }
    return p;
}

std::int64_t floor_int(const mpq_class& v)
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return f.get_si();
}

}  // namespace

LpSolution solve_fractional(const ConfigurationSystem& system, int k)
{
    lp::Result r = lp::solve(configuration_lp(system, k));
    if (r.status != lp::Status::optimal) throw std::logic_error("configuration LP is not solvable");
    LpSolution s{std::move(r.x), r.objective, true};
    std::size_t nonzero = std::count_if(s.x.begin(), s.x.end(), [](const mpq_class& v) { return v != 0; });
    s.basic = nonzero <= system.m();
    return s;
}

RoundedSolution round_lp(const LpSolution& solution, const ConfigurationSystem& sys, int k)
{
    const std::size_t m = sys.m();
    RoundedSolution out;
    out.lp_objective = solution.objective;
    out.counts.assign(sys.t(), 0);
    std::vector<std::int64_t> residual(m);
    for (std::size_t i = 0; i < m; ++i) residual[i] = static_cast<std::int64_t>(k) * sys.counts[i];
    std::vector<std::size_t> fractional;
    for (std::size_t j = 0; j < sys.t(); ++j) {
        std::int64_t f = floor_int(solution.x[j]);
        out.counts[j] = f;
        out.floor_bins += f;
        for (std::size_t i = 0; i < m; ++i) residual[i] -= f * sys.configs[j][i];
        if (solution.x[j] != f) fractional.push_back(j);
    }

    // (a) one bin per fractional configuration, trimmed to what is still needed.
    std::vector<Configuration> option_a;
    {
        std::vector<std::int64_t> left = residual;
        for (std::size_t j : fractional) {
            Configuration c(m, 0);
            bool any = false;
            for (std::size_t i = 0; i < m; ++i) {
                c[i] = static_cast<int>(std::min<std::int64_t>(sys.configs[j][i], left[i]));
                left[i] -= c[i];
                any = any || c[i] > 0;
            }
            if (any) option_a.push_back(std::move(c));
        }
        if (std::any_of(left.begin(), left.end(), [](std::int64_t v) { return v != 0; }))
            throw std::logic_error("round_lp: solution does not satisfy A x = k n");
    }

    // (b) first fit by class, largest class first, at most n[i] of class i per bin.
    std::vector<Configuration> option_b;
    {
        std::vector<Size> loads;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::int64_t c = 0; c < residual[i]; ++c) {
                std::size_t b = 0;
                for (; b < option_b.size(); ++b)
                    if (loads[b] + sys.sizes[i] <= sys.capacity && option_b[b][i] < sys.counts[i]) break;
                if (b == option_b.size()) {
                    option_b.emplace_back(m, 0);
                    loads.emplace_back();
                }
                ++option_b[b][i];
                loads[b] += sys.sizes[i];
            }
        }
    }

    out.residual_first_fit = option_b.size() < option_a.size();
    const auto& chosen = out.residual_first_fit ? option_b : option_a;
    for (const auto& c : chosen) {
        auto j = sys.find(c);
        if (!j) throw std::logic_error("round_lp: residual bin is not a configuration");
        ++out.counts[*j];
    }
    out.bins = out.floor_bins + static_cast<std::int64_t>(chosen.size());
    return out;
}

std::vector<std::int64_t> counts_from_packing(const ConfigurationSystem& sys, const Instance& instance,
                                              const Packing& packing)
{
    std::map<Size, std::size_t> class_of;
    for (std::size_t i = 0; i < sys.m(); ++i) class_of[sys.sizes[i]] = i;
    std::vector<std::int64_t> counts(sys.t(), 0);
    for (const Bin& bin : packing.bins) {
        if (bin.empty()) continue;
        Configuration c(sys.m(), 0);
        for (AgentId a : bin) ++c[class_of.at(instance.demand(a))];
        auto j = sys.find(c);
        if (!j) throw std::invalid_argument("packing bin is not a feasible configuration");
        ++counts[*j];
    }
    return counts;
}

Packing realize_solution(std::span<const std::int64_t> counts, const ConfigurationSystem& sys, int k)
{
    const std::size_t m = sys.m();
    if (counts.size() != sys.t()) throw std::invalid_argument("realize_solution: wrong number of counts");
    std::vector<std::int64_t> cover(m, 0);
    for (std::size_t j = 0; j < sys.t(); ++j) {
        if (counts[j] < 0) throw std::invalid_argument("realize_solution: negative count");
        for (std::size_t i = 0; i < m; ++i) cover[i] += counts[j] * sys.configs[j][i];
    }
    for (std::size_t i = 0; i < m; ++i)
        if (cover[i] != static_cast<std::int64_t>(k) * sys.counts[i])
            throw std::invalid_argument("realize_solution: counts do not cover every agent k times");

    std::vector<std::size_t> head(m, 0);  // position in the virtual queue of class i
    Packing p{k, {}};
    for (std::size_t j = 0; j < sys.t(); ++j) {
        for (std::int64_t r = 0; r < counts[j]; ++r) {
            Bin bin;
            for (std::size_t i = 0; i < m; ++i) {
                const auto& ids = sys.members[i];
                for (int c = 0; c < sys.configs[j][i]; ++c) bin.push_back(ids[head[i]++ % ids.size()]);
            }
            p.bins.push_back(std::move(bin));
        }
    }
    return p;
}

}  // namespace kbp
