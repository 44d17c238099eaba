#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kbp/allocation.hpp"
#include "kbp/configlp.hpp"
#include "kbp/datagen.hpp"
#include "kbp/errors.hpp"
#include "kbp/exact.hpp"
#include "kbp/greedy.hpp"
#include "kbp/io.hpp"
#include "kbp/simulation.hpp"
#include "kbp/watts.hpp"

using namespace kbp;

namespace {

constexpr const char* version = "1.0.0";

enum Exit : int { ok = 0, invalid = 1, parse_error = 2, bad_flags = 3, budget = 4, compute = 5 };

struct FlagError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed5(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5f", v);
    return buf;
}

// Metadata comment line for CSV output.
void metadata(std::ostream& out, const std::string& command, const std::string& flags)
{
    out << "# kbp " << version << " " << command << " " << flags << "\n";
}

Backend backend_of(const std::string& name)
{
    if (name == "ffk") return Backend::ffk;
    if (name == "ffdk") return Backend::ffdk;
    throw FlagError("--alg must be ffk or ffdk here");
}

void require(bool cond, const std::string& message)
{
    if (!cond) throw FlagError(message);
}

// ---------------------------------------------------------------------------
// pack

struct PackArgs {
    std::string instance;
    std::string out;
    std::string dump_lp;
    std::string alg = "ffk";
    int k = 1;
    double eps = 0.3;
    int g = 2;
    std::int64_t node_budget = ExactOptions{}.node_budget;
    std::size_t config_cap = default_config_cap;
    bool eps_set = false;
    bool g_set = false;
};

int run_pack(const PackArgs& a)
{
    require(a.k >= 1, "--k must be positive");
    const bool scheme = a.alg == "dlvl" || a.alg == "kk1" || a.alg == "kk2";
    require(!a.eps_set || scheme, "--eps only applies to dlvl, kk1 and kk2");
    require(!a.g_set || a.alg == "kk2", "--g only applies to kk2");
    require(!a.eps_set || (a.eps > 0 && a.eps <= 0.5), "--eps must lie in (0, 0.5]");
    require(a.g >= 2, "--g must exceed 1");

    Instance inst = instance_from_json(read_json(a.instance));
    SchemeOptions so{a.config_cap, a.node_budget};
    Packing p;
    std::string optimality;
    if (a.alg == "ffk") p = ffk(inst, a.k, Search::tree);
    else if (a.alg == "ffdk") p = ffdk(inst, a.k, Search::tree);
    else if (a.alg == "nfk") p = nfk(inst, a.k);
    else if (a.alg == "dlvl") p = dlvl_pack(inst, a.k, a.eps, so).packing;
    else if (a.alg == "kk1") p = kk1_pack(inst, a.k, a.eps, so);
    else if (a.alg == "kk2") p = kk2_pack(inst, a.k, a.eps_set ? a.eps : 0, a.g, so);
    else if (a.alg == "exact") {
        ExactResult r = exact_kbp(inst, a.k, ExactOptions{a.config_cap, a.node_budget});
        p = r.packing;
        optimality = r.volume_certified ? "volume-certified" : r.optimal ? "proven" : "unknown";
    } else throw FlagError("unknown --alg " + a.alg);

    if (!a.dump_lp.empty()) {
        ConfigurationSystem sys = enumerate_configurations(inst, a.config_cap);
        LpSolution lp = solve_fractional(sys, a.k);
        write_json(a.dump_lp, configurations_to_json(sys, &lp));
    }
    if (!a.out.empty()) write_json(a.out, packing_to_json(p));

    Verdict v = validate_packing(inst, p);
    std::cout << "bins=" << p.size();
    if (!optimality.empty()) std::cout << " optimal=" << optimality;
    std::cout << " volume_bound=" << volume_bound(inst, a.k) << " verdict=" << (v.ok() ? "valid" : v.message)
              << "\n";
    if (!v.ok()) return invalid;
    if (optimality == "unknown") throw BudgetExceeded("node budget exhausted before optimality was proven");
    return ok;
}

// ---------------------------------------------------------------------------
// verify

int run_verify(const std::string& instance, const std::string& packing)
{
    Instance inst = instance_from_json(read_json(instance));
    Packing p = packing_from_json(read_json(packing));
    Verdict v = validate_packing(inst, p);
    std::cout << (v.ok() ? "valid" : "invalid: " + v.message) << " bins=" << p.size() << "\n";
    return v.ok() ? ok : invalid;
}

// ---------------------------------------------------------------------------
// ratio

struct RatioArgs {
    std::string alg = "ffk";
    std::vector<int> ks{2, 3, 4, 5};
    std::vector<int> opts{2, 3, 4, 5, 6, 7, 8, 9};
    int per_cell = 20;
    std::uint64_t seed = 1;
    double capacity = 100;
    double eps = 0.3;
};

int run_ratio(const RatioArgs& a)
{
    require(a.per_cell >= 1, "--instances-per-cell must be positive");
    require(a.capacity > 0, "--capacity must be positive");
    for (int k : a.ks) require(k >= 1, "--k-list entries must be positive");
    for (int o : a.opts) require(o >= 1, "--opt-list entries must be positive");
    const Size cap = Size::from_double(a.capacity);

    auto pack = [&](const Instance& inst, int k) -> std::size_t {
        if (a.alg == "ffk") return ffk(inst, k, Search::tree).size();
        if (a.alg == "ffdk") return ffdk(inst, k, Search::tree).size();
        if (a.alg == "nfk") return nfk(inst, k).size();
        if (a.alg == "dlvl") return dlvl_pack(inst, k, a.eps).packing.size();
        if (a.alg == "kk1") return kk1_pack(inst, k, a.eps).size();
        if (a.alg == "kk2") return kk2_pack(inst, k).size();
        throw FlagError("unknown --alg " + a.alg);
    };

    std::ostringstream flags;
    flags << "alg=" << a.alg << " instances-per-cell=" << a.per_cell << " seed=" << a.seed
          << " capacity=" << a.capacity;
    metadata(std::cout, "ratio", flags.str());
    std::cout << "k,opt,instances,max_bins,max_ratio,bound_1375,bound_11_9\n";
    std::uint64_t cell = 0;
    for (int k : a.ks)
        for (int o : a.opts) {
            std::size_t worst = 0;
            for (int i = 0; i < a.per_cell; ++i) {
                Rng rng(derive_seed(derive_seed(a.seed, cell), static_cast<std::uint64_t>(i)));
                GeneratedInstance g = generate_instance(cap, o, rng);
                worst = std::max(worst, pack(g.instance, k));
            }
            ++cell;
            const double ko = static_cast<double>(k) * o;
            std::cout << k << "," << o << "," << a.per_cell << "," << worst << "," << fixed5(worst / ko) << ","
                      << fixed5(1.375 * ko) << "," << fixed5((11 * ko + 6) / 9) << "\n";
        }
    return ok;
}

// ---------------------------------------------------------------------------
// simulate

struct SimArgs {
    std::string series;
    int k = 1;
    std::string alg = "ffk";
    double sigma = 0.05;
    int runs = 9;
    std::uint64_t seed = 1;
    bool keep_warmup = false;
    bool serial = false;
};

DemandSeries load_series(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_series_csv(in);
}

void metric_columns(std::ostream& out, const RunMetrics& m)
{
    for (const WelfareReport* w : {&m.time, &m.watts, &m.comfort})
        out << "," << fixed5(w->utilitarian) << "," << fixed5(w->egalitarian) << "," << fixed5(w->max_utility_difference);
}

constexpr const char* metric_header =
    "time_utilitarian,time_egalitarian,time_max_diff,watts_utilitarian,watts_egalitarian,watts_max_diff,"
    "comfort_utilitarian,comfort_egalitarian,comfort_max_diff";

int run_simulate(const SimArgs& a)
{
    require(a.k >= 1, "--k must be positive");
    require(a.runs >= 1, "--runs must be positive");
    require(a.sigma >= 0, "--sigma must be non-negative");
    SimulationOptions o;
    o.k = a.k;
    o.alg = backend_of(a.alg);
    o.sigma = a.sigma;
    o.runs = a.runs;
    o.seed = a.seed;
    o.discard_warmup = !a.keep_warmup;
    o.parallel = !a.serial;
    DemandSeries s = load_series(a.series);
    SimulationResult r;
    try {
        r = simulate(s, o);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(e.what());
    }

    std::ostringstream flags;
    flags << "k=" << a.k << " alg=" << a.alg << " sigma=" << a.sigma << " runs=" << a.runs << " seed=" << a.seed
          << " discard_warmup=" << (o.discard_warmup ? 1 : 0);
    metadata(std::cout, "simulate", flags.str());
    std::cout << "run," << metric_header << "\n";
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
        std::cout << i;
        metric_columns(std::cout, r.runs[i]);
        std::cout << "\n";
    }
    std::cout << "mean";
    metric_columns(std::cout, r.mean);
    std::cout << "\nsd";
    metric_columns(std::cout, r.sd);
    std::cout << "\n";
    return ok;
}

// ---------------------------------------------------------------------------
// watts

struct WattsArgs {
    std::string series;
    std::string instance;
    std::string out;
    int ha = 1;
    int k = 3;
    std::string alg = "ffk";
    double u = 0.25;
};

WattsSolution run_ha(const Instance& inst, const WattsArgs& a, Backend b)
{
    switch (a.ha) {
    case 1: return ha1(inst, a.k, b);
    case 2: return ha2(inst, a.k, b);
    case 3: return ha3(inst, a.k, a.u, b);
    default: return ha4(inst, a.k, b);
    }
}

// Smallest and largest watts over agents that are not always on.
std::pair<double, double> live_range(const WattsSolution& s)
{
    std::vector<bool> on(s.watts.size(), false);
    for (AgentId a : s.always_on) on[a] = true;
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t a = 0; a < s.watts.size(); ++a)
        if (!on[a]) {
            lo = std::min(lo, s.watts[a]);
            hi = std::max(hi, s.watts[a]);
        }
    if (lo > hi) lo = hi = 0;
    return {lo, hi};
}

int run_watts(const WattsArgs& a)
{
    require(a.ha >= 1 && a.ha <= 4, "--ha must be 1, 2, 3 or 4");
    require(a.k >= 1, "--k must be positive");
    require(a.u > 0, "--u must be positive");
    require(a.series.empty() != a.instance.empty(), "give exactly one of --series and --instance");
    const Backend b = backend_of(a.alg);

    std::ostringstream flags;
    flags << "ha=" << a.ha << " k=" << a.k << " alg=" << a.alg << " u=" << a.u;
    metadata(std::cout, "watts", flags.str());
    std::cout << "mode,ha,alg,shedding_hours,utilitarian,egalitarian,max_diff\n";

    if (!a.instance.empty()) {
        Instance inst = instance_from_json(read_json(a.instance));
        WattsSolution s = run_ha(inst, a, b);
        Verdict v = validate_watts(inst, s);
        if (!v.ok()) throw std::runtime_error("heuristic produced an invalid solution: " + v.message);
        if (!a.out.empty()) write_json(a.out, watts_to_json(s));
        double total = 0;
        for (double w : s.watts) total += w;
        const bool shedding = inst.volume() > inst.capacity();
        auto [lo, hi] = live_range(s);
        std::cout << "instance," << a.ha << "," << a.alg << "," << (shedding ? 1 : 0) << "," << fixed5(total) << ","
                  << fixed5(shedding ? lo : 0) << "," << fixed5(shedding ? hi - lo : 0) << "\n";
        return ok;
    }

    DemandSeries series = load_series(a.series);
    double utilitarian = 0, egalitarian = 0, max_diff = 0;
    std::size_t shedding = 0;
    for (std::size_t h = 0; h < series.demand.hours(); ++h) {
        std::vector<Size> d(series.demand.agents());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = Size::from_double(series.demand(h, i));
        const Size supply = Size::from_double(series.supply(h));
        Size volume;
        for (Size s : d) volume += s;
        if (volume <= supply) {
            utilitarian += volume.to_double();
            continue;
        }
        Size largest = *std::max_element(d.begin(), d.end());
        if (largest > supply) throw std::runtime_error("hour " + std::to_string(h) + ": a demand exceeds the supply");
        Instance inst(std::move(d), supply);
        WattsSolution s = run_ha(inst, a, b);
        for (double w : s.watts) utilitarian += w;
        auto [lo, hi] = live_range(s);
        egalitarian += lo;
        max_diff += hi - lo;
        ++shedding;
    }
    std::cout << "series," << a.ha << "," << a.alg << "," << shedding << "," << fixed5(utilitarian) << ","
              << fixed5(egalitarian) << "," << fixed5(max_diff) << "\n";
    return ok;
}

// ---------------------------------------------------------------------------
// rmax

int run_rmax(const std::string& instance, int k_max, std::int64_t node_budget)
{
    require(k_max >= 1, "--k-max must be positive");
    Instance inst = instance_from_json(read_json(instance));
    RmaxResult r = rmax(inst);
    std::cout << "r_max=" << r.r_max.get_str() << "\n";
    ExactOptions eo;
    eo.node_budget = node_budget;
    std::optional<MinimalK> m;
    try {
        m = minimal_k(inst, k_max, eo);
    } catch (const std::runtime_error& e) {
        throw BudgetExceeded(e.what());
    }
    std::cout << "minimal_k=" << (m ? std::to_string(m->k) : "none") << "\n";
    std::cout << "k,opt\n";
    bool complete = true;
    for (int k = 1; k <= k_max; ++k) {
        ExactResult e = exact_kbp(inst, k, eo);
        complete = complete && e.optimal;
        std::cout << k << "," << e.packing.size() << (e.optimal ? "" : "?") << "\n";
    }
    if (!complete) throw BudgetExceeded("some OPT values are not proven");
    return ok;
}

// ---------------------------------------------------------------------------
// generate

struct GenArgs {
    double capacity = 100;
    std::vector<int> opts{3};
    int count = 10;
    std::uint64_t seed = 1;
    std::size_t agents = 367;
    std::size_t weeks = 13;
    std::string out;
};

int run_generate_instances(const GenArgs& a)
{
    require(a.capacity > 0, "--capacity must be positive");
    require(a.count >= 1, "--count must be positive");
    for (int o : a.opts) require(o >= 1, "--opt entries must be positive");
    std::ofstream file;
    if (!a.out.empty()) {
        file.open(a.out);
        if (!file) throw std::runtime_error("cannot write " + a.out);
    }
    std::ostream& out = a.out.empty() ? std::cout : file;
    std::uint64_t index = 0;
    for (int o : a.opts)
        for (int i = 0; i < a.count; ++i) {
            Rng rng(derive_seed(a.seed, index++));
            GeneratedInstance g = generate_instance(Size::from_double(a.capacity), o, rng);
            Json j = instance_to_json(g.instance);
            j["opt"] = g.opt;
            j["seed"] = a.seed;
            j["index"] = index - 1;
            j["certificate"] = g.certificate;
            out << j.dump() << "\n";
        }
    return ok;
}

int run_generate_series(const GenArgs& a)
{
    require(a.agents >= 1 && a.weeks >= 1, "--agents and --weeks must be positive");
    Rng rng(a.seed);
    DemandSeries s = generate_timeseries(a.agents, a.weeks * hours_per_week, rng);
    std::ofstream file;
    if (!a.out.empty()) {
        file.open(a.out);
        if (!file) throw std::runtime_error("cannot write " + a.out);
    }
    std::ostream& out = a.out.empty() ? std::cout : file;
    std::ostringstream flags;
    flags << "agents=" << a.agents << " weeks=" << a.weeks << " seed=" << a.seed;
    metadata(out, "generate series", flags.str());
    write_series_csv(out, s);
    return ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"k-times bin packing and fair electricity distribution"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);
    int code = ok;
    std::function<int()> action;

    PackArgs pack;
    auto* p = app.add_subcommand("pack", "Pack an instance k times");
    p->add_option("instance", pack.instance, "Instance JSON")->required();
    p->add_option("--k", pack.k, "Copies per agent");
    p->add_option("--alg", pack.alg, "Algorithm")
        ->check(CLI::IsMember({"ffk", "ffdk", "nfk", "dlvl", "kk1", "kk2", "exact"}));
    auto* eps_opt = p->add_option("--eps", pack.eps, "Accuracy for dlvl, kk1, kk2");
    auto* g_opt = p->add_option("--g", pack.g, "Grouping factor for kk2");
    p->add_option("--out", pack.out, "Write the packing JSON here");
    p->add_option("--dump-lp", pack.dump_lp, "Write the configuration system and fractional solution here");
    p->add_option("--node-budget", pack.node_budget, "Branch-and-bound node limit");
    p->add_option("--config-cap", pack.config_cap, "Configuration enumeration limit");
    p->callback([&] {
        pack.eps_set = eps_opt->count() > 0;
        pack.g_set = g_opt->count() > 0;
        action = [&] { return run_pack(pack); };
    });

    std::string v_inst, v_pack;
    auto* v = app.add_subcommand("verify", "Validate a packing against an instance");
    v->add_option("instance", v_inst, "Instance JSON")->required();
    v->add_option("packing", v_pack, "Packing JSON")->required();
    v->callback([&] { action = [&] { return run_verify(v_inst, v_pack); }; });

    RatioArgs ratio;
    auto* r = app.add_subcommand("ratio", "Worst bins per (k, OPT) cell on generated instances");
    r->add_option("--alg", ratio.alg)->check(CLI::IsMember({"ffk", "ffdk", "nfk", "dlvl", "kk1", "kk2"}));
    r->add_option("--k-list", ratio.ks)->delimiter(',');
    r->add_option("--opt-list", ratio.opts)->delimiter(',');
    r->add_option("--instances-per-cell", ratio.per_cell);
    r->add_option("--seed", ratio.seed);
    r->add_option("--capacity", ratio.capacity);
    r->add_option("--eps", ratio.eps, "Accuracy for dlvl and kk1");
    r->callback([&] { action = [&] { return run_ratio(ratio); }; });

    SimArgs sim;
    auto* s = app.add_subcommand("simulate", "Hourly kBP distribution over a demand series");
    s->add_option("series", sim.series, "Series CSV")->required();
    s->add_option("--k", sim.k);
    s->add_option("--alg", sim.alg)->check(CLI::IsMember({"ffk", "ffdk"}));
    s->add_option("--sigma", sim.sigma);
    s->add_option("--runs", sim.runs);
    s->add_option("--seed", sim.seed);
    s->add_flag("--keep-warmup", sim.keep_warmup, "Include the first four weeks in the comfort metrics");
    s->add_flag("--serial", sim.serial, "Pack hours on one thread");
    s->callback([&] { action = [&] { return run_simulate(sim); }; });

    WattsArgs watts;
    auto* w = app.add_subcommand("watts", "Egalitarian watts heuristics");
    w->add_option("--series", watts.series, "Series CSV");
    w->add_option("--instance", watts.instance, "Instance JSON");
    w->add_option("--ha", watts.ha, "Heuristic 1-4");
    w->add_option("--k", watts.k);
    w->add_option("--alg", watts.alg)->check(CLI::IsMember({"ffk", "ffdk"}));
    w->add_option("--u", watts.u, "Group threshold for HA3");
    w->add_option("--out", watts.out, "Write the solution JSON here (instance mode)");
    w->callback([&] { action = [&] { return run_watts(watts); }; });

    std::string rm_inst;
    int k_max = 10;
    std::int64_t rm_budget = ExactOptions{}.node_budget;
    auto* rm = app.add_subcommand("rmax", "Egalitarian connection time, minimal k and OPT table");
    rm->add_option("instance", rm_inst, "Instance JSON")->required();
    rm->add_option("--k-max", k_max);
    rm->add_option("--node-budget", rm_budget);
    rm->callback([&] { action = [&] { return run_rmax(rm_inst, k_max, rm_budget); }; });

    GenArgs gen;
    auto* g = app.add_subcommand("generate", "Generate instances or demand series");
    g->require_subcommand(1);
    auto* gi = g->add_subcommand("instances", "Known-OPT instances as JSON lines");
    gi->add_option("--capacity", gen.capacity);
    gi->add_option("--opt", gen.opts, "OPT values")->delimiter(',');
    gi->add_option("--count", gen.count, "Instances per OPT value");
    gi->add_option("--seed", gen.seed);
    gi->add_option("--out", gen.out);
    gi->callback([&] { action = [&] { return run_generate_instances(gen); }; });
    auto* gs = g->add_subcommand("series", "Synthetic hourly demand series as CSV");
    gs->add_option("--agents", gen.agents);
    gs->add_option("--weeks", gen.weeks);
    gs->add_option("--seed", gen.seed);
    gs->add_option("--out", gen.out);
    gs->callback([&] { action = [&] { return run_generate_series(gen); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return parse_error;
    }

    try {
        code = action();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        code = parse_error;
    } catch (const FlagError& e) {
        std::cerr << "invalid flags: " << e.what() << "\n";
        code = bad_flags;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        code = budget;
    } catch (const InstanceTooLarge& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        code = budget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = compute;
    }
    return code;
}
