#include "kbp/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "kbp/errors.hpp"

namespace kbp {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<Size> generate_items(Size capacity, Rng& rng)
{
    const std::int64_t S = capacity.raw();
    if (S < 3) return {capacity};
    std::uniform_int_distribution<std::int64_t> draw(2, S - 1);
    std::vector<Size> items;
    std::int64_t sum = 0;
    while (sum < S) {
        std::int64_t r = draw(rng);
        if (sum + r > S) r = S - sum;
        items.push_back(Size::micro(r));
        sum += r;
    }
    return items;
}

GeneratedInstance generate_instance(Size capacity, int opt, Rng& rng)
{
    if (opt < 1) throw std::invalid_argument("opt must be positive");
    std::vector<Size> sizes;
    std::vector<std::size_t> batch_of;
    for (int b = 0; b < opt; ++b)
        for (Size s : generate_items(capacity, rng)) {
            sizes.push_back(s);
            batch_of.push_back(static_cast<std::size_t>(b));
        }
    std::vector<std::size_t> perm(sizes.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);

    std::vector<Size> demands(sizes.size());
    std::vector<Bin> certificate(static_cast<std::size_t>(opt));
    for (std::size_t pos = 0; pos < perm.size(); ++pos) {
        demands[pos] = sizes[perm[pos]];
        certificate[batch_of[perm[pos]]].push_back(static_cast<AgentId>(pos));
    }
    return {Instance(std::move(demands), capacity), opt, std::move(certificate)};
}

DemandSeries generate_timeseries(std::size_t agents, std::size_t hours, Rng& rng, const SeriesProfile& p)
{
    if (agents == 0 || hours == 0 || hours % 24 != 0)
        throw std::invalid_argument("timeseries needs agents and a positive multiple of 24 hours");
    std::uniform_real_distribution<double> base(p.base_min, p.base_max);
    std::uniform_real_distribution<double> peak_hour(17.0, 21.0);
    std::normal_distribution<double> noise(0.0, 1.0);

    std::vector<double> b(agents), peak(agents);
    for (std::size_t a = 0; a < agents; ++a) {
        b[a] = base(rng);
        peak[a] = peak_hour(rng);
    }

    DemandSeries s{DemandMatrix(hours, agents), std::vector<double>(hours / 24, 0.0)};
    for (std::size_t h = 0; h < hours; ++h) {
        const double hod = static_cast<double>(h % 24);
        const bool weekend = (h / 24) % 7 >= 5;
        for (std::size_t a = 0; a < agents; ++a) {
            double dist = std::abs(hod - peak[a]);
            dist = std::min(dist, 24.0 - dist);
            const double shape = std::exp(-dist * dist / 8.0) - 0.25;
            double d = b[a] * (1.0 + p.diurnal * shape) * (1.0 + (weekend ? p.weekly : 0.0));
            if (p.noise > 0) d *= 1.0 + p.noise * noise(rng);
            s.demand(h, a) = std::max(d, demand_floor);
        }
    }
    for (std::size_t day = 0; day < hours / 24; ++day) {
        double total = 0;
        for (std::size_t h = day * 24; h < day * 24 + 24; ++h)
            for (std::size_t a = 0; a < agents; ++a) total += s.demand(h, a);
        s.supply_per_day[day] = total / 24.0;
    }
    return s;
}

DemandSeries perturb_demands(const DemandSeries& series, double sigma, Rng& rng)
{
    if (sigma < 0) throw std::invalid_argument("sigma must be non-negative");
    DemandSeries out = series;
    if (sigma == 0) return out;
    std::normal_distribution<double> noise(0.0, sigma);
    for (std::size_t h = 0; h < out.demand.hours(); ++h)
        for (std::size_t a = 0; a < out.demand.agents(); ++a)
            out.demand(h, a) = std::max(series.demand(h, a) + noise(rng), demand_floor);
    return out;
}

void write_series_csv(std::ostream& out, const DemandSeries& series)
{
    out << "hour";
    for (std::size_t a = 0; a < series.demand.agents(); ++a) out << ",agent_" << a;
    out << ",supply\n";
    out.precision(9);
    for (std::size_t h = 0; h < series.demand.hours(); ++h) {
        out << h;
        for (std::size_t a = 0; a < series.demand.agents(); ++a) out << ',' << series.demand(h, a);
        out << ',' << series.supply(h) << '\n';
    }
}

DemandSeries read_series_csv(std::istream& in)
{
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) header.push_back(cell);
        break;
    }
    if (header.size() < 3 || header.front() != "hour" || header.back() != "supply")
        throw ParseError("series CSV header must be hour,agent_0,...,supply");
    const std::size_t agents = header.size() - 2;

    std::vector<std::vector<double>> rows;
    std::vector<double> supply;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::vector<double> cells;
        for (std::string cell; std::getline(ss, cell, ',');) {
            try {
                std::size_t used = 0;
                cells.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw ParseError("trailing characters");
            } catch (const std::exception&) {
                throw ParseError("bad number '" + cell + "' in series CSV");
            }
        }
        if (cells.size() != agents + 2) throw ParseError("series CSV row has the wrong number of columns");
        if (static_cast<std::size_t>(cells[0]) != rows.size()) throw ParseError("series CSV hours must be 0,1,2,...");
        for (std::size_t a = 1; a <= agents; ++a)
            if (!(cells[a] > 0)) throw ParseError("series CSV demands must be positive");
        supply.push_back(cells.back());
        rows.emplace_back(cells.begin() + 1, cells.end() - 1);
    }
    if (rows.empty()) throw ParseError("series CSV has no rows");
    DemandSeries s{DemandMatrix(rows.size(), agents), {}};
    for (std::size_t h = 0; h < rows.size(); ++h) {
        for (std::size_t a = 0; a < agents; ++a) s.demand(h, a) = rows[h][a];
        if (h % 24 == 0) s.supply_per_day.push_back(supply[h]);
    }
    return s;
}

}  // namespace kbp
