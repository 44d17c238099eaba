#include "kbp/io.hpp"

#include <fstream>

#include "kbp/errors.hpp"

namespace kbp {
namespace {

Size size_from_json(const Json& j)
{
    if (j.is_string()) return Size::parse(j.get<std::string>());
    if (j.is_number()) return Size::parse(j.dump());
    throw ParseError("size must be a decimal string");
}

}  // namespace

Json instance_to_json(const Instance& instance)
{
    Json d = Json::array();
    for (Size s : instance.demands()) d.push_back(s.to_string());
    return {{"capacity", instance.capacity().to_string()}, {"demands", d}};
}

Instance instance_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("capacity") || !j.contains("demands") || !j["demands"].is_array())
        throw ParseError("instance needs \"capacity\" and a \"demands\" array");
    std::vector<Size> demands;
    for (const Json& d : j["demands"]) demands.push_back(size_from_json(d));
    try {
        return Instance(std::move(demands), size_from_json(j["capacity"]));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Json packing_to_json(const Packing& packing) { return {{"k", packing.k}, {"bins", packing.bins}}; }

Packing packing_from_json(const Json& j)
{
    try {
        Packing p;
        p.k = j.at("k").get<int>();
        p.bins = j.at("bins").get<std::vector<Bin>>();
        if (p.k < 1) throw ParseError("k must be positive");
        return p;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad packing: ") + e.what());
    }
}

Json watts_to_json(const WattsSolution& s)
{
    Json durations = Json::array();
    for (const auto& d : s.durations) durations.push_back(d.get_str());
    return {{"g", s.g}, {"always_on", s.always_on}, {"bins", s.bins}, {"durations", durations}, {"watts", s.watts}};
}

Json configurations_to_json(const ConfigurationSystem& sys, const LpSolution* sol)
{
    Json sizes = Json::array();
    for (Size s : sys.sizes) sizes.push_back(s.to_string());
    Json out{{"capacity", sys.capacity.to_string()}, {"sizes", sizes}, {"counts", sys.counts}, {"configurations", sys.configs}};
    if (sol) {
        Json x = Json::array();
        for (const auto& v : sol->x) x.push_back(v.get_str());
        out["lp"] = {{"x", x}, {"objective", sol->objective.get_str()}};
    }
    return out;
}

Json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump() << '\n';
}

}  // namespace kbp
