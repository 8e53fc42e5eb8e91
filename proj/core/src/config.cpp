#include "greedylab/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "greedylab/errors.hpp"

namespace greedylab {
namespace {

using json = nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw UsageError("config: '" + where + "' must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw UsageError("config: unknown key '" + where + "." + key + "'");
    }
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw UsageError("config: bad value for '" + where + "." + key + "'");
    }
}

void read_unsigned(const json& obj, const char* key, std::uint64_t& out, const std::string& where) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw UsageError("config: '" + where + "." + key + "' must be a non-negative integer");
    }
    out = v.get<std::uint64_t>();
}

void read_int(const json& obj, const char* key, int& out, const std::string& where) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_number_integer()) throw UsageError("config: '" + where + "." + key + "' must be an integer");
    read(obj, key, out, where);
}

}  // namespace

void RunConfig::validate() const {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw UsageError("config: " + msg);
    };
    require(catalog.dim >= 1, "catalog.dim must be positive");
    require(grid.s > 1.0, "grid.s must exceed 1");
    require(grid.K >= 1, "grid.K must be at least 1");
    require(grid.levels >= grid.K + 1, "grid.levels must be at least grid.K + 1");
    require(probe.random_count >= 0, "probe.random_count must be non-negative");
    require(probe.support_cap >= 1, "probe.support_cap must be positive");
    require(limits.subset_cap >= 1, "limits.subset_cap must be positive");
    require(limits.vertex_cap >= 1, "limits.vertex_cap must be positive");
    require(limits.m_max >= 0, "limits.m_max must be non-negative");
    require(!outputs.dir.empty(), "outputs.dir must not be empty");
    for (const auto& f : outputs.formats) require(f == "csv" || f == "json", "unknown output format '" + f + "'");
}

bool RunConfig::wants(std::string_view format) const {
    return std::find(outputs.formats.begin(), outputs.formats.end(), format) != outputs.formats.end();
}

RunConfig config_from_json_text(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config: invalid JSON: ") + e.what());
    }
    RunConfig cfg;
    reject_unknown(root, "config", {"catalog", "grid", "probe", "limits", "outputs"});
    if (root.contains("catalog")) {
        const json& c = root["catalog"];
        reject_unknown(c, "catalog", {"dim", "seed", "custom_basis_files"});
        read_int(c, "dim", cfg.catalog.dim, "catalog");
        read_unsigned(c, "seed", cfg.catalog.seed, "catalog");
        read(c, "custom_basis_files", cfg.catalog.custom_basis_files, "catalog");
    }
    if (root.contains("grid")) {
        const json& g = root["grid"];
        reject_unknown(g, "grid", {"s", "K", "levels"});
        read(g, "s", cfg.grid.s, "grid");
        read_int(g, "K", cfg.grid.K, "grid");
        read_int(g, "levels", cfg.grid.levels, "grid");
    }
    if (root.contains("probe")) {
        const json& p = root["probe"];
        reject_unknown(p, "probe", {"seed", "random_count", "support_cap"});
        read_unsigned(p, "seed", cfg.probe.seed, "probe");
        read_int(p, "random_count", cfg.probe.random_count, "probe");
        read_int(p, "support_cap", cfg.probe.support_cap, "probe");
    }
    if (root.contains("limits")) {
        const json& l = root["limits"];
        reject_unknown(l, "limits", {"subset_cap", "vertex_cap", "m_max"});
        read_unsigned(l, "subset_cap", cfg.limits.subset_cap, "limits");
        read_int(l, "vertex_cap", cfg.limits.vertex_cap, "limits");
        read_int(l, "m_max", cfg.limits.m_max, "limits");
    }
    if (root.contains("outputs")) {
        const json& o = root["outputs"];
        reject_unknown(o, "outputs", {"dir", "formats"});
        read(o, "dir", cfg.outputs.dir, "outputs");
        read(o, "formats", cfg.outputs.formats, "outputs");
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

std::string config_to_json_text(const RunConfig& cfg) {
    json j = {
        {"catalog", {{"dim", cfg.catalog.dim}, {"seed", cfg.catalog.seed}}},
        {"grid", {{"s", cfg.grid.s}, {"K", cfg.grid.K}, {"levels", cfg.grid.levels}}},
        {"probe",
         {{"seed", cfg.probe.seed}, {"random_count", cfg.probe.random_count}, {"support_cap", cfg.probe.support_cap}}},
        {"limits",
         {{"subset_cap", cfg.limits.subset_cap}, {"vertex_cap", cfg.limits.vertex_cap}, {"m_max", cfg.limits.m_max}}},
        {"outputs", {{"dir", cfg.outputs.dir}, {"formats", cfg.outputs.formats}}},
    };
    if (!cfg.catalog.custom_basis_files.empty()) j["catalog"]["custom_basis_files"] = cfg.catalog.custom_basis_files;
    return j.dump(2);
}

RunConfig apply_overrides(RunConfig config, const ConfigOverrides& o) {
    if (o.dim) config.catalog.dim = *o.dim;
    if (o.seed) config.catalog.seed = *o.seed;
    if (o.grid_s) config.grid.s = *o.grid_s;
    if (o.grid_k) {
        config.grid.K = *o.grid_k;
        // keep the oracle requirement levels >= K + 1 satisfiable from the flag alone
        config.grid.levels = std::max(config.grid.levels, *o.grid_k + 1);
    }
    if (o.out) config.outputs.dir = *o.out;
    config.validate();
    return config;
}

}  // namespace greedylab
