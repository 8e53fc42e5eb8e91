#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace greedylab {

struct RunConfig {
    struct Catalog {
        int dim = 10;
        std::uint64_t seed = 0;
        std::vector<std::string> custom_basis_files;
    } catalog;
    struct Grid {
        double s = 2.0;
        int K = 8;
        int levels = 9;
    } grid;
    struct Probe {
        std::uint64_t seed = 1;
        int random_count = 256;
        int support_cap = 6;
    } probe;
    struct Limits {
        std::uint64_t subset_cap = 5'000'000;
        int vertex_cap = 16;
        int m_max = 0;  // 0: the basis dimension
    } limits;
    struct Outputs {
        std::string dir = "greedylab_out";
        std::vector<std::string> formats{"csv", "json"};
    } outputs;

    // Throws UsageError on any out-of-range field.
    void validate() const;
    bool wants(std::string_view format) const;
};

// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json_text(std::string_view text);
RunConfig load_config(const std::string& path);
std::string config_to_json_text(const RunConfig& config);

struct ConfigOverrides {
    std::optional<int> dim;
    std::optional<std::uint64_t> seed;
    std::optional<double> grid_s;
    std::optional<int> grid_k;
    std::optional<std::string> out;
};

RunConfig apply_overrides(RunConfig config, const ConfigOverrides& overrides);

}  // namespace greedylab
