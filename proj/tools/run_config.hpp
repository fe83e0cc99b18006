#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hexmc/channel.hpp"
#include "hexmc/metrics.hpp"

namespace hexmc::cli {

/// Resolved run configuration. Defaults follow Table-1 values; a_rx is
/// derived as d_hex / 2 unless overridden in the config file.
struct RunConfig {
    // channel / geometry
    double d_hex = 0.2;
    double d_hex_min = 0.05;
    double d_hex_max = 5.0;
    int n_points = 100;
    double a_rx = -1.0; ///< < 0 means "derive as d_hex / 2"
    double l_rx = 0.2;
    double d = 0.5;     ///< plane separation
    double v = 0.2;
    double diffusion = 0.01;
    std::vector<int> n_mol = {100};

    // numerics
    double dt = 1e-3;
    double t_sim = 15.0;
    double out_dt = 0.01;   ///< CIR output time resolution
    int n_rings = 3;
    int k_max = 20;
    int theta_max = 200;
    std::uint64_t enum_cap = 10'000'000;
    int state_samples = 100'000;

    // simulation
    int pbs_realizations = 100;
    int pbs_particles = 100;
    int mc_realizations = 100'000;
    int mc_rings = 20;

    std::uint64_t seed = 1;
    int threads = 0;

    /// Parse a flat key = value file ('#' comments). Unknown keys are a
    /// ConfigError with the offending line number.
    static RunConfig from_file(const std::string& path);
    void apply_line(const std::string& line, int line_no);

    /// Round-trippable flat key = value serialization.
    [[nodiscard]] std::string serialize() const;
    static RunConfig from_string(const std::string& text);

    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] ChannelParams channel_params(double d_hex_value) const;
    [[nodiscard]] LinkOptions link_options() const;
    void validate() const;
};

/// Columnar CSV with a schema comment in row 1 and a JSON sidecar
/// (<path>.meta.json) holding the resolved config.
class CsvWriter {
public:
    CsvWriter(std::string schema, std::vector<std::string> columns);
    void add_row(const std::vector<double>& values);
    void write(const std::string& path, const nlohmann::json& sidecar) const;
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] nlohmann::json to_json() const;

private:
    std::string schema_;
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

/// Number formatting shared by all outputs (shortest round-trip form).
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);

} // namespace hexmc::cli
