#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tma/fuel.hpp"
#include "tma/geometry.hpp"
#include "tma/params.hpp"
#include "tma/sequencing.hpp"
#include "tma/traffic.hpp"

namespace tma {

// Parse/validation failure; the message carries "path:line" context when a
// specific line is at fault.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Flat dotted key=value text: one `key = value` pair per line, '#' starts
// a comment, blank lines ignored. Keys are recorded with their line number
// so validation errors can point back into the file.
struct KeyValueFile {
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool used = false;
    };
    std::string path;  // "<inline>" for string input
    std::map<std::string, Entry> entries;

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::vector<std::string> get_list(const std::string& key,
                                      const std::vector<std::string>& fallback) const;
    // Keys present in the file but never read by the loader.
    std::vector<std::string> unused_keys() const;
    [[noreturn]] void fail(const std::string& key, const std::string& why) const;

    static KeyValueFile parse_file(const std::string& path);
    static KeyValueFile parse_string(const std::string& text);
};

// Everything one Monte Carlo campaign needs, resolved and validated.
struct ExperimentConfig {
    int seeds = 100;
    int winds_per_seed = 3;
    std::uint64_t master_seed = 1;
    int threads = 1;
    std::string out_dir = "out";

    std::vector<Policy> policies;
    std::vector<Grid> grids;

    ApproachLayout layout;
    double wind_mu_kts = 5.0;
    double wind_sigma_kts = 2.0;
    TrafficConfig traffic;
    FleetCatalog fleet;
    WakeMatrix wake;
    SpeedBounds bounds;
    ObjectiveWeights weights;
    FuelTable fuel;
    double fuel_dt_s = 1.0;

    static ExperimentConfig defaults();
};

// Builds a validated config from a parsed file; every unknown key and every
// violated invariant aborts with a line-referenced ConfigError.
ExperimentConfig load_experiment_config(const KeyValueFile& kv);
ExperimentConfig load_experiment_config_file(const std::string& path);

// Post-resolution invariant checks (also applied to programmatic configs).
void validate_config(const ExperimentConfig& config);

}  // namespace tma
