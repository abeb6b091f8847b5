#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tma/config.hpp"
#include "tma/online.hpp"

namespace tma {

class HarnessError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Per-(scenario, wind, policy, grid) summary row; the raw output's source
// of truth. Column order in files matches the field order here.
struct RunRecord {
    std::uint64_t seed = 0;       // scenario child seed
    std::uint64_t wind_seed = 0;  // wind child seed
    std::string policy;
    double delta_d = 0.0;
    double delta_s = 0.0;
    double wind_kts = 0.0;
    double aggregate_rate = 0.0;  // realized AC/hr over the horizon
    int n_aircraft = 0;
    double mean_stretch_nmi = 0.0;
    double mean_violation_s = 0.0;
    double mean_delay_s = 0.0;
    double mean_fuel_kg = 0.0;
    double mean_solve_s = 0.0;
    double max_solve_s = 0.0;
    double mean_bnb_nodes = 0.0;
    std::int64_t max_bnb_nodes = 0;
};

// Number of scalar metrics carried per record/bin, in the fixed order
// below (kMetricNames).
constexpr int kMetricCount = 7;
inline const char* const kMetricNames[kMetricCount] = {
    "stretch_nmi", "violation_s", "delay_s", "fuel_kg", "solve_mean_s", "solve_max_s",
    "bnb_nodes_mean"};

struct BinRow {
    std::string policy;
    double delta_d = 0.0;
    double delta_s = 0.0;
    double bin_center = 0.0;  // AC/hr
    int count = 0;            // records in the bin
    double mean[kMetricCount] = {};
    double wind_std[kMetricCount] = {};  // 0 when no seed has >= 2 wind samples
};

// Summarizes one scenario run: per-aircraft stretch/violation/delay plus
// fuel at the committed decisions, and per-entry solver timing.
RunRecord summarize_run(const Scenario& scenario, const ScenarioResult& result, double wind,
                        const ExperimentConfig& config, const Policy& policy, const Grid& grid,
                        std::uint64_t scenario_seed, std::uint64_t wind_seed);

// Full campaign: seeds x winds x policies x grids, deterministic output
// order (seed, wind, policy, grid) regardless of worker scheduling.
std::vector<RunRecord> run_monte_carlo(const ExperimentConfig& config);

// Rate bins centered at 5k + 2.5 AC/hr; mean across all bin records, std
// across wind samples within each seed (averaged over seeds).
std::vector<BinRow> aggregate_metrics(const std::vector<RunRecord>& records,
                                      double bin_half_width = 2.5);

std::string run_record_header();
std::string format_run_record(const RunRecord& r);
RunRecord parse_run_record(const std::string& line);
std::vector<RunRecord> read_raw_records(const std::string& path);

// Writes raw.csv, binned_<metric>.csv, and per-policy/grid series files
// (x = bin center, y = mean, yerr = std) under `out_dir`.
void emit_outputs(const std::vector<RunRecord>& records, const std::vector<BinRow>& bins,
                  const std::string& out_dir);

}  // namespace tma
