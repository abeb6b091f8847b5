#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tma/sequencing.hpp"
#include "tma/trajopt.hpp"
#include "tma/traffic.hpp"

namespace tma {

struct OnlineConfig {
    Policy policy;
    Grid grid;
    ObjectiveWeights weights;
    SpeedBounds bounds;
    bool use_preview_cache = true;
    bool collect_timing = true;
};

struct PreviewEntry {
    TrajectoryDecision decision;
    double t_free = 0.0;
    std::vector<int> window_ids;          // sorted snapshot of the preview window
    std::uint64_t committed_version = 0;  // state version when the solve ran
};

struct SchedulerState {
    std::map<int, TrajectoryDecision> committed;
    std::map<int, double> committed_t_free;
    std::map<int, PreviewEntry> previews;
    std::uint64_t committed_version = 0;
};

struct EntryOutcome {
    int id = 0;
    double tau = 0.0;
    double t_free = 0.0;
    TrajectoryDecision decision;
    double solve_seconds = 0.0;
    bool cache_hit = false;
    std::int64_t bnb_nodes = 0;
};

struct ScenarioResult {
    std::vector<EntryOutcome> outcomes;  // in entry order, one per aircraft
};

// Lookahead window at aircraft i's entry: all still-interacting committed
// aircraft plus every uncommitted aircraft entering within i's free-flight
// time-to-FAF. Returns sorted ids; i is always a member.
std::vector<int> build_window(const Aircraft& entering, const std::vector<Aircraft>& all,
                              const SchedulerState& state, double wind,
                              const ApproachLayout& layout, const SpeedBounds& bounds,
                              const WakeMatrix& wake);

EntryOutcome process_entry(const Aircraft& entering, const std::vector<Aircraft>& all,
                           SchedulerState& state, double wind, const ApproachLayout& layout,
                           const WakeMatrix& wake, const OnlineConfig& config);

ScenarioResult run_scenario(const Scenario& scenario, double wind, const ApproachLayout& layout,
                            const WakeMatrix& wake, const OnlineConfig& config);

}  // namespace tma
