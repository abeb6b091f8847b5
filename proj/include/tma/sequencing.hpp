#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tma/params.hpp"
#include "tma/traffic.hpp"

namespace tma {

struct Policy {
    enum class Kind { Fefs, Foffs, Cps };
    Kind kind = Kind::Foffs;
    int k = 0;  // CPS maximum position shift

    static Policy parse(const std::string& name);
    std::string name() const;
};

struct LandingSequence {
    std::vector<int> ids;  // rank 1 first
    std::string policy;
};

struct ArrivalWindowBounds {
    double earliest = 0.0;  // E: d=0, max speeds
    double latest = 0.0;    // L: d=D_max, min speeds
    double s_absorb = 0.0;  // delay absorbable by speed control at d=0
    bool latest_clamped = false;  // L evaluated at a clamped d < D_max
};

// Wind-corrected free-flight ETA at the FAF (d=0, max speeds).
double nominal_eta(const Aircraft& ac, double w, const ApproachLayout& layout,
                   const SpeedBounds& bounds);

ArrivalWindowBounds arrival_window(const Aircraft& ac, double w, const ApproachLayout& layout,
                                   const SpeedBounds& bounds);

// FEFS (sort by tau) / FOFFS (sort by nominal ETA); ties keep lower id.
LandingSequence order_policy(const std::vector<const Aircraft*>& window, Policy::Kind policy,
                             double w, const ApproachLayout& layout, const SpeedBounds& bounds);

// Swap/far pair sets over FOFFS ranks (1-based ranks in `ranks`); pairs are
// (earlier-rank, later-rank) index pairs into the rank vector's id order.
struct CpsPairSets {
    std::vector<std::pair<int, int>> swap_set;  // rank difference in (0, k]
    std::vector<std::pair<int, int>> far_set;   // rank difference > k
};
CpsPairSets cps_swap_sets(const std::vector<int>& foffs_ranks, int k);

// One window member prepared for the Phase-1 ordering problem. Entries are
// passed in FOFFS rank order; the vector index is the FOFFS rank.
struct SeqEntry {
    int id = 0;
    int corner_idx = 0;          // index into kCornerOrder
    int stream_pred = -1;        // index of same-stream predecessor in this vector
    double earliest = 0.0;       // E
    double latest = 0.0;         // L
    double s_absorb = 0.0;
    bool committed = false;
    double committed_t = 0.0;    // valid when committed
    WeightClass weight_class = WeightClass::Large;
    double t_rwy_s = 0.0;
};

double entry_separation(const SeqEntry& leader, const SeqEntry& trailer, const WakeMatrix& wake);

// Forward-greedy time assignment for a fixed ordering: each uncommitted
// aircraft takes the earliest time satisfying its window-earliest, the
// consecutive-pair separation, and same-stream precedence; committed times
// are fixed. Returns the Phase-1 objective
//   W_safe*(sum sigma + sum alpha) + W_thru*t_last + W_delay*sum e.
double evaluate_order(const std::vector<SeqEntry>& entries, const std::vector<int>& order,
                      const WakeMatrix& wake, const ObjectiveWeights& weights,
                      std::vector<double>* times_out = nullptr);

struct Phase1Result {
    std::vector<int> order;  // indices into the entries vector, rank order
    double objective = 0.0;
    std::int64_t nodes = 0;  // branch-and-bound nodes expanded
};

// Exact Phase-1 ordering: branch-and-bound over CPS-feasible,
// precedence-respecting orders with the forward-greedy bound. k = 0
// returns the FOFFS order (identity) unchanged.
Phase1Result solve_phase1_cps(const std::vector<SeqEntry>& entries, int k, const WakeMatrix& wake,
                              const ObjectiveWeights& weights);

}  // namespace tma
