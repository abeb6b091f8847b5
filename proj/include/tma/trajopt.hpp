#pragma once

#include <stdexcept>
#include <vector>

#include "tma/params.hpp"
#include "tma/sequencing.hpp"
#include "tma/traffic.hpp"
#include "tma/wind.hpp"

namespace tma {

// Speed/extension bounds and grid step admit no candidate tuple; a
// configuration error, not a solver outcome.
class EmptyGrid : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Committed control tuple plus the resulting FAF arrival time and
// separation slack versus the leader.
struct TrajectoryDecision {
    double d = 0.0;        // nmi
    double v_leg = 0.0;    // kts
    double v_arc = 0.0;    // kts
    double v_final = 0.0;  // kts
    double t = 0.0;        // s, absolute FAF arrival
    double sigma = 0.0;    // s, separation shortfall (0 when separated)
    bool committed = false;

    bool operator==(const TrajectoryDecision&) const = default;
};

// One window member in landing-rank order.
struct RankedAircraft {
    const Aircraft* ac = nullptr;
    double t_free = 0.0;  // wind-corrected free-flight FAF time
    TrajectoryDecision decision;
};

struct GridContext {
    const ApproachLayout* layout = nullptr;
    const SpeedBounds* bounds = nullptr;
    const WakeMatrix* wake = nullptr;
    ObjectiveWeights weights;
    Grid grid;
    double wind = 0.0;  // scenario w, kts
};

// Grid values from `lo` stepping by `step`, last point clamped to `hi`.
std::vector<double> make_grid(double lo, double hi, double step);

double per_aircraft_cost(const TrajectoryDecision& decision, double t_free, bool is_last,
                         const ObjectiveWeights& weights, const SpeedBounds& bounds,
                         const AircraftType& type);

// Greedy forward pass in landing-rank order: every uncommitted member gets
// the minimum-cost grid tuple subject to separation against its leader,
// same-stream precedence, speed monotonicity, and the variable bounds.
// Fills decision and t_free for uncommitted members in place.
void greedy_grid_assign(std::vector<RankedAircraft>& window, const GridContext& ctx);

// Full unified objective with the makespan term attributed to the true
// last arrival; for reporting and oracle comparison.
double evaluate_unified_objective(const std::vector<RankedAircraft>& window,
                                  const ObjectiveWeights& weights, const SpeedBounds& bounds);

}  // namespace tma
