#pragma once

#include <cstdint>
#include <vector>

#include "tma/geometry.hpp"
#include "tma/rng.hpp"
#include "tma/sequencing.hpp"
#include "tma/trajopt.hpp"
#include "tma/traffic.hpp"
#include "tma/wind.hpp"

// Independent reference implementations used to cross-check the fast
// paths. Everything here favors obviousness over speed: dense polyline
// integration instead of closed forms, exhaustive enumeration instead of
// branch-and-bound. The checked implementations are never called from
// inside an oracle except where the contract itself names them (the
// forward-greedy time assignment is the definition of Phase-1 cost for a
// fixed order, so the enumeration oracle reuses it on purpose).
namespace tma::oracle {

// Path length and nominal duration by sampling the three segments as a
// dense polyline; the arc is reconstructed point-by-point on the circle.
struct NumericPath {
    double length_nmi = 0.0;
    double duration_s = 0.0;
};
NumericPath numeric_path(const Point2& entry, const ApproachLayout& layout, double d,
                         const SegmentSpeeds& speeds, int samples_per_segment = 20000);

// Construction residuals for one (entry, d) instance.
struct GeometryResiduals {
    double orthogonality = 0.0;  // |(T-E)·(T-C)| at the tangent point
    double radius = 0.0;         // ||T-C| - r|
    double expanded_diff = 0.0;  // |theta_vector - theta_expanded|
    double theta = 0.0;
};
GeometryResiduals geometry_residuals(const Point2& entry, const ApproachLayout& layout, double d);

// Randomized ordering instance in FOFFS rank order, with a committed
// prefix carrying fixed times.
struct Phase1Instance {
    std::vector<SeqEntry> entries;
    double wind = 0.0;
};
Phase1Instance random_phase1_instance(Rng& rng, int n_max, const ApproachLayout& layout,
                                      const FleetCatalog& fleet, const WakeMatrix& wake,
                                      const SpeedBounds& bounds);

// Exhaustive minimum over all CPS-feasible precedence-respecting orders,
// scored by the forward-greedy assignment; ties keep the lexicographically
// smallest order vector. Feasible only for small n (n! enumeration).
struct BruteForceResult {
    std::vector<int> order;
    double objective = 0.0;
    std::int64_t orders_checked = 0;
};
BruteForceResult brute_force_phase1(const std::vector<SeqEntry>& entries, int k,
                                    const WakeMatrix& wake, const ObjectiveWeights& weights);

// Joint exhaustive optimum of the unified objective over the full tuple
// grids of a two-aircraft window in fixed rank order.
double joint_two_aircraft_optimum(const Aircraft& first, const Aircraft& second,
                                  const GridContext& ctx);

// Largest FAF-time change a single grid step can cause for this aircraft
// (evaluated at d_max segment lengths and minimum speeds).
double grid_time_quantum(const Aircraft& ac, const GridContext& ctx);

}  // namespace tma::oracle
