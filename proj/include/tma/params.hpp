#pragma once

#include "tma/geometry.hpp"
#include "tma/traffic.hpp"

namespace tma {

// Segment-speed envelopes. Tangent-leg and arc bounds are global; the
// final-approach window is per-aircraft around the type V_ref.
struct SpeedBounds {
    double v_leg_min = 180.0;
    double v_leg_max = 240.0;
    double v_arc_min = 130.0;
    double v_arc_max = 200.0;
    double v_final_margin_lo = 5.0;   // V_ref - lo
    double v_final_margin_hi = 20.0;  // V_ref + hi
    double d_max = 27.5;              // nmi

    double v_final_min(const AircraftType& t) const { return t.v_ref_kts - v_final_margin_lo; }
    double v_final_max(const AircraftType& t) const { return t.v_ref_kts + v_final_margin_hi; }

    SegmentSpeeds max_speeds(const AircraftType& t) const {
        return {v_leg_max, v_arc_max, v_final_max(t)};
    }
    SegmentSpeeds min_speeds(const AircraftType& t) const {
        return {v_leg_min, v_arc_min, v_final_min(t)};
    }
};

struct ObjectiveWeights {
    double safe = 1e4;
    double thru = 1.0;
    double delay = 0.5;
    double eff = 0.1;
    double speed = 0.01;

    // Expected hierarchy safe >> thru >> delay >= eff >= speed.
    bool hierarchy_ok() const {
        return safe >= thru && thru >= delay && delay >= eff && eff >= speed;
    }
};

// Discretization steps for committed decisions.
struct Grid {
    double delta_d = 0.5;  // nmi
    double delta_s = 5.0;  // kts
};

}  // namespace tma
