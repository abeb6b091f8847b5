#include "tma/trajopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tma {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

std::vector<double> make_grid(double lo, double hi, double step) {
    if (lo > hi || step <= 0.0) throw EmptyGrid("grid bounds/step admit no candidate value");
    std::vector<double> values;
    double v = lo;
    while (v < hi - 1e-9) {
        values.push_back(v);
        v += step;
    }
    values.push_back(hi);
    return values;
}

double per_aircraft_cost(const TrajectoryDecision& decision, double t_free, bool is_last,
                         const ObjectiveWeights& weights, const SpeedBounds& bounds,
                         const AircraftType& type) {
    double cost = weights.safe * decision.sigma;
    if (is_last) cost += weights.thru * decision.t;
    cost += weights.delay * (decision.t - t_free);
    cost += weights.eff * decision.d;
    cost += weights.speed * (bounds.v_leg_max - decision.v_leg) /
            (bounds.v_leg_max - bounds.v_leg_min);
    cost += weights.speed * (bounds.v_arc_max - decision.v_arc) /
            (bounds.v_arc_max - bounds.v_arc_min);
    cost += weights.speed * (bounds.v_final_max(type) - decision.v_final) /
            (bounds.v_final_max(type) - bounds.v_final_min(type));
    return cost;
}

namespace {

// Per-aircraft geometry and wind terms precomputed on the d-grid.
struct DPoint {
    double d = 0.0;
    double leg_len = 0.0;
    double arc_len = 0.0;
    double w_leg = 0.0;
    double w_arc = 0.0;
    bool valid = false;
};

struct CandidateSearch {
    std::vector<DPoint> dpoints;
    double w_final = 0.0;
    double tau = 0.0;

    // Wind-corrected absolute arrival time; +inf when unflyable.
    double time(const DPoint& p, double v_leg, double v_arc, double v_final) const {
        const double gl = v_leg + w_leg_of(p);
        const double ga = v_arc + p.w_arc;
        const double gf = v_final + w_final;
        if (gl <= 0.0 || ga <= 0.0 || gf <= 0.0) return kInf;
        return tau + kSecondsPerHour * (p.leg_len / gl + p.arc_len / ga + p.d / gf);
    }
    static double w_leg_of(const DPoint& p) { return p.w_leg; }
};

CandidateSearch prepare_search(const Aircraft& ac, const GridContext& ctx,
                               const std::vector<double>& d_grid) {
    CandidateSearch search;
    search.tau = ac.tau;
    search.w_final = -ctx.wind;
    search.dpoints.reserve(d_grid.size());
    for (double d : d_grid) {
        DPoint p;
        p.d = d;
        try {
            const PathGeometry path = build_path(ac.entry_point, *ctx.layout, d);
            const SegmentHeadings headings = segment_headings(ac.entry_point, *ctx.layout, path);
            const WindComponents wc = segment_wind_components(ctx.wind, headings);
            p.leg_len = path.tangent_leg_len;
            p.arc_len = path.arc_len;
            p.w_leg = wc.leg;
            p.w_arc = wc.arc;
            p.valid = true;
        } catch (const GeometryError&) {
            p.valid = false;  // extension pushes the entry inside the turn circle
        }
        search.dpoints.push_back(p);
    }
    return search;
}

}  // namespace

void greedy_grid_assign(std::vector<RankedAircraft>& window, const GridContext& ctx) {
    const SpeedBounds& bounds = *ctx.bounds;
    const std::vector<double> d_grid = make_grid(0.0, bounds.d_max, ctx.grid.delta_d);
    const std::vector<double> leg_grid =
        make_grid(bounds.v_leg_min, bounds.v_leg_max, ctx.grid.delta_s);
    const std::vector<double> arc_grid =
        make_grid(bounds.v_arc_min, bounds.v_arc_max, ctx.grid.delta_s);

    double stream_last[4] = {kNegInf, kNegInf, kNegInf, kNegInf};
    auto corner_idx = [](const Aircraft& ac) {
        for (int i = 0; i < 4; ++i) {
            if (ac.corner == kCornerOrder[i]) return i;
        }
        return 0;
    };

    for (std::size_t pos = 0; pos < window.size(); ++pos) {
        RankedAircraft& ra = window[pos];
        const Aircraft& ac = *ra.ac;
        const SegmentSpeeds vmax = bounds.max_speeds(ac.type);
        ra.t_free = wind_corrected_arrival_time(ac.entry_point, ac.tau, *ctx.layout, 0.0, vmax,
                                                ctx.wind);
        const int cidx = corner_idx(ac);
        if (ra.decision.committed) {
            stream_last[cidx] = std::max(stream_last[cidx], ra.decision.t);
            continue;
        }

        // earliest admissible arrival: leader separation plus same-stream
        // precedence; shortfalls against it become sigma
        double required = stream_last[cidx];
        if (pos > 0) {
            const Aircraft& leader = *window[pos - 1].ac;
            required = std::max(required, window[pos - 1].decision.t +
                                              required_separation(leader, ac, *ctx.wake));
        }

        const std::vector<double> fin_grid =
            make_grid(bounds.v_final_min(ac.type), bounds.v_final_max(ac.type), ctx.grid.delta_s);
        const bool is_last = pos + 1 == window.size();
        const CandidateSearch search = prepare_search(ac, ctx, d_grid);

        TrajectoryDecision best;
        double best_cost = kInf;
        bool found = false;

        for (const DPoint& p : search.dpoints) {
            if (!p.valid) continue;
            // cheap per-d lower bound: fastest/slowest tuple times bracket
            // every candidate at this extension
            const double t_fast = search.time(p, vmax.v_leg, vmax.v_arc, vmax.v_final);
            const double t_slow = search.time(p, bounds.v_leg_min, bounds.v_arc_min,
                                              bounds.v_final_min(ac.type));
            if (t_fast == kInf) continue;
            if (std::isfinite(best_cost)) {
                double lb = ctx.weights.eff * p.d + ctx.weights.delay * (t_fast - ra.t_free);
                if (is_last) lb += ctx.weights.thru * t_fast;
                if (std::isfinite(t_slow) && required > t_slow) {
                    lb += ctx.weights.safe * (required - t_slow);
                }
                if (lb > best_cost) continue;
            }
            for (auto fi = fin_grid.rbegin(); fi != fin_grid.rend(); ++fi) {
                const double vf = *fi;
                for (auto ai = arc_grid.rbegin(); ai != arc_grid.rend(); ++ai) {
                    const double va = *ai;
                    if (va < vf) break;  // descending: all further values smaller
                    for (auto li = leg_grid.rbegin(); li != leg_grid.rend(); ++li) {
                        const double vl = *li;
                        if (vl < va) break;
                        const double t = search.time(p, vl, va, vf);
                        if (t == kInf) continue;
                        TrajectoryDecision cand;
                        cand.d = p.d;
                        cand.v_leg = vl;
                        cand.v_arc = va;
                        cand.v_final = vf;
                        cand.t = t;
                        cand.sigma = std::max(0.0, required - t);
                        const double cost = per_aircraft_cost(cand, ra.t_free, is_last,
                                                              ctx.weights, bounds, ac.type);
                        if (cost < best_cost) {
                            best_cost = cost;
                            best = cand;
                            found = true;
                        }
                    }
                }
            }
        }
        if (!found) throw EmptyGrid("no flyable grid tuple for aircraft " + std::to_string(ac.id));
        best.committed = false;
        ra.decision = best;
        stream_last[cidx] = std::max(stream_last[cidx], best.t);
    }
}

double evaluate_unified_objective(const std::vector<RankedAircraft>& window,
                                  const ObjectiveWeights& weights, const SpeedBounds& bounds) {
    if (window.empty()) return 0.0;
    std::size_t last = 0;
    for (std::size_t i = 1; i < window.size(); ++i) {
        if (window[i].decision.t > window[last].decision.t) last = i;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < window.size(); ++i) {
        total += per_aircraft_cost(window[i].decision, window[i].t_free, i == last, weights,
                                   bounds, window[i].ac->type);
    }
    return total;
}

}  // namespace tma
