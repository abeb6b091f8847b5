#include "tma/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tma::oracle {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;
}  // namespace

NumericPath numeric_path(const Point2& entry, const ApproachLayout& layout, double d,
                         const SegmentSpeeds& speeds, int samples_per_segment) {
    const PathGeometry path = build_path(entry, layout, d);
    const Point2 c = path.turn_center;
    const Point2 t = path.tangent_point;
    const Point2 arc_end{c.x, layout.faf.y};  // circle tangency with the final course

    NumericPath out;
    const double leg_len = norm(t - entry);

    // Arc as a dense polyline along the minor arc between the tangent
    // point and the final-course touch point (the arc angle never exceeds
    // pi, so the minor arc is always the flown one).
    const double a0 = std::atan2(t.y - c.y, t.x - c.x);
    const double a1 = std::atan2(arc_end.y - c.y, arc_end.x - c.x);
    double delta = a1 - a0;
    while (delta > kPi) delta -= 2.0 * kPi;
    while (delta < -kPi) delta += 2.0 * kPi;
    double arc_len = 0.0;
    Point2 prev = t;
    for (int i = 1; i <= samples_per_segment; ++i) {
        const double a = a0 + delta * static_cast<double>(i) / samples_per_segment;
        const Point2 p{c.x + layout.turn_radius * std::cos(a),
                       c.y + layout.turn_radius * std::sin(a)};
        arc_len += norm(p - prev);
        prev = p;
    }

    const double ext_len = norm(layout.faf - arc_end);
    out.length_nmi = leg_len + arc_len + ext_len;
    out.duration_s = kSecondsPerHour *
                     (leg_len / speeds.v_leg + arc_len / speeds.v_arc + ext_len / speeds.v_final);
    return out;
}

GeometryResiduals geometry_residuals(const Point2& entry, const ApproachLayout& layout, double d) {
    const ApproachSide side = side_of(entry, layout);
    const Point2 c = turn_center(entry, layout, d);
    const auto [leg_len, t] = tangent_geometry(entry, c, layout.turn_radius, side);
    (void)leg_len;

    GeometryResiduals res;
    res.orthogonality = std::fabs(dot(t - entry, t - c));
    res.radius = std::fabs(norm(t - c) - layout.turn_radius);
    res.theta = rf_arc_angle(t, c, side);
    res.expanded_diff = std::fabs(res.theta - rf_arc_angle_expanded(entry, layout, d));
    return res;
}

Phase1Instance random_phase1_instance(Rng& rng, int n_max, const ApproachLayout& layout,
                                      const FleetCatalog& fleet, const WakeMatrix& wake,
                                      const SpeedBounds& bounds) {
    if (n_max < 2) throw std::invalid_argument("random_phase1_instance: n_max must be >= 2");
    Phase1Instance inst;
    inst.wind = rng.gaussian(5.0, 2.0);

    const int n = rng.uniform_int(2, n_max);
    std::vector<Aircraft> fleet_window(n);
    for (int i = 0; i < n; ++i) {
        Aircraft& ac = fleet_window[i];
        ac.id = i + 1;
        ac.corner = kCornerOrder[rng.uniform_int(0, 3)];
        ac.entry_point = layout.corner_fixes.at(ac.corner);
        ac.tau = rng.uniform01() * 1200.0;
        ac.type = sample_fleet(rng, fleet);
    }

    std::vector<const Aircraft*> ptrs;
    for (const Aircraft& ac : fleet_window) ptrs.push_back(&ac);
    const LandingSequence foffs =
        order_policy(ptrs, Policy::Kind::Foffs, inst.wind, layout, bounds);

    const int n_committed = rng.uniform_int(0, std::min(2, n - 1));
    std::vector<int> last_of_corner(4, -1);
    double prev_committed_t = -kInf;
    for (int pos = 0; pos < n; ++pos) {
        const Aircraft& ac = fleet_window[foffs.ids[pos] - 1];
        SeqEntry e;
        e.id = ac.id;
        for (int ci = 0; ci < 4; ++ci) {
            if (ac.corner == kCornerOrder[ci]) e.corner_idx = ci;
        }
        e.stream_pred = last_of_corner[e.corner_idx];
        last_of_corner[e.corner_idx] = pos;
        const ArrivalWindowBounds win = arrival_window(ac, inst.wind, layout, bounds);
        e.earliest = win.earliest;
        e.latest = win.latest;
        e.s_absorb = win.s_absorb;
        e.weight_class = ac.type.weight_class;
        e.t_rwy_s = ac.type.t_rwy_s;
        if (pos < n_committed) {
            e.committed = true;
            e.committed_t =
                std::max(e.earliest, prev_committed_t + 30.0) + rng.uniform01() * 120.0;
            prev_committed_t = e.committed_t;
        }
        inst.entries.push_back(e);
    }
    (void)wake;
    return inst;
}

BruteForceResult brute_force_phase1(const std::vector<SeqEntry>& entries, int k,
                                    const WakeMatrix& wake, const ObjectiveWeights& weights) {
    const int n = static_cast<int>(entries.size());
    if (n > 10) throw std::invalid_argument("brute_force_phase1: n too large for enumeration");

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;

    BruteForceResult best;
    best.objective = kInf;
    std::vector<int> best_ranks;
    std::vector<int> pos_of(n);

    do {
        ++best.orders_checked;
        bool feasible = true;
        for (int pos = 0; pos < n && feasible; ++pos) {
            pos_of[order[pos]] = pos;
            if (std::abs(order[pos] - pos) > k) feasible = false;
        }
        if (feasible) {
            for (int idx = 0; idx < n && feasible; ++idx) {
                const int pred = entries[idx].stream_pred;
                if (pred >= 0 && pos_of[pred] > pos_of[idx]) feasible = false;
            }
        }
        if (!feasible) continue;

        const double obj = evaluate_order(entries, order, wake, weights);
        std::vector<int> ranks(n);
        for (int pos = 0; pos < n; ++pos) ranks[order[pos]] = pos;
        if (obj < best.objective || (obj == best.objective && ranks < best_ranks)) {
            best.objective = obj;
            best.order = order;
            best_ranks = std::move(ranks);
        }
    } while (std::next_permutation(order.begin(), order.end()));

    if (best.order.empty()) throw std::logic_error("brute_force_phase1: no feasible order");
    return best;
}

namespace {

// All flyable (d, vL, vtheta, vf) tuples with their absolute FAF times and
// rank-independent cost terms, for one aircraft.
struct Tuple {
    TrajectoryDecision dec;
    double base_cost = 0.0;  // eff + delay + speed terms (no sigma/thru)
};

std::vector<Tuple> enumerate_tuples(const Aircraft& ac, const GridContext& ctx, double t_free) {
    const SpeedBounds& bounds = *ctx.bounds;
    const std::vector<double> d_grid = make_grid(0.0, bounds.d_max, ctx.grid.delta_d);
    const std::vector<double> leg_grid =
        make_grid(bounds.v_leg_min, bounds.v_leg_max, ctx.grid.delta_s);
    const std::vector<double> arc_grid =
        make_grid(bounds.v_arc_min, bounds.v_arc_max, ctx.grid.delta_s);
    const std::vector<double> fin_grid =
        make_grid(bounds.v_final_min(ac.type), bounds.v_final_max(ac.type), ctx.grid.delta_s);

    std::vector<Tuple> tuples;
    for (double d : d_grid) {
        double leg_len, arc_len, w_leg, w_arc;
        try {
            const PathGeometry path = build_path(ac.entry_point, *ctx.layout, d);
            const SegmentHeadings headings = segment_headings(ac.entry_point, *ctx.layout, path);
            const WindComponents wc = segment_wind_components(ctx.wind, headings);
            leg_len = path.tangent_leg_len;
            arc_len = path.arc_len;
            w_leg = wc.leg;
            w_arc = wc.arc;
        } catch (const GeometryError&) {
            continue;
        }
        for (double vl : leg_grid) {
            for (double va : arc_grid) {
                if (va > vl) continue;
                for (double vf : fin_grid) {
                    if (vf > va) continue;
                    const double gl = vl + w_leg;
                    const double ga = va + w_arc;
                    const double gf = vf - ctx.wind;
                    if (gl <= 0.0 || ga <= 0.0 || gf <= 0.0) continue;
                    Tuple tup;
                    tup.dec.d = d;
                    tup.dec.v_leg = vl;
                    tup.dec.v_arc = va;
                    tup.dec.v_final = vf;
                    tup.dec.t =
                        ac.tau + kSecondsPerHour * (leg_len / gl + arc_len / ga + d / gf);
                    tup.base_cost =
                        per_aircraft_cost(tup.dec, t_free, false, ctx.weights, bounds, ac.type) -
                        ctx.weights.safe * tup.dec.sigma;
                    tuples.push_back(tup);
                }
            }
        }
    }
    if (tuples.empty()) throw EmptyGrid("joint oracle: no flyable tuple");
    return tuples;
}

}  // namespace

double joint_two_aircraft_optimum(const Aircraft& first, const Aircraft& second,
                                  const GridContext& ctx) {
    const double t_free1 = wind_corrected_arrival_time(
        first.entry_point, first.tau, *ctx.layout, 0.0, ctx.bounds->max_speeds(first.type),
        ctx.wind);
    const double t_free2 = wind_corrected_arrival_time(
        second.entry_point, second.tau, *ctx.layout, 0.0, ctx.bounds->max_speeds(second.type),
        ctx.wind);
    const std::vector<Tuple> tuples1 = enumerate_tuples(first, ctx, t_free1);
    const std::vector<Tuple> tuples2 = enumerate_tuples(second, ctx, t_free2);
    const double sep = required_separation(first, second, *ctx.wake);
    const bool same_stream = first.corner == second.corner;

    double best = kInf;
    for (const Tuple& a : tuples1) {
        for (const Tuple& b : tuples2) {
            // second flies after first in rank order; sigma covers both the
            // pairwise separation and same-stream precedence shortfall
            double required = a.dec.t + sep;
            if (same_stream) required = std::max(required, a.dec.t);
            const double sigma = std::max(0.0, required - b.dec.t);
            const double t_last = std::max(a.dec.t, b.dec.t);
            const double cost = a.base_cost + b.base_cost + ctx.weights.safe * sigma +
                                ctx.weights.thru * t_last;
            best = std::min(best, cost);
        }
    }
    return best;
}

double grid_time_quantum(const Aircraft& ac, const GridContext& ctx) {
    const SpeedBounds& bounds = *ctx.bounds;
    // Longest feasible extension on this entry (d_max or the tangency limit).
    double d_hi = bounds.d_max;
    PathGeometry path;
    for (;;) {
        try {
            path = build_path(ac.entry_point, *ctx.layout, d_hi);
            break;
        } catch (const GeometryError&) {
            d_hi *= 0.5;
            if (d_hi < 1e-6) throw;
        }
    }
    const SegmentHeadings headings = segment_headings(ac.entry_point, *ctx.layout, path);
    const WindComponents wc = segment_wind_components(ctx.wind, headings);

    const double gl = bounds.v_leg_min + wc.leg;
    const double ga = bounds.v_arc_min + wc.arc;
    const double gf = bounds.v_final_min(ac.type) + wc.final_leg;
    const double ds = ctx.grid.delta_s;

    double q = kSecondsPerHour * ctx.grid.delta_d / gf;  // one d step at slowest final speed
    q = std::max(q, kSecondsPerHour * path.tangent_leg_len * (1.0 / gl - 1.0 / (gl + ds)));
    q = std::max(q, kSecondsPerHour * path.arc_len * (1.0 / ga - 1.0 / (ga + ds)));
    q = std::max(q, kSecondsPerHour * path.extension * (1.0 / gf - 1.0 / (gf + ds)));
    return q;
}

}  // namespace tma::oracle
