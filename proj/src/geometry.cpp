#include "tma/geometry.hpp"

#include <cmath>

namespace tma {

double norm(const Point2& a) { return std::hypot(a.x, a.y); }

ApproachLayout ApproachLayout::standard() {
    ApproachLayout layout;
    layout.faf = {0.0, 0.0};
    layout.turn_radius = 2.5;
    layout.tcp_radius = 35.0;
    const double c = layout.tcp_radius / std::sqrt(2.0);
    layout.corner_fixes = {
        {"DALAS", {-c, c}},   // northwest
        {"LOGEN", {c, c}},    // northeast
        {"HUSKY", {c, -c}},   // southeast
        {"TIROE", {-c, -c}},  // southwest
    };
    return layout;
}

ApproachSide side_of(const Point2& entry, const ApproachLayout& layout) {
    const double r = layout.turn_radius;
    if (entry.y > layout.faf.y + r) return ApproachSide::North;
    if (entry.y < layout.faf.y - r) return ApproachSide::South;
    throw EntryInDeadBand("entry fix lies within the turn-radius dead band around the centerline");
}

Point2 turn_center(const Point2& entry, const ApproachLayout& layout, double d) {
    const ApproachSide side = side_of(entry, layout);
    const double r = layout.turn_radius;
    const double yc = side == ApproachSide::North ? layout.faf.y + r : layout.faf.y - r;
    return {layout.faf.x - d, yc};
}

std::pair<double, Point2> tangent_geometry(const Point2& entry, const Point2& center, double r,
                                           ApproachSide side) {
    const Point2 v = entry - center;
    const double d0_sq = dot(v, v);
    if (d0_sq <= r * r) {
        throw EntryInsideTurnCircle("entry fix is on or inside the RF turn circle");
    }
    const double leg = std::sqrt(d0_sq - r * r);
    const double a = (r * r) / d0_sq;
    const double b = (r * leg) / d0_sq;
    // v_perp is the counterclockwise rotation of v; +b selects the left
    // (west-side) tangent for north arrivals, -b for south.
    const Point2 v_perp{-v.y, v.x};
    const double sign = side == ApproachSide::North ? 1.0 : -1.0;
    const Point2 tangent{center.x + a * v.x + sign * b * v_perp.x,
                         center.y + a * v.y + sign * b * v_perp.y};
    return {leg, tangent};
}

double rf_arc_angle(const Point2& tangent_point, const Point2& center, ApproachSide side) {
    const double dx = tangent_point.x - center.x;
    const double dy = tangent_point.y - center.y;
    // The arc-end radius vector points from the center toward the FAF
    // line: straight down for a north center, straight up for a south one.
    const double theta = side == ApproachSide::North ? std::atan2(std::fabs(dx), -dy)
                                                     : std::atan2(std::fabs(dx), dy);
    return theta;
}

double rf_arc_angle_expanded(const Point2& entry, const ApproachLayout& layout, double d) {
    const ApproachSide side = side_of(entry, layout);
    const double r = layout.turn_radius;
    const double dx = entry.x - layout.faf.x + d;
    const double dy_n = entry.y - layout.faf.y - r;
    const double dy_s = entry.y - layout.faf.y + r;
    const double dy = side == ApproachSide::North ? dy_n : dy_s;
    const double d0_sq = dx * dx + dy * dy;
    if (d0_sq <= r * r) {
        throw EntryInsideTurnCircle("entry fix is on or inside the RF turn circle");
    }
    const double a = (r * r) / d0_sq;
    const double b = r * std::sqrt(d0_sq - r * r) / d0_sq;
    if (side == ApproachSide::North) {
        return std::atan2(std::fabs(a * dx - b * dy), -(a * dy + b * dx));
    }
    return std::atan2(std::fabs(a * dx + b * dy), a * dy - b * dx);
}

PathGeometry build_path(const Point2& entry, const ApproachLayout& layout, double d) {
    const ApproachSide side = side_of(entry, layout);
    PathGeometry path;
    path.turn_center = turn_center(entry, layout, d);
    auto [leg, tangent] = tangent_geometry(entry, path.turn_center, layout.turn_radius, side);
    path.tangent_point = tangent;
    path.tangent_leg_len = leg;
    path.arc_angle = rf_arc_angle(tangent, path.turn_center, side);
    path.arc_len = layout.turn_radius * path.arc_angle;
    path.extension = d;
    path.total_len = path.tangent_leg_len + path.arc_len + path.extension;
    return path;
}

double path_duration(const PathGeometry& path, const SegmentSpeeds& speeds) {
    return kSecondsPerHour * (path.tangent_leg_len / speeds.v_leg + path.arc_len / speeds.v_arc +
                              path.extension / speeds.v_final);
}

std::pair<PathGeometry, double> path_and_time(const Point2& entry, const ApproachLayout& layout,
                                              double d, const SegmentSpeeds& speeds) {
    PathGeometry path = build_path(entry, layout, d);
    return {path, path_duration(path, speeds)};
}

SegmentHeadings segment_headings(const Point2& entry, const ApproachLayout& layout,
                                 const PathGeometry& path) {
    SegmentHeadings h;
    h.leg_x = (path.tangent_point.x - entry.x) / path.tangent_leg_len;
    const Point2 arc_end{path.turn_center.x, layout.faf.y};
    const Point2 chord = arc_end - path.tangent_point;
    const double chord_len = norm(chord);
    // Degenerate chord: the arc has vanished, and so has its wind
    // contribution; report the final-course direction.
    h.arc_x = chord_len > 1e-12 ? chord.x / chord_len : 1.0;
    h.final_x = 1.0;
    return h;
}

SegmentHeadings segment_headings(const Point2& entry, const ApproachLayout& layout, double d) {
    return segment_headings(entry, layout, build_path(entry, layout, d));
}

}  // namespace tma
