#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace tma {

constexpr double kSecondsPerHour = 3600.0;

struct Point2 {
    double x = 0.0;  // nmi, east-positive
    double y = 0.0;  // nmi, north-positive
};

inline Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
double norm(const Point2& a);

// Which side of the runway centerline the entry fix lies on.
enum class ApproachSide { North, South };

class GeometryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Entry fix lies within the band [Y_faf - r, Y_faf + r] where neither the
// north nor the south turn-center case applies.
class EntryInDeadBand : public GeometryError {
  public:
    using GeometryError::GeometryError;
};

// No tangent exists: the entry fix is on or inside the turn circle.
class EntryInsideTurnCircle : public GeometryError {
  public:
    using GeometryError::GeometryError;
};

struct ApproachLayout {
    Point2 faf{0.0, 0.0};
    double turn_radius = 2.5;  // nmi
    double tcp_radius = 35.0;  // nmi
    std::map<std::string, Point2> corner_fixes;

    // FAF at the origin, corners on the TCP circle at the four diagonal
    // bearings (NW, NE, SE, SW).
    static ApproachLayout standard();
};

// Fixed iteration order for the four feeder gates; also the entry-time
// tie-break order when two corners emit identical tau.
inline const char* const kCornerOrder[4] = {"DALAS", "LOGEN", "HUSKY", "TIROE"};

struct PathGeometry {
    Point2 turn_center;
    Point2 tangent_point;
    double tangent_leg_len = 0.0;  // d_L, nmi
    double arc_angle = 0.0;        // theta, rad, in [0, pi]
    double arc_len = 0.0;          // r * theta, nmi
    double extension = 0.0;        // d, nmi
    double total_len = 0.0;        // D, nmi
};

struct SegmentSpeeds {
    double v_leg = 0.0;    // tangent leg, kts
    double v_arc = 0.0;    // RF turn, kts
    double v_final = 0.0;  // final extension, kts
};

// x-components of the per-segment heading unit vectors; the arc heading
// uses the chord direction.
struct SegmentHeadings {
    double leg_x = 0.0;
    double arc_x = 0.0;
    double final_x = 1.0;
};

ApproachSide side_of(const Point2& entry, const ApproachLayout& layout);

// Turn-circle center for extension d; throws EntryInDeadBand.
Point2 turn_center(const Point2& entry, const ApproachLayout& layout, double d);

// Tangent-leg length and tangent point from entry onto the circle at
// `center`; throws EntryInsideTurnCircle when |entry - center| <= r.
std::pair<double, Point2> tangent_geometry(const Point2& entry, const Point2& center, double r,
                                           ApproachSide side);

// Central angle of the RF arc, in [0, pi].
double rf_arc_angle(const Point2& tangent_point, const Point2& center, ApproachSide side);

// Fully expanded closed form of the arc angle in terms of entry/FAF
// coordinates only; must agree with rf_arc_angle on the constructed
// tangent point.
double rf_arc_angle_expanded(const Point2& entry, const ApproachLayout& layout, double d);

// Assembles the full three-segment path for extension d.
PathGeometry build_path(const Point2& entry, const ApproachLayout& layout, double d);

// Nominal (no-wind) travel time in seconds over the three segments.
double path_duration(const PathGeometry& path, const SegmentSpeeds& speeds);

std::pair<PathGeometry, double> path_and_time(const Point2& entry, const ApproachLayout& layout,
                                              double d, const SegmentSpeeds& speeds);

SegmentHeadings segment_headings(const Point2& entry, const ApproachLayout& layout, double d);
SegmentHeadings segment_headings(const Point2& entry, const ApproachLayout& layout,
                                 const PathGeometry& path);

}  // namespace tma
