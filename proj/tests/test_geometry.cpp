#include <cmath>

#include "doctest.h"
#include "tma/geometry.hpp"
#include "tma/oracle.hpp"
#include "tma/rng.hpp"

using namespace tma;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("standard layout places corners on the TCP circle diagonals") {
    const ApproachLayout layout = ApproachLayout::standard();
    CHECK(layout.faf.x == 0.0);
    CHECK(layout.faf.y == 0.0);
    CHECK(layout.turn_radius == 2.5);
    CHECK(layout.tcp_radius == 35.0);
    REQUIRE(layout.corner_fixes.size() == 4);
    const double diag = 35.0 / std::sqrt(2.0);
    for (const char* name : kCornerOrder) {
        const Point2 p = layout.corner_fixes.at(name);
        CHECK(norm(p) == doctest::Approx(35.0).epsilon(1e-12));
        CHECK(std::fabs(p.x) == doctest::Approx(diag).epsilon(1e-12));
        CHECK(std::fabs(p.y) == doctest::Approx(diag).epsilon(1e-12));
    }
    // two north corners, two south corners
    int north = 0;
    for (const char* name : kCornerOrder) {
        if (layout.corner_fixes.at(name).y > 0.0) ++north;
    }
    CHECK(north == 2);
}

TEST_CASE("side selection and the dead band") {
    const ApproachLayout layout = ApproachLayout::standard();
    CHECK(side_of({0.0, 10.0}, layout) == ApproachSide::North);
    CHECK(side_of({0.0, -10.0}, layout) == ApproachSide::South);
    CHECK_THROWS_AS(side_of({0.0, 1.0}, layout), EntryInDeadBand);
    CHECK_THROWS_AS(side_of({10.0, -2.0}, layout), EntryInDeadBand);
}

TEST_CASE("turn center sits one radius off the final course, shifted by d") {
    const ApproachLayout layout = ApproachLayout::standard();
    const Point2 c0 = turn_center({0.0, 10.0}, layout, 0.0);
    CHECK(c0.x == doctest::Approx(0.0));
    CHECK(c0.y == doctest::Approx(2.5));
    const Point2 c5 = turn_center({0.0, 10.0}, layout, 5.0);
    CHECK(c5.x == doctest::Approx(-5.0));
    CHECK(c5.y == doctest::Approx(2.5));
    const Point2 cs = turn_center({0.0, -10.0}, layout, 0.0);
    CHECK(cs.y == doctest::Approx(-2.5));
}

TEST_CASE("worked tangent instance: entry (0,10), d = 0") {
    const ApproachLayout layout = ApproachLayout::standard();
    const Point2 entry{0.0, 10.0};
    const Point2 center = turn_center(entry, layout, 0.0);
    const auto [leg_len, tangent] = tangent_geometry(entry, center, 2.5, ApproachSide::North);
    CHECK(leg_len == doctest::Approx(std::sqrt(50.0)).epsilon(1e-9));
    CHECK(tangent.x == doctest::Approx(-2.35702).epsilon(1e-5));
    CHECK(tangent.y == doctest::Approx(3.33333).epsilon(1e-5));
    CHECK(rf_arc_angle(tangent, center, ApproachSide::North) ==
          doctest::Approx(1.91063).epsilon(1e-5));
}

TEST_CASE("tangency fails when the entry is on or inside the turn circle") {
    const ApproachLayout layout = ApproachLayout::standard();
    // entry at (0,4): distance to the d=0 center (0,2.5) is 1.5 < r
    CHECK_THROWS_AS(build_path({0.0, 4.0}, layout, 0.0), EntryInsideTurnCircle);
}

TEST_CASE("worked nominal duration matches the numeric path oracle") {
    const ApproachLayout layout = ApproachLayout::standard();
    const Point2 entry{0.0, 10.0};
    const SegmentSpeeds speeds{240.0, 200.0, 140.0};
    const auto [path, duration] = path_and_time(entry, layout, 0.0, speeds);
    CHECK(duration == doctest::Approx(192.05).epsilon(1e-3));
    const auto numeric = oracle::numeric_path(entry, layout, 0.0, speeds);
    CHECK(std::fabs(duration - numeric.duration_s) < 1e-4);
    CHECK(std::fabs(path.total_len - numeric.length_nmi) < 1e-5);
}

TEST_CASE("randomized residual scan: tangency, radius, expanded angle") {
    const ApproachLayout layout = ApproachLayout::standard();
    Rng rng(20240901);
    int checked = 0;
    for (int i = 0; i < 3000; ++i) {
        const char* corner = kCornerOrder[rng.uniform_int(0, 3)];
        const Point2 entry = layout.corner_fixes.at(corner);
        const double d = rng.uniform01() * 27.5;
        try {
            const auto res = oracle::geometry_residuals(entry, layout, d);
            CHECK(res.orthogonality < 1e-9);
            CHECK(res.radius < 1e-9);
            CHECK(res.expanded_diff < 1e-9);
            CHECK(res.theta >= 0.0);
            CHECK(res.theta <= kPi);
            ++checked;
        } catch (const GeometryError&) {
            // d pushed the center past the tangency limit for this corner
        }
    }
    CHECK(checked > 2000);
}

TEST_CASE("mirror symmetry across the final course is exact") {
    const ApproachLayout layout = ApproachLayout::standard();
    Rng rng(77);
    for (int i = 0; i < 500; ++i) {
        const double x = -30.0 + rng.uniform01() * 60.0;
        const double y = 5.0 + rng.uniform01() * 25.0;
        const double d = rng.uniform01() * 15.0;
        PathGeometry north, south;
        try {
            north = build_path({x, y}, layout, d);
            south = build_path({x, -y}, layout, d);
        } catch (const GeometryError&) {
            continue;
        }
        // the construction only ever negates y-coordinates, so the mirror
        // image must match to the last bit
        CHECK(north.tangent_leg_len == south.tangent_leg_len);
        CHECK(north.arc_angle == south.arc_angle);
        CHECK(north.total_len == south.total_len);
        CHECK(north.turn_center.y == -south.turn_center.y);
        CHECK(north.tangent_point.y == -south.tangent_point.y);
    }
}

TEST_CASE("path length grows with the extension") {
    const ApproachLayout layout = ApproachLayout::standard();
    const Point2 entry = layout.corner_fixes.at("DALAS");
    double prev = -1.0;
    for (double d = 0.0; d <= 20.0; d += 2.5) {
        const PathGeometry path = build_path(entry, layout, d);
        CHECK(path.total_len > prev);
        CHECK(path.extension == d);
        CHECK(path.total_len ==
              doctest::Approx(path.tangent_leg_len + path.arc_len + d).epsilon(1e-12));
        prev = path.total_len;
    }
}

TEST_CASE("nominal duration splits across the three segments") {
    const ApproachLayout layout = ApproachLayout::standard();
    const Point2 entry = layout.corner_fixes.at("HUSKY");
    const PathGeometry path = build_path(entry, layout, 8.0);
    const SegmentSpeeds speeds{200.0, 160.0, 135.0};
    const double expected = 3600.0 * (path.tangent_leg_len / 200.0 + path.arc_len / 160.0 +
                                      path.extension / 135.0);
    CHECK(path_duration(path, speeds) == doctest::Approx(expected).epsilon(1e-12));
}
