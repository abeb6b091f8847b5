#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "tma/fuel.hpp"
#include "tma/trajopt.hpp"

using namespace tma;

TEST_CASE("ISA density anchors and monotonicity") {
    CHECK(isa_density(0.0) == 1.225);
    CHECK(isa_density(2000.0) == doctest::Approx(1.1549).epsilon(1e-4));
    double prev = isa_density(0.0);
    for (double h = 1000.0; h <= 36000.0; h += 1000.0) {
        const double rho = isa_density(h);
        CHECK(rho < prev);
        prev = rho;
    }
    CHECK_THROWS_AS(isa_density(-1.0), AltitudeOutOfRange);
    CHECK_THROWS_AS(isa_density(40000.0), AltitudeOutOfRange);
}

TEST_CASE("drag polar, hand-evaluated") {
    FuelCoefficients coeffs;
    coeffs.mass_kg = 60000.0;
    coeffs.wing_area_m2 = 122.0;
    coeffs.approach = {0.08, 0.045};
    coeffs.clean = {0.03, 0.04};
    coeffs.cf1 = coeffs.cf2_kts = coeffs.cf3_kg_min = coeffs.cf4_ft = 1.0;

    const double rho = 1.1549;
    const double v = 75.0;
    const double d = drag(coeffs, rho, v, 0.0, AeroConfiguration::Approach);
    // C_L = 2mg/(rho V^2 S) ~ 1.4847, C_D ~ 0.17919, D ~ 71.05 kN
    const double q = 0.5 * rho * v * v * coeffs.wing_area_m2;
    const double cl = coeffs.mass_kg * 9.80665 / q;
    CHECK(cl == doctest::Approx(1.4847).epsilon(2e-4));
    CHECK(d / 1000.0 == doctest::Approx(71.05).epsilon(1e-3));
    CHECK(d == doctest::Approx(q * (0.08 + 0.045 * cl * cl)).epsilon(1e-12));
}

TEST_CASE("bank raises the lift coefficient and hence induced drag") {
    const FuelCoefficients coeffs = FuelTable::synthetic_default().at("A321");
    const double rho = isa_density(2000.0);
    const double level = drag(coeffs, rho, 72.0, 0.0, AeroConfiguration::Approach);
    const double banked = drag(coeffs, rho, 72.0, 0.4, AeroConfiguration::Approach);
    CHECK(banked > level);
}

TEST_CASE("degenerate polar with k = 0 is mass-independent") {
    FuelCoefficients a;
    a.mass_kg = 50000.0;
    a.wing_area_m2 = 120.0;
    a.approach = {0.06, 0.0};
    FuelCoefficients b = a;
    b.mass_kg = 90000.0;
    CHECK(drag(a, 1.2, 70.0, 0.0, AeroConfiguration::Approach) ==
          drag(b, 1.2, 70.0, 0.0, AeroConfiguration::Approach));
}

TEST_CASE("fuel flow: TSFC slope, idle root, and the approach clamp") {
    FuelCoefficients coeffs;
    coeffs.cf1 = 0.7;
    coeffs.cf2_kts = 1000.0;
    coeffs.cf3_kg_min = 9.0;
    coeffs.cf4_ft = 80000.0;

    // V = 0: eta collapses to C_f1
    CHECK(fuel_flow(10.0, 0.0, 5000.0, coeffs, FuelPhase::Other) ==
          doctest::Approx(7.0).epsilon(1e-12));
    // h = C_f4: idle floor hits zero
    CHECK(fuel_flow(0.0, 140.0, 80000.0, coeffs, FuelPhase::Approach) == 0.0);
    // low thrust in approach: the floor takes over exactly when
    // eta * THR < f_min
    const double h = 2000.0;
    const double f_min = 9.0 * (1.0 - h / 80000.0);
    const double low = fuel_flow(0.1, 140.0, h, coeffs, FuelPhase::Approach);
    CHECK(low == doctest::Approx(f_min).epsilon(1e-12));
    const double eta = 0.7 * (1.0 + 140.0 / 1000.0);
    const double high = fuel_flow(50.0, 140.0, h, coeffs, FuelPhase::Approach);
    CHECK(high == doctest::Approx(eta * 50.0).epsilon(1e-12));
    // other phase never clamps
    CHECK(fuel_flow(0.1, 140.0, h, coeffs, FuelPhase::Other) ==
          doctest::Approx(eta * 0.1).epsilon(1e-12));
}

namespace {

TrajectoryDecision make_decision(double d, double vl, double va, double vf) {
    TrajectoryDecision dec;
    dec.d = d;
    dec.v_leg = vl;
    dec.v_arc = va;
    dec.v_final = vf;
    dec.committed = true;
    return dec;
}

}  // namespace

TEST_CASE("vertical profile pairs descent with the tangent leg") {
    const ApproachLayout layout = ApproachLayout::standard();
    const PathGeometry path = build_path(layout.corner_fixes.at("DALAS"), layout, 6.0);
    const TrajectoryDecision dec = make_decision(6.0, 220.0, 170.0, 140.0);
    const auto profile = vertical_profile(dec, path);
    CHECK(profile[0].mode == VerticalMode::IdleDescent);
    CHECK(profile[0].h_start_ft == 10000.0);
    CHECK(profile[0].h_end_ft == 2000.0);
    CHECK(profile[0].distance_nmi == path.tangent_leg_len);
    CHECK(profile[1].mode == VerticalMode::Level);
    CHECK(profile[1].bank_rad > 0.0);
    CHECK(profile[1].bank_rad < 1.0);
    CHECK(profile[2].distance_nmi == 6.0);
    CHECK(profile[2].bank_rad == 0.0);
}

TEST_CASE("trajectory fuel matches a closed-form evaluation") {
    const ApproachLayout layout = ApproachLayout::standard();
    const FuelCoefficients coeffs = FuelTable::synthetic_default().at("B737");
    const PathGeometry path = build_path(layout.corner_fixes.at("LOGEN"), layout, 4.0);
    const TrajectoryDecision dec = make_decision(4.0, 220.0, 170.0, 140.0);
    const WindComponents calm{0.0, 0.0, 0.0};

    // with a fine step the Riemann sum converges to the closed form:
    // descent integrand is linear in t, level segments are constant
    const double fuel = trajectory_fuel(dec, path, calm, coeffs, 0.01);

    const double dur_leg = 3600.0 * path.tangent_leg_len / 220.0;
    const double f_mid = coeffs.cf3_kg_min * (1.0 - 6000.0 / coeffs.cf4_ft);
    double expected = f_mid / 60.0 * dur_leg;

    const auto profile = vertical_profile(dec, path);
    const double rho = isa_density(2000.0);
    const double kts_to_mps = 1852.0 / 3600.0;
    const double arc_thr =
        drag(coeffs, rho, 170.0 * kts_to_mps, profile[1].bank_rad, AeroConfiguration::Approach) /
        1000.0;
    expected += fuel_flow(arc_thr, 170.0, 2000.0, coeffs, FuelPhase::Approach) / 60.0 *
                (3600.0 * path.arc_len / 170.0);
    const double fin_thr =
        drag(coeffs, rho, 140.0 * kts_to_mps, 0.0, AeroConfiguration::Approach) / 1000.0;
    expected += fuel_flow(fin_thr, 140.0, 2000.0, coeffs, FuelPhase::Approach) / 60.0 *
                (3600.0 * 4.0 / 140.0);

    CHECK(fuel == doctest::Approx(expected).epsilon(1e-3));
    CHECK(fuel > 0.0);
}

TEST_CASE("integration converges under step halving") {
    const ApproachLayout layout = ApproachLayout::standard();
    const FuelCoefficients coeffs = FuelTable::synthetic_default().at("A359");
    const PathGeometry path = build_path(layout.corner_fixes.at("HUSKY"), layout, 10.0);
    const TrajectoryDecision dec = make_decision(10.0, 200.0, 160.0, 145.0);
    const WindComponents wc{-3.0, 2.0, -5.0};
    const double coarse = trajectory_fuel(dec, path, wc, coeffs, 1.0);
    const double fine = trajectory_fuel(dec, path, wc, coeffs, 0.5);
    CHECK(std::fabs(coarse - fine) / fine < 1e-3);
}

TEST_CASE("fuel grows strictly with the extension at fixed speeds") {
    const ApproachLayout layout = ApproachLayout::standard();
    const FuelCoefficients coeffs = FuelTable::synthetic_default().at("A221");
    const Point2 entry = layout.corner_fixes.at("TIROE");
    const WindComponents calm{0.0, 0.0, 0.0};
    double prev = -1.0;
    for (double d = 0.0; d <= 16.0; d += 4.0) {
        const PathGeometry path = build_path(entry, layout, d);
        const TrajectoryDecision dec = make_decision(d, 210.0, 160.0, 130.0);
        const double fuel = trajectory_fuel(dec, path, calm, coeffs, 1.0);
        CHECK(fuel > prev);
        prev = fuel;
    }
}

TEST_CASE("coefficient table: defaults cover the fleet, loader rejects bad rows") {
    const FuelTable table = FuelTable::synthetic_default();
    for (const AircraftType& t : FleetCatalog::standard().types) {
        CHECK(table.by_type.count(t.name) == 1);
    }
    CHECK_THROWS_AS(table.at("NOPE"), FuelCoefficientError);

    const std::string good_path = "fuel_good_test.txt";
    {
        std::ofstream out(good_path);
        out << "# type mass S cd0c kc cd0a ka cf1 cf2 cf3 cf4\n";
        out << "TEST1 60000 120 0.025 0.04 0.06 0.045 0.7 1100 9.0 80000\n";
    }
    const FuelTable loaded = FuelTable::load(good_path);
    CHECK(loaded.at("TEST1").mass_kg == 60000.0);
    std::remove(good_path.c_str());

    const std::string bad_path = "fuel_bad_test.txt";
    {
        std::ofstream out(bad_path);
        out << "TEST2 60000 120 0.025 0.04 0.06 0.045 -0.7 1100 9.0 80000\n";
    }
    CHECK_THROWS_AS(FuelTable::load(bad_path), FuelCoefficientError);
    std::remove(bad_path.c_str());
    CHECK_THROWS_AS(FuelTable::load("does_not_exist.txt"), FuelCoefficientError);
}
