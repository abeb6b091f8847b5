#include "tma/fuel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace tma {

namespace {

constexpr double kRho0 = 1.225;          // kg/m^3
constexpr double kT0 = 288.15;           // K
constexpr double kLapse = 6.5e-3;        // K/m
constexpr double kDensityExp = 4.2561;   // g/(R*L) - 1
constexpr double kG = 9.80665;           // m/s^2
constexpr double kFtToM = 0.3048;
constexpr double kNmiToM = 1852.0;
constexpr double kKtsToMps = 1852.0 / 3600.0;
constexpr double kTropopauseFt = 36089.0;
constexpr double kDescentTopFt = 10000.0;
constexpr double kLevelAltFt = 2000.0;

// Left Riemann sum of f over [0, duration] with fixed step dt plus the
// trailing partial step.
template <typename F>
double integrate(double duration_s, double dt_s, F f) {
    if (duration_s <= 0.0) return 0.0;
    double total = 0.0;
    double t = 0.0;
    while (t + dt_s <= duration_s) {
        total += f(t) * dt_s;
        t += dt_s;
    }
    if (t < duration_s) total += f(t) * (duration_s - t);
    return total;
}

}  // namespace

void FuelCoefficients::validate(const std::string& name) const {
    auto check = [&](double v, const char* field) {
        if (!(v > 0.0)) {
            throw FuelCoefficientError("fuel coefficients for '" + name + "': " + field +
                                       " must be positive");
        }
    };
    check(mass_kg, "mass_kg");
    check(wing_area_m2, "wing_area_m2");
    check(clean.cd0, "cd0_clean");
    check(clean.induced_k, "k_clean");
    check(approach.cd0, "cd0_approach");
    check(approach.induced_k, "k_approach");
    check(cf1, "cf1");
    check(cf2_kts, "cf2_kts");
    check(cf3_kg_min, "cf3_kg_min");
    check(cf4_ft, "cf4_ft");
}

const FuelCoefficients& FuelTable::at(const std::string& type) const {
    auto it = by_type.find(type);
    if (it == by_type.end()) {
        throw FuelCoefficientError("no fuel coefficients for aircraft type '" + type + "'");
    }
    return it->second;
}

FuelTable FuelTable::synthetic_default() {
    // Synthetic placeholder coefficients in plausible ranges; real
    // performance-database values are license-restricted and must be
    // supplied via FuelTable::load.
    FuelTable table;
    auto add = [&](const std::string& name, double m, double s, DragPolar clean, DragPolar app,
                   double cf1, double cf2, double cf3, double cf4) {
        FuelCoefficients c;
        c.mass_kg = m;
        c.wing_area_m2 = s;
        c.clean = clean;
        c.approach = app;
        c.cf1 = cf1;
        c.cf2_kts = cf2;
        c.cf3_kg_min = cf3;
        c.cf4_ft = cf4;
        c.validate(name);
        table.by_type[name] = c;
    };
    add("A359", 250000.0, 443.0, {0.023, 0.036}, {0.060, 0.040}, 0.75, 1050.0, 14.0, 85000.0);
    add("B773", 280000.0, 428.0, {0.024, 0.038}, {0.062, 0.042}, 0.80, 1000.0, 15.5, 82000.0);
    add("A321", 83000.0, 122.0, {0.024, 0.0375}, {0.062, 0.042}, 0.65, 1150.0, 9.5, 78000.0);
    add("B737", 70000.0, 124.0, {0.025, 0.040}, {0.064, 0.044}, 0.70, 1100.0, 9.0, 80000.0);
    add("A221", 55000.0, 112.0, {0.023, 0.040}, {0.060, 0.044}, 0.60, 1200.0, 8.0, 75000.0);
    add("B735", 52000.0, 105.0, {0.026, 0.042}, {0.066, 0.046}, 0.68, 1050.0, 8.5, 76000.0);
    return table;
}

FuelTable FuelTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FuelCoefficientError("cannot open fuel coefficient file: " + path);
    FuelTable table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name)) continue;  // blank/comment line
        FuelCoefficients c;
        if (!(ls >> c.mass_kg >> c.wing_area_m2 >> c.clean.cd0 >> c.clean.induced_k >>
              c.approach.cd0 >> c.approach.induced_k >> c.cf1 >> c.cf2_kts >> c.cf3_kg_min >>
              c.cf4_ft)) {
            throw FuelCoefficientError(path + ":" + std::to_string(line_no) +
                                       ": expected 11 fields (type + 10 numbers)");
        }
        c.validate(name);
        table.by_type[name] = c;
    }
    if (table.by_type.empty()) {
        throw FuelCoefficientError(path + ": no coefficient records found");
    }
    return table;
}

double isa_density(double h_ft) {
    if (!(h_ft >= 0.0 && h_ft <= kTropopauseFt)) {
        throw AltitudeOutOfRange("altitude outside ISA troposphere range: " +
                                 std::to_string(h_ft) + " ft");
    }
    const double h_m = h_ft * kFtToM;
    return kRho0 * std::pow(1.0 - kLapse * h_m / kT0, kDensityExp);
}

double drag(const FuelCoefficients& coeffs, double rho, double v_tas_mps, double bank_rad,
            AeroConfiguration configuration) {
    const DragPolar& polar =
        configuration == AeroConfiguration::Clean ? coeffs.clean : coeffs.approach;
    const double q = 0.5 * rho * v_tas_mps * v_tas_mps * coeffs.wing_area_m2;
    const double cl = coeffs.mass_kg * kG / (q * std::cos(bank_rad));
    const double cd = polar.cd0 + polar.induced_k * cl * cl;
    return q * cd;
}

double fuel_flow(double thrust_kn, double v_tas_kts, double h_ft, const FuelCoefficients& coeffs,
                 FuelPhase phase) {
    const double eta = coeffs.cf1 * (1.0 + v_tas_kts / coeffs.cf2_kts);
    const double f_nom = eta * thrust_kn;
    if (phase != FuelPhase::Approach) return f_nom;
    const double f_min = coeffs.cf3_kg_min * (1.0 - h_ft / coeffs.cf4_ft);
    return std::max(f_nom, f_min);
}

std::array<VerticalSegment, 3> vertical_profile(const TrajectoryDecision& decision,
                                                const PathGeometry& path) {
    std::array<VerticalSegment, 3> segments{};

    segments[0].mode = VerticalMode::IdleDescent;
    segments[0].h_start_ft = kDescentTopFt;
    segments[0].h_end_ft = kLevelAltFt;
    segments[0].distance_nmi = path.tangent_leg_len;
    segments[0].speed_kts = decision.v_leg;
    segments[0].configuration = AeroConfiguration::Approach;

    segments[1].mode = VerticalMode::Level;
    segments[1].h_start_ft = kLevelAltFt;
    segments[1].h_end_ft = kLevelAltFt;
    segments[1].distance_nmi = path.arc_len;
    segments[1].speed_kts = decision.v_arc;
    // Coordinated-turn bank at the commanded arc speed.
    if (path.arc_angle > 1e-12) {
        const double r_m = (path.arc_len / path.arc_angle) * kNmiToM;
        const double v_mps = decision.v_arc * kKtsToMps;
        segments[1].bank_rad = std::atan(v_mps * v_mps / (kG * r_m));
    }
    segments[1].configuration = AeroConfiguration::Approach;

    segments[2].mode = VerticalMode::Level;
    segments[2].h_start_ft = kLevelAltFt;
    segments[2].h_end_ft = kLevelAltFt;
    segments[2].distance_nmi = path.extension;
    segments[2].speed_kts = decision.v_final;
    segments[2].configuration = AeroConfiguration::Approach;

    return segments;
}

double trajectory_fuel(const TrajectoryDecision& decision, const PathGeometry& path,
                       const WindComponents& wind, const FuelCoefficients& coeffs, double dt_s) {
    const auto segments = vertical_profile(decision, path);
    const double wind_of[3] = {wind.leg, wind.arc, wind.final_leg};

    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
        const VerticalSegment& seg = segments[i];
        if (seg.distance_nmi <= 0.0) continue;
        const double gs = seg.speed_kts + wind_of[i];
        if (gs <= 0.0) {
            throw NonpositiveGroundSpeed("nonpositive ground speed in fuel integration");
        }
        const double duration = kSecondsPerHour * seg.distance_nmi / gs;

        if (seg.mode == VerticalMode::IdleDescent) {
            // Idle thrust: the flow floor dominates; altitude is linear in
            // time over the segment.
            const double slope = (seg.h_end_ft - seg.h_start_ft) / duration;
            total += integrate(duration, dt_s, [&](double t) {
                const double h = seg.h_start_ft + slope * t;
                const double f_min = coeffs.cf3_kg_min * (1.0 - h / coeffs.cf4_ft);
                return f_min / 60.0;  // kg/min -> kg/s
            });
        } else {
            // Level flight at constant speed: thrust = drag.
            const double rho = isa_density(seg.h_start_ft);
            const double v_mps = seg.speed_kts * kKtsToMps;
            const double thrust_kn =
                drag(coeffs, rho, v_mps, seg.bank_rad, seg.configuration) / 1000.0;
            const double flow =
                fuel_flow(thrust_kn, seg.speed_kts, seg.h_start_ft, coeffs, FuelPhase::Approach);
            total += integrate(duration, dt_s, [&](double) { return flow / 60.0; });
        }
    }
    return total;
}

}  // namespace tma
