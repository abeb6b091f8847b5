#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "tma/geometry.hpp"
#include "tma/trajopt.hpp"
#include "tma/wind.hpp"

namespace tma {

class AltitudeOutOfRange : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class FuelCoefficientError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class AeroConfiguration { Clean, Approach };
enum class FuelPhase { Approach, Other };

struct DragPolar {
    double cd0 = 0.0;
    double induced_k = 0.0;
};

// Performance coefficients for one aircraft type. TSFC and idle-flow
// coefficients use their native units: kg/(min*kN), kts, kg/min, ft.
struct FuelCoefficients {
    double mass_kg = 0.0;
    double wing_area_m2 = 0.0;
    DragPolar clean;
    DragPolar approach;
    double cf1 = 0.0;      // kg/(min*kN)
    double cf2_kts = 0.0;  // TSFC speed scale
    double cf3_kg_min = 0.0;
    double cf4_ft = 0.0;

    void validate(const std::string& name) const;
};

// Type name -> coefficients. Ships with a synthetic default table (real
// BADA values are license-restricted); a user file with the same schema
// replaces it.
struct FuelTable {
    std::map<std::string, FuelCoefficients> by_type;

    const FuelCoefficients& at(const std::string& type) const;
    static FuelTable synthetic_default();
    // One record per line:
    //   type mass_kg wing_area_m2 cd0_clean k_clean cd0_approach k_approach
    //   cf1 cf2_kts cf3_kg_min cf4_ft
    // '#' starts a comment. Nonpositive values are rejected.
    static FuelTable load(const std::string& path);
};

enum class VerticalMode { IdleDescent, Level };

// One leg of the level-descent-level vertical profile paired with the
// lateral path: idle descent on the tangent leg, level flight at 2000 ft
// on the RF arc and the final extension.
struct VerticalSegment {
    VerticalMode mode = VerticalMode::Level;
    double h_start_ft = 0.0;
    double h_end_ft = 0.0;
    double distance_nmi = 0.0;
    double speed_kts = 0.0;  // TAS
    double bank_rad = 0.0;
    AeroConfiguration configuration = AeroConfiguration::Approach;
};

// The three-segment vertical profile for a committed decision; zero-length
// segments (e.g. d = 0) are kept with distance 0.
std::array<VerticalSegment, 3> vertical_profile(const TrajectoryDecision& decision,
                                                const PathGeometry& path);

// ISA troposphere density, kg/m^3; h in [0, 36089] ft.
double isa_density(double h_ft);

// Drag in newtons from the configuration drag polar.
double drag(const FuelCoefficients& coeffs, double rho, double v_tas_mps, double bank_rad,
            AeroConfiguration configuration);

// BADA-style fuel flow in kg/min; approach phase applies the idle floor.
double fuel_flow(double thrust_kn, double v_tas_kts, double h_ft, const FuelCoefficients& coeffs,
                 FuelPhase phase);

// Total fuel (kg) for one committed trajectory over the three-segment
// level-descent-level vertical profile; fixed-step Riemann sum.
double trajectory_fuel(const TrajectoryDecision& decision, const PathGeometry& path,
                       const WindComponents& wind, const FuelCoefficients& coeffs, double dt_s);

}  // namespace tma
