#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tma/geometry.hpp"
#include "tma/rng.hpp"

namespace tma {

enum class WeightClass { Heavy = 0, Large = 1, Small = 2 };

const char* to_string(WeightClass c);

struct AircraftType {
    std::string name;
    WeightClass weight_class = WeightClass::Large;
    double t_rwy_s = 0.0;   // runway-occupation time
    double v_ref_kts = 0.0; // reference landing speed
};

struct Aircraft {
    int id = 0;               // 1-based global index, assigned after the merge
    std::string corner;       // feeder-gate name
    Point2 entry_point;       // corner fix coordinates
    double tau = 0.0;         // TCP entry time, s
    AircraftType type;
};

// Leader-class x trailer-class minimum wake separation, seconds.
struct WakeMatrix {
    std::array<std::array<double, 3>, 3> sep_s{};

    double operator()(WeightClass leader, WeightClass trailer) const {
        return sep_s[static_cast<int>(leader)][static_cast<int>(trailer)];
    }
    static WakeMatrix standard();
};

// Six-type mixed fleet; class draw probabilities are (0.4, 0.4, 0.2) for
// (Heavy, Large, Small), then uniform within class.
struct FleetCatalog {
    std::vector<AircraftType> types;

    std::vector<const AircraftType*> of_class(WeightClass c) const;
    static FleetCatalog standard();
};

struct TrafficConfig {
    double lambda_min = 1.0;   // AC/hr
    double lambda_max = 30.0;  // AC/hr
    double t_sep_s = 66.0;     // same-stream entry buffer
    double t_max_s = 3600.0;   // scenario horizon
};

struct Scenario {
    std::vector<Aircraft> aircraft;          // sorted by tau
    std::array<double, 4> corner_rates{};    // AC/hr, in kCornerOrder order
    std::uint64_t seed = 0;

    double aggregate_rate() const {
        return corner_rates[0] + corner_rates[1] + corner_rates[2] + corner_rates[3];
    }
};

// Shifted-Poisson entry times: tau_0 = 0, tau_m = tau_{m-1} + t_sep + Exp(lambda).
// Stops when the next entry would exceed t_max.
std::vector<double> generate_stream(double lambda_per_hr, double t_sep_s, double t_max_s, Rng& rng);

// Independent uniform integer rate per corner, in kCornerOrder order.
std::array<double, 4> sample_rates(Rng& rng, int lambda_min, int lambda_max);

AircraftType sample_fleet(Rng& rng, const FleetCatalog& catalog);

// max(wake requirement, trailer runway-occupation time), seconds.
double required_separation(const Aircraft& leader, const Aircraft& trailer, const WakeMatrix& wake);

Scenario build_scenario(const TrafficConfig& config, const ApproachLayout& layout,
                        const FleetCatalog& catalog, std::uint64_t seed);

}  // namespace tma
