#include "tma/traffic.hpp"

#include <algorithm>
#include <stdexcept>

namespace tma {

const char* to_string(WeightClass c) {
    switch (c) {
        case WeightClass::Heavy: return "Heavy";
        case WeightClass::Large: return "Large";
        case WeightClass::Small: return "Small";
    }
    return "?";
}

WakeMatrix WakeMatrix::standard() {
    WakeMatrix m;
    // rows: leader Heavy/Large/Small; cols: trailer Heavy/Large/Small
    m.sep_s[static_cast<int>(WeightClass::Heavy)] = {82.0, 118.0, 150.0};
    m.sep_s[static_cast<int>(WeightClass::Large)] = {60.0, 64.0, 94.0};
    m.sep_s[static_cast<int>(WeightClass::Small)] = {60.0, 64.0, 94.0};
    return m;
}

FleetCatalog FleetCatalog::standard() {
    FleetCatalog c;
    c.types = {
        {"A359", WeightClass::Heavy, 85.0, 140.0},
        {"B773", WeightClass::Heavy, 85.0, 150.0},
        {"A321", WeightClass::Large, 66.0, 140.0},
        {"B737", WeightClass::Large, 62.0, 142.0},
        {"A221", WeightClass::Small, 72.0, 130.0},
        {"B735", WeightClass::Small, 72.0, 127.0},
    };
    return c;
}

std::vector<const AircraftType*> FleetCatalog::of_class(WeightClass wc) const {
    std::vector<const AircraftType*> out;
    for (const auto& t : types) {
        if (t.weight_class == wc) out.push_back(&t);
    }
    return out;
}

std::vector<double> generate_stream(double lambda_per_hr, double t_sep_s, double t_max_s,
                                    Rng& rng) {
    std::vector<double> entries;
    double tau = 0.0;
    // tau_0 = 0 is itself subject to the horizon stop rule
    while (tau <= t_max_s) {
        entries.push_back(tau);
        tau += t_sep_s + kSecondsPerHour * rng.exponential(lambda_per_hr);
    }
    return entries;
}

std::array<double, 4> sample_rates(Rng& rng, int lambda_min, int lambda_max) {
    if (lambda_min < 1 || lambda_min > lambda_max) {
        throw std::invalid_argument("invalid lambda range");
    }
    std::array<double, 4> rates{};
    for (auto& r : rates) r = static_cast<double>(rng.uniform_int(lambda_min, lambda_max));
    return rates;
}

AircraftType sample_fleet(Rng& rng, const FleetCatalog& catalog) {
    const double u = rng.uniform01();
    const WeightClass wc =
        u <= 0.4 ? WeightClass::Heavy : (u <= 0.8 ? WeightClass::Large : WeightClass::Small);
    const auto members = catalog.of_class(wc);
    if (members.empty()) throw std::runtime_error("fleet catalog has no type for a weight class");
    const int idx = rng.uniform_int(0, static_cast<int>(members.size()) - 1);
    return *members[idx];
}

double required_separation(const Aircraft& leader, const Aircraft& trailer,
                           const WakeMatrix& wake) {
    return std::max(wake(leader.type.weight_class, trailer.type.weight_class),
                    trailer.type.t_rwy_s);
}

Scenario build_scenario(const TrafficConfig& config, const ApproachLayout& layout,
                        const FleetCatalog& catalog, std::uint64_t seed) {
    Rng rng(seed);
    Scenario scenario;
    scenario.seed = seed;
    scenario.corner_rates = sample_rates(rng, static_cast<int>(config.lambda_min),
                                         static_cast<int>(config.lambda_max));

    for (int c = 0; c < 4; ++c) {
        const std::string corner = kCornerOrder[c];
        const Point2 fix = layout.corner_fixes.at(corner);
        const auto entries =
            generate_stream(scenario.corner_rates[c], config.t_sep_s, config.t_max_s, rng);
        for (double tau : entries) {
            Aircraft ac;
            ac.corner = corner;
            ac.entry_point = fix;
            ac.tau = tau;
            ac.type = sample_fleet(rng, catalog);
            scenario.aircraft.push_back(std::move(ac));
        }
    }

    // Stable merge: ties broken by corner order (generation order above),
    // then per-stream index, both preserved by stable_sort.
    std::stable_sort(scenario.aircraft.begin(), scenario.aircraft.end(),
                     [](const Aircraft& a, const Aircraft& b) { return a.tau < b.tau; });
    int id = 1;
    for (auto& ac : scenario.aircraft) ac.id = id++;
    return scenario;
}

}  // namespace tma
