#include "tma/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tma {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

KeyValueFile parse_lines(std::istream& in, const std::string& path) {
    KeyValueFile kv;
    kv.path = path;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
        }
        if (kv.entries.count(key)) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": duplicate key '" + key +
                              "' (first at line " + std::to_string(kv.entries[key].line) + ")");
        }
        kv.entries[key] = {value, line_no, false};
    }
    return kv;
}

}  // namespace

bool KeyValueFile::has(const std::string& key) const { return entries.count(key) != 0; }

void KeyValueFile::fail(const std::string& key, const std::string& why) const {
    auto it = entries.find(key);
    if (it != entries.end()) {
        throw ConfigError(path + ":" + std::to_string(it->second.line) + ": key '" + key + "': " +
                          why);
    }
    throw ConfigError(path + ": key '" + key + "': " + why);
}

std::string KeyValueFile::get_string(const std::string& key, const std::string& fallback) const {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    it->second.used = true;
    return it->second.value;
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    it->second.used = true;
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(it->second.value, &pos);
    } catch (const std::exception&) {
        fail(key, "not a number: '" + it->second.value + "'");
    }
    if (pos != it->second.value.size()) fail(key, "trailing junk in '" + it->second.value + "'");
    return v;
}

int KeyValueFile::get_int(const std::string& key, int fallback) const {
    const double v = get_double(key, static_cast<double>(fallback));
    if (v != std::floor(v)) fail(key, "expected an integer");
    return static_cast<int>(v);
}

std::uint64_t KeyValueFile::get_u64(const std::string& key, std::uint64_t fallback) const {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    it->second.used = true;
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(it->second.value, &pos);
        if (pos != it->second.value.size()) throw std::invalid_argument("junk");
        return v;
    } catch (const std::exception&) {
        fail(key, "not an unsigned integer: '" + it->second.value + "'");
    }
}

std::vector<std::string> KeyValueFile::get_list(const std::string& key,
                                                const std::vector<std::string>& fallback) const {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    it->second.used = true;
    std::vector<std::string> out;
    std::stringstream ss(it->second.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    if (out.empty()) fail(key, "empty list");
    return out;
}

std::vector<std::string> KeyValueFile::unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [key, entry] : entries) {
        if (!entry.used) out.push_back(key);
    }
    return out;
}

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_lines(in, path);
}

KeyValueFile KeyValueFile::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse_lines(in, "<inline>");
}

ExperimentConfig ExperimentConfig::defaults() {
    ExperimentConfig c;
    c.layout = ApproachLayout::standard();
    c.fleet = FleetCatalog::standard();
    c.wake = WakeMatrix::standard();
    c.fuel = FuelTable::synthetic_default();
    c.policies = {Policy::parse("foffs")};
    c.grids = {Grid{}};
    return c;
}

namespace {

WeightClass parse_class(const KeyValueFile& kv, const std::string& key, const std::string& text) {
    if (text == "heavy" || text == "Heavy" || text == "H") return WeightClass::Heavy;
    if (text == "large" || text == "Large" || text == "L") return WeightClass::Large;
    if (text == "small" || text == "Small" || text == "S") return WeightClass::Small;
    kv.fail(key, "unknown weight class '" + text + "' (expected heavy/large/small)");
}

}  // namespace

ExperimentConfig load_experiment_config(const KeyValueFile& kv) {
    ExperimentConfig c = ExperimentConfig::defaults();

    c.seeds = kv.get_int("run.seeds", c.seeds);
    c.winds_per_seed = kv.get_int("wind.samples_per_seed", c.winds_per_seed);
    c.master_seed = kv.get_u64("run.master_seed", c.master_seed);
    c.threads = kv.get_int("run.threads", c.threads);
    c.out_dir = kv.get_string("run.out_dir", c.out_dir);

    {
        std::vector<std::string> names;
        for (const Policy& p : c.policies) names.push_back(p.name());
        names = kv.get_list("policy", names);
        c.policies.clear();
        for (const std::string& n : names) {
            try {
                c.policies.push_back(Policy::parse(n));
            } catch (const std::exception& e) {
                kv.fail("policy", e.what());
            }
        }
    }
    {
        std::vector<std::string> dd = kv.get_list("grids.delta_d_nmi", {"0.5"});
        std::vector<std::string> ds = kv.get_list("grids.delta_s_kts", {"5"});
        if (dd.size() != ds.size()) {
            kv.fail("grids.delta_d_nmi", "grid step lists must have equal length");
        }
        c.grids.clear();
        for (std::size_t i = 0; i < dd.size(); ++i) {
            Grid g;
            try {
                g.delta_d = std::stod(dd[i]);
                g.delta_s = std::stod(ds[i]);
            } catch (const std::exception&) {
                kv.fail("grids.delta_d_nmi", "grid steps must be numeric");
            }
            c.grids.push_back(g);
        }
    }

    c.layout.faf.x = kv.get_double("faf_x", c.layout.faf.x);
    c.layout.faf.y = kv.get_double("faf_y", c.layout.faf.y);
    c.layout.turn_radius = kv.get_double("turn_radius_nmi", c.layout.turn_radius);
    c.layout.tcp_radius = kv.get_double("tcp_radius_nmi", c.layout.tcp_radius);
    for (const char* name : kCornerOrder) {
        const std::string prefix = std::string("corner.") + name + ".";
        Point2& p = c.layout.corner_fixes[name];
        p.x = kv.get_double(prefix + "x", p.x);
        p.y = kv.get_double(prefix + "y", p.y);
    }

    c.wind_mu_kts = kv.get_double("wind.mu_kts", c.wind_mu_kts);
    c.wind_sigma_kts = kv.get_double("wind.sigma_kts", c.wind_sigma_kts);

    c.traffic.lambda_min = kv.get_double("traffic.lambda_min", c.traffic.lambda_min);
    c.traffic.lambda_max = kv.get_double("traffic.lambda_max", c.traffic.lambda_max);
    c.traffic.t_sep_s = kv.get_double("traffic.t_sep_s", c.traffic.t_sep_s);
    c.traffic.t_max_s = kv.get_double("traffic.t_max_s", c.traffic.t_max_s);

    // Fleet overrides: fleet.<NAME>.class / .t_rwy_s / .v_ref_kts; an
    // unknown <NAME> adds a new type.
    for (const auto& [key, entry] : kv.entries) {
        if (key.rfind("fleet.", 0) != 0) continue;
        const auto second = key.find('.', 6);
        if (second == std::string::npos) kv.fail(key, "expected fleet.<TYPE>.<field>");
        const std::string type_name = key.substr(6, second - 6);
        const std::string field = key.substr(second + 1);
        auto it = std::find_if(c.fleet.types.begin(), c.fleet.types.end(),
                               [&](const AircraftType& t) { return t.name == type_name; });
        if (it == c.fleet.types.end()) {
            AircraftType t;
            t.name = type_name;
            c.fleet.types.push_back(t);
            it = std::prev(c.fleet.types.end());
        }
        if (field == "class") {
            it->weight_class = parse_class(kv, key, kv.get_string(key, ""));
        } else if (field == "t_rwy_s") {
            it->t_rwy_s = kv.get_double(key, it->t_rwy_s);
        } else if (field == "v_ref_kts") {
            it->v_ref_kts = kv.get_double(key, it->v_ref_kts);
        } else {
            kv.fail(key, "unknown fleet field '" + field + "'");
        }
    }

    // Wake overrides: wake.<leader-class>.<trailer-class> in seconds.
    const char* class_codes[3] = {"H", "L", "S"};
    for (int leader = 0; leader < 3; ++leader) {
        for (int trailer = 0; trailer < 3; ++trailer) {
            const std::string key =
                std::string("wake.") + class_codes[leader] + "." + class_codes[trailer];
            c.wake.sep_s[leader][trailer] = kv.get_double(key, c.wake.sep_s[leader][trailer]);
        }
    }

    c.bounds.v_leg_min = kv.get_double("bounds.vL_min", c.bounds.v_leg_min);
    c.bounds.v_leg_max = kv.get_double("bounds.vL_max", c.bounds.v_leg_max);
    c.bounds.v_arc_min = kv.get_double("bounds.vtheta_min", c.bounds.v_arc_min);
    c.bounds.v_arc_max = kv.get_double("bounds.vtheta_max", c.bounds.v_arc_max);
    c.bounds.d_max = kv.get_double("bounds.d_max_nmi", c.bounds.d_max);

    c.weights.safe = kv.get_double("weights.safe", c.weights.safe);
    c.weights.thru = kv.get_double("weights.thru", c.weights.thru);
    c.weights.delay = kv.get_double("weights.delay", c.weights.delay);
    c.weights.eff = kv.get_double("weights.eff", c.weights.eff);
    c.weights.speed = kv.get_double("weights.speed", c.weights.speed);

    c.fuel_dt_s = kv.get_double("fuel.dt_s", c.fuel_dt_s);
    const std::string fuel_path = kv.get_string("fuel.coefficients_path", "");
    if (!fuel_path.empty()) {
        try {
            c.fuel = FuelTable::load(fuel_path);
        } catch (const FuelCoefficientError& e) {
            kv.fail("fuel.coefficients_path", e.what());
        }
    }

    const std::vector<std::string> unknown = kv.unused_keys();
    if (!unknown.empty()) kv.fail(unknown.front(), "unknown key");

    try {
        validate_config(c);
    } catch (const ConfigError& e) {
        throw ConfigError(kv.path + ": " + e.what());
    }
    return c;
}

ExperimentConfig load_experiment_config_file(const std::string& path) {
    return load_experiment_config(KeyValueFile::parse_file(path));
}

void validate_config(const ExperimentConfig& c) {
    if (c.seeds < 1) throw ConfigError("run.seeds must be >= 1");
    if (c.winds_per_seed < 1) throw ConfigError("wind.samples_per_seed must be >= 1");
    if (c.threads < 1) throw ConfigError("run.threads must be >= 1");
    if (c.policies.empty()) throw ConfigError("policy list is empty");
    if (c.grids.empty()) throw ConfigError("grid list is empty");
    for (const Grid& g : c.grids) {
        if (g.delta_d <= 0.0 || g.delta_s <= 0.0) {
            throw ConfigError("grid steps must be positive");
        }
    }
    if (c.layout.turn_radius <= 0.0) throw ConfigError("turn_radius_nmi must be positive");
    if (c.layout.tcp_radius <= 0.0) throw ConfigError("tcp_radius_nmi must be positive");
    for (const char* name : kCornerOrder) {
        auto it = c.layout.corner_fixes.find(name);
        if (it == c.layout.corner_fixes.end()) {
            throw ConfigError(std::string("missing corner fix '") + name + "'");
        }
        // Every corner must sit outside the dead band around the final
        // course, else the turn-center construction is undefined.
        if (std::fabs(it->second.y - c.layout.faf.y) <= 2.0 * c.layout.turn_radius) {
            throw ConfigError(std::string("corner '") + name +
                              "' lies within 2r of the final course; no turn geometry exists");
        }
    }
    if (c.wind_sigma_kts < 0.0) throw ConfigError("wind.sigma_kts must be >= 0");
    if (c.traffic.lambda_min < 1.0 || c.traffic.lambda_max < c.traffic.lambda_min) {
        throw ConfigError("traffic rate range must satisfy 1 <= lambda_min <= lambda_max");
    }
    if (c.traffic.t_sep_s <= 0.0) throw ConfigError("traffic.t_sep_s must be positive");
    if (c.traffic.t_max_s <= 0.0) throw ConfigError("traffic.t_max_s must be positive");
    if (c.fleet.types.empty()) throw ConfigError("fleet table is empty");
    bool have_class[3] = {false, false, false};
    for (const AircraftType& t : c.fleet.types) {
        if (t.t_rwy_s <= 0.0 || t.v_ref_kts <= 0.0) {
            throw ConfigError("fleet type '" + t.name + "' needs positive t_rwy_s and v_ref_kts");
        }
        have_class[static_cast<int>(t.weight_class)] = true;
        if (!c.fuel.by_type.count(t.name)) {
            throw ConfigError("no fuel coefficients for fleet type '" + t.name + "'");
        }
    }
    if (!have_class[0] || !have_class[1] || !have_class[2]) {
        throw ConfigError("fleet must contain at least one type per weight class");
    }
    for (const auto& row : c.wake.sep_s) {
        for (double v : row) {
            if (v <= 0.0) throw ConfigError("wake separations must be positive");
        }
    }
    if (c.bounds.v_leg_min <= 0.0 || c.bounds.v_leg_max < c.bounds.v_leg_min ||
        c.bounds.v_arc_min <= 0.0 || c.bounds.v_arc_max < c.bounds.v_arc_min) {
        throw ConfigError("speed bounds must be positive with min <= max");
    }
    if (c.bounds.d_max < 0.0) throw ConfigError("bounds.d_max_nmi must be >= 0");
    if (c.weights.safe <= 0.0 || c.weights.thru <= 0.0 || c.weights.delay < 0.0 ||
        c.weights.eff < 0.0 || c.weights.speed < 0.0) {
        throw ConfigError("objective weights must be nonnegative (safe, thru positive)");
    }
    if (c.fuel_dt_s <= 0.0) throw ConfigError("fuel.dt_s must be positive");
}

}  // namespace tma
