#include "tma/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "tma/fuel.hpp"
#include "tma/rng.hpp"
#include "tma/wind.hpp"

namespace tma {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

}  // namespace

RunRecord summarize_run(const Scenario& scenario, const ScenarioResult& result, double wind,
                        const ExperimentConfig& config, const Policy& policy, const Grid& grid,
                        std::uint64_t scenario_seed, std::uint64_t wind_seed) {
    RunRecord r;
    r.seed = scenario_seed;
    r.wind_seed = wind_seed;
    r.policy = policy.name();
    r.delta_d = grid.delta_d;
    r.delta_s = grid.delta_s;
    r.wind_kts = wind;
    r.n_aircraft = static_cast<int>(scenario.aircraft.size());
    r.aggregate_rate =
        static_cast<double>(r.n_aircraft) / (config.traffic.t_max_s / kSecondsPerHour);

    double sum_stretch = 0.0;
    double sum_violation = 0.0;
    double sum_delay = 0.0;
    double sum_fuel = 0.0;
    double sum_solve = 0.0;
    double sum_nodes = 0.0;
    for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
        const EntryOutcome& out = result.outcomes[i];
        const Aircraft& ac = scenario.aircraft[i];
        sum_stretch += out.decision.d;
        sum_violation += out.decision.sigma;
        sum_delay += out.decision.t - out.t_free;
        sum_solve += out.solve_seconds;
        r.max_solve_s = std::max(r.max_solve_s, out.solve_seconds);
        sum_nodes += static_cast<double>(out.bnb_nodes);
        r.max_bnb_nodes = std::max(r.max_bnb_nodes, out.bnb_nodes);

        const PathGeometry path = build_path(ac.entry_point, config.layout, out.decision.d);
        const SegmentHeadings headings = segment_headings(ac.entry_point, config.layout, path);
        const WindComponents wc = segment_wind_components(wind, headings);
        sum_fuel += trajectory_fuel(out.decision, path, wc, config.fuel.at(ac.type.name),
                                    config.fuel_dt_s);
    }
    if (r.n_aircraft > 0) {
        const double n = static_cast<double>(r.n_aircraft);
        r.mean_stretch_nmi = sum_stretch / n;
        r.mean_violation_s = sum_violation / n;
        r.mean_delay_s = sum_delay / n;
        r.mean_fuel_kg = sum_fuel / n;
        r.mean_solve_s = sum_solve / n;
        r.mean_bnb_nodes = sum_nodes / n;
    }
    return r;
}

std::vector<RunRecord> run_monte_carlo(const ExperimentConfig& config) {
    validate_config(config);

    const int per_seed =
        config.winds_per_seed * static_cast<int>(config.policies.size() * config.grids.size());
    std::vector<RunRecord> records(static_cast<std::size_t>(config.seeds) * per_seed);

    auto run_seed = [&](int sidx) {
        const std::uint64_t scenario_seed = derive_seed(config.master_seed, sidx, 0);
        const Scenario scenario =
            build_scenario(config.traffic, config.layout, config.fleet, scenario_seed);
        std::size_t slot = static_cast<std::size_t>(sidx) * per_seed;
        for (int widx = 0; widx < config.winds_per_seed; ++widx) {
            const std::uint64_t wind_seed = derive_seed(config.master_seed, sidx, widx + 1);
            Rng wind_rng(wind_seed);
            const double wind = sample_wind(config.wind_mu_kts, config.wind_sigma_kts, wind_rng);
            for (const Policy& policy : config.policies) {
                for (const Grid& grid : config.grids) {
                    OnlineConfig online;
                    online.policy = policy;
                    online.grid = grid;
                    online.weights = config.weights;
                    online.bounds = config.bounds;
                    const ScenarioResult result =
                        run_scenario(scenario, wind, config.layout, config.wake, online);
                    records[slot++] = summarize_run(scenario, result, wind, config, policy, grid,
                                                    scenario_seed, wind_seed);
                }
            }
        }
    };

    const int threads = std::min(config.threads, config.seeds);
    if (threads <= 1) {
        for (int sidx = 0; sidx < config.seeds; ++sidx) run_seed(sidx);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (int sidx = next.fetch_add(1); sidx < config.seeds;
                     sidx = next.fetch_add(1)) {
                    run_seed(sidx);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }
    return records;
}

std::vector<BinRow> aggregate_metrics(const std::vector<RunRecord>& records,
                                      double bin_half_width) {
    if (records.empty()) throw HarnessError("cannot aggregate an empty record list");
    if (bin_half_width <= 0.0) throw HarnessError("bin half-width must be positive");
    const double bin_width = 2.0 * bin_half_width;

    struct Key {
        std::string policy;
        double delta_d;
        double delta_s;
        int bin;
        bool operator<(const Key& o) const {
            return std::tie(policy, delta_d, delta_s, bin) <
                   std::tie(o.policy, o.delta_d, o.delta_s, o.bin);
        }
    };
    std::map<Key, std::vector<const RunRecord*>> groups;
    for (const RunRecord& r : records) {
        const int bin = static_cast<int>(std::floor(r.aggregate_rate / bin_width));
        groups[{r.policy, r.delta_d, r.delta_s, bin}].push_back(&r);
    }

    auto metric_of = [](const RunRecord& r, int m) {
        switch (m) {
            case 0: return r.mean_stretch_nmi;
            case 1: return r.mean_violation_s;
            case 2: return r.mean_delay_s;
            case 3: return r.mean_fuel_kg;
            case 4: return r.mean_solve_s;
            case 5: return r.max_solve_s;
            default: return r.mean_bnb_nodes;
        }
    };

    std::vector<BinRow> rows;
    for (const auto& [key, members] : groups) {
        BinRow row;
        row.policy = key.policy;
        row.delta_d = key.delta_d;
        row.delta_s = key.delta_s;
        row.bin_center = (key.bin + 0.5) * bin_width;
        row.count = static_cast<int>(members.size());
        for (int m = 0; m < kMetricCount; ++m) {
            std::vector<double> values;
            values.reserve(members.size());
            for (const RunRecord* r : members) values.push_back(metric_of(*r, m));
            row.mean[m] = mean_of(values);

            // Wind uncertainty: sample variance across the wind draws of
            // each seed, averaged over seeds that have >= 2 draws in the
            // bin (a seed's wind repeats share one scenario, hence one
            // rate, so they always land together).
            std::map<std::uint64_t, std::vector<double>> by_seed;
            for (const RunRecord* r : members) by_seed[r->seed].push_back(metric_of(*r, m));
            double var_sum = 0.0;
            int var_n = 0;
            for (const auto& [seed, vals] : by_seed) {
                if (vals.size() < 2) continue;
                const double mu = mean_of(vals);
                double acc = 0.0;
                for (double v : vals) acc += (v - mu) * (v - mu);
                var_sum += acc / static_cast<double>(vals.size() - 1);
                ++var_n;
            }
            row.wind_std[m] = var_n > 0 ? std::sqrt(var_sum / var_n) : 0.0;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string run_record_header() {
    return "seed,wind_seed,policy,delta_d,delta_s,wind_kts,aggregate_rate,n_aircraft,"
           "mean_stretch_nmi,mean_violation_s,mean_delay_s,mean_fuel_kg,mean_solve_s,"
           "max_solve_s,mean_bnb_nodes,max_bnb_nodes";
}

std::string format_run_record(const RunRecord& r) {
    std::ostringstream out;
    out << r.seed << ',' << r.wind_seed << ',' << r.policy << ',' << fmt_double(r.delta_d) << ','
        << fmt_double(r.delta_s) << ',' << fmt_double(r.wind_kts) << ','
        << fmt_double(r.aggregate_rate) << ',' << r.n_aircraft << ','
        << fmt_double(r.mean_stretch_nmi) << ',' << fmt_double(r.mean_violation_s) << ','
        << fmt_double(r.mean_delay_s) << ',' << fmt_double(r.mean_fuel_kg) << ','
        << fmt_double(r.mean_solve_s) << ',' << fmt_double(r.max_solve_s) << ','
        << fmt_double(r.mean_bnb_nodes) << ',' << r.max_bnb_nodes;
    return out.str();
}

RunRecord parse_run_record(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 16) {
        throw HarnessError("raw record has " + std::to_string(fields.size()) +
                           " fields, expected 16: " + line);
    }
    RunRecord r;
    try {
        r.seed = std::stoull(fields[0]);
        r.wind_seed = std::stoull(fields[1]);
        r.policy = fields[2];
        r.delta_d = std::stod(fields[3]);
        r.delta_s = std::stod(fields[4]);
        r.wind_kts = std::stod(fields[5]);
        r.aggregate_rate = std::stod(fields[6]);
        r.n_aircraft = std::stoi(fields[7]);
        r.mean_stretch_nmi = std::stod(fields[8]);
        r.mean_violation_s = std::stod(fields[9]);
        r.mean_delay_s = std::stod(fields[10]);
        r.mean_fuel_kg = std::stod(fields[11]);
        r.mean_solve_s = std::stod(fields[12]);
        r.max_solve_s = std::stod(fields[13]);
        r.mean_bnb_nodes = std::stod(fields[14]);
        r.max_bnb_nodes = std::stoll(fields[15]);
    } catch (const std::exception& e) {
        throw HarnessError("cannot parse raw record '" + line + "': " + e.what());
    }
    return r;
}

std::vector<RunRecord> read_raw_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw HarnessError("cannot open raw record file: " + path);
    std::vector<RunRecord> records;
    std::string line;
    if (!std::getline(in, line)) throw HarnessError(path + ": empty file (expected header)");
    if (line != run_record_header()) {
        throw HarnessError(path + ": unexpected header line; file schema mismatch");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(parse_run_record(line));
    }
    return records;
}

namespace {

std::string grid_tag(double delta_d, double delta_s) {
    std::ostringstream out;
    out << "dd" << delta_d << "_ds" << delta_s;
    std::string s = out.str();
    std::replace(s.begin(), s.end(), '.', 'p');
    return s;
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw HarnessError("cannot write output file: " + p.string());
    return out;
}

}  // namespace

void emit_outputs(const std::vector<RunRecord>& records, const std::vector<BinRow>& bins,
                  const std::string& out_dir) {
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw HarnessError("cannot create output directory " + out_dir + ": " + ec.message());

    {
        std::ofstream raw = open_out(dir / "raw.csv");
        raw << run_record_header() << '\n';
        for (const RunRecord& r : records) raw << format_run_record(r) << '\n';
    }

    for (int m = 0; m < kMetricCount; ++m) {
        std::ofstream out = open_out(dir / (std::string("binned_") + kMetricNames[m] + ".csv"));
        out << "policy,delta_d,delta_s,bin_center,count,mean,wind_std\n";
        for (const BinRow& row : bins) {
            out << row.policy << ',' << fmt_double(row.delta_d) << ',' << fmt_double(row.delta_s)
                << ',' << fmt_double(row.bin_center) << ',' << row.count << ','
                << fmt_double(row.mean[m]) << ',' << fmt_double(row.wind_std[m]) << '\n';
        }
    }

    // Plot-ready series: one file per (metric, policy, grid), rows sorted
    // by bin center.
    for (int m = 0; m < kMetricCount; ++m) {
        std::map<std::string, std::vector<const BinRow*>> series;
        for (const BinRow& row : bins) {
            series[row.policy + "_" + grid_tag(row.delta_d, row.delta_s)].push_back(&row);
        }
        for (auto& [tag, rows] : series) {
            std::sort(rows.begin(), rows.end(),
                      [](const BinRow* a, const BinRow* b) { return a->bin_center < b->bin_center; });
            std::ofstream out =
                open_out(dir / (std::string("series_") + kMetricNames[m] + "_" + tag + ".csv"));
            out << "x,y,yerr\n";
            for (const BinRow* row : rows) {
                out << fmt_double(row->bin_center) << ',' << fmt_double(row->mean[m]) << ','
                    << fmt_double(row->wind_std[m]) << '\n';
            }
        }
    }
}

}  // namespace tma
