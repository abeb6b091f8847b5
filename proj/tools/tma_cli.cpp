// Command-line front end: run a Monte Carlo campaign, re-aggregate raw
// records, lint a config file, or execute the brute-force cross-check
// suites.
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tma/config.hpp"
#include "tma/harness.hpp"
#include "tma/oracle.hpp"
#include "tma/rng.hpp"

namespace {

tma::ExperimentConfig load_config_or_defaults(const std::string& path) {
    if (path.empty()) return tma::ExperimentConfig::defaults();
    return tma::load_experiment_config_file(path);
}

void apply_overrides(tma::ExperimentConfig& config, int seeds, int winds,
                     const std::vector<std::string>& policies, const std::string& out,
                     int threads, std::uint64_t seed, bool have_seed) {
    if (seeds > 0) config.seeds = seeds;
    if (winds > 0) config.winds_per_seed = winds;
    if (!policies.empty()) {
        config.policies.clear();
        for (const std::string& p : policies) config.policies.push_back(tma::Policy::parse(p));
    }
    if (!out.empty()) config.out_dir = out;
    if (threads > 0) config.threads = threads;
    if (have_seed) config.master_seed = seed;
    tma::validate_config(config);
}

int run_oracle_suites(std::uint64_t master_seed) {
    using namespace tma;
    bool all_ok = true;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "  " << detail << "\n";
    };

    const ApproachLayout layout = ApproachLayout::standard();
    const FleetCatalog fleet = FleetCatalog::standard();
    const WakeMatrix wake = WakeMatrix::standard();
    const SpeedBounds bounds;
    const ObjectiveWeights weights;

    {  // geometry residual scan
        Rng rng(derive_seed(master_seed, 1, 0));
        double worst = 0.0;
        int checked = 0;
        for (int i = 0; i < 2000; ++i) {
            const char* corner = kCornerOrder[rng.uniform_int(0, 3)];
            const Point2 entry = layout.corner_fixes.at(corner);
            const double d = rng.uniform01() * bounds.d_max;
            try {
                const auto res = oracle::geometry_residuals(entry, layout, d);
                worst = std::max({worst, res.orthogonality, res.radius, res.expanded_diff});
                ++checked;
            } catch (const GeometryError&) {
            }
        }
        report("geometry-residuals", checked > 1500 && worst < 1e-9,
               "worst residual " + std::to_string(worst));
    }

    {  // Phase-1 exactness vs brute force
        Rng rng(derive_seed(master_seed, 2, 0));
        bool ok = true;
        for (int i = 0; i < 50 && ok; ++i) {
            const auto inst =
                oracle::random_phase1_instance(rng, 6, layout, fleet, wake, bounds);
            for (int k = 1; k <= 3 && ok; ++k) {
                const auto exact = solve_phase1_cps(inst.entries, k, wake, weights);
                const auto brute = oracle::brute_force_phase1(inst.entries, k, wake, weights);
                ok = exact.objective == brute.objective;
            }
        }
        report("phase1-brute-force", ok, "50 instances x k in {1,2,3}");
    }

    {  // greedy vs joint two-aircraft optimum
        Rng rng(derive_seed(master_seed, 3, 0));
        SpeedBounds small_bounds = bounds;
        small_bounds.d_max = 10.0;
        GridContext ctx;
        ctx.layout = &layout;
        ctx.bounds = &small_bounds;
        ctx.wake = &wake;
        ctx.weights = weights;
        ctx.grid = Grid{1.0, 10.0};
        double worst_gap = 0.0;
        bool ok = true;
        for (int i = 0; i < 20 && ok; ++i) {
            ctx.wind = rng.gaussian(5.0, 2.0);
            Aircraft a, b;
            a.id = 1;
            a.corner = kCornerOrder[rng.uniform_int(0, 3)];
            a.entry_point = layout.corner_fixes.at(a.corner);
            a.tau = 0.0;
            a.type = sample_fleet(rng, fleet);
            b.id = 2;
            b.corner = kCornerOrder[rng.uniform_int(0, 3)];
            b.entry_point = layout.corner_fixes.at(b.corner);
            b.tau = rng.uniform01() * 120.0;
            b.type = sample_fleet(rng, fleet);

            std::vector<RankedAircraft> window(2);
            window[0].ac = &a;
            window[1].ac = &b;
            greedy_grid_assign(window, ctx);
            const double greedy = evaluate_unified_objective(window, weights, small_bounds);
            const double joint = oracle::joint_two_aircraft_optimum(a, b, ctx);
            const double quantum = std::max(oracle::grid_time_quantum(a, ctx),
                                            oracle::grid_time_quantum(b, ctx));
            const double gap = greedy - joint;
            worst_gap = std::max(worst_gap, gap);
            ok = gap <= weights.delay * quantum * 2.0 + 1e-6;
        }
        report("greedy-vs-joint", ok, "worst gap " + std::to_string(worst_gap));
    }

    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"terminal-area arrival sequencing and trajectory optimization"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> policies;
    int seeds = 0;
    int winds = 0;
    int threads = 0;
    std::uint64_t seed = 0;
    bool have_seed = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config file (key = value lines)");
        cmd->add_option("--seeds", seeds, "number of demand seeds");
        cmd->add_option("--winds", winds, "wind samples per seed");
        cmd->add_option("--policy", policies, "policies (fefs, foffs, cps1..cps3)")
            ->delimiter(',');
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--threads", threads, "worker threads");
        cmd->add_option("--seed", seed, "master seed")->each([&](const std::string&) {
            have_seed = true;
        });
    };

    CLI::App* run = app.add_subcommand("run", "execute a Monte Carlo campaign");
    add_common(run);

    CLI::App* aggregate = app.add_subcommand("aggregate", "re-bin a raw record file");
    std::string raw_path;
    double half_width = 2.5;
    aggregate->add_option("--raw", raw_path, "raw.csv produced by `run`")->required();
    aggregate->add_option("--out", out_dir, "output directory")->required();
    aggregate->add_option("--half-width", half_width, "rate bin half-width (AC/hr)");

    CLI::App* validate = app.add_subcommand("validate", "lint a config file");
    validate->add_option("--config", config_path, "config file")->required();

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "run the brute-force cross-check suites");
    oracle_cmd->add_option("--seed", seed, "master seed for the random instances");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            tma::ExperimentConfig config = load_config_or_defaults(config_path);
            apply_overrides(config, seeds, winds, policies, out_dir, threads, seed, have_seed);
            const std::vector<tma::RunRecord> records = tma::run_monte_carlo(config);
            const std::vector<tma::BinRow> bins = tma::aggregate_metrics(records);
            tma::emit_outputs(records, bins, config.out_dir);
            std::cout << "wrote " << records.size() << " records to " << config.out_dir << "\n";
        } else if (aggregate->parsed()) {
            const std::vector<tma::RunRecord> records = tma::read_raw_records(raw_path);
            const std::vector<tma::BinRow> bins = tma::aggregate_metrics(records, half_width);
            tma::emit_outputs(records, bins, out_dir);
            std::cout << "aggregated " << records.size() << " records into " << bins.size()
                      << " bins\n";
        } else if (validate->parsed()) {
            tma::load_experiment_config_file(config_path);
            std::cout << "config OK: " << config_path << "\n";
        } else if (oracle_cmd->parsed()) {
            return run_oracle_suites(seed ? seed : 1);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
