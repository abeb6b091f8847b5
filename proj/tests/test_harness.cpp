#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "tma/harness.hpp"

using namespace tma;

namespace {

// solve times are wall-clock and vary run to run; everything else must be
// bit-identical
std::string deterministic_fields(RunRecord r) {
    r.mean_solve_s = 0.0;
    r.max_solve_s = 0.0;
    return format_run_record(r);
}

ExperimentConfig tiny_config() {
    ExperimentConfig config = ExperimentConfig::defaults();
    config.seeds = 2;
    config.winds_per_seed = 2;
    config.traffic.t_max_s = 900.0;
    config.traffic.lambda_max = 15;
    config.policies = {Policy::parse("foffs")};
    config.grids = {Grid{1.0, 10.0}};
    return config;
}

}  // namespace

TEST_CASE("record serialization round-trips at full precision") {
    RunRecord r;
    r.seed = 0xdeadbeefULL;
    r.wind_seed = 42;
    r.policy = "cps2";
    r.delta_d = 0.5;
    r.delta_s = 5.0;
    r.wind_kts = 4.987654321098765;
    r.aggregate_rate = 52.0;
    r.n_aircraft = 13;
    r.mean_stretch_nmi = 3.3333333333333335;
    r.mean_violation_s = 0.1;
    r.mean_delay_s = 87.6543210987654;
    r.mean_fuel_kg = 210.123456789;
    r.mean_solve_s = 0.001234;
    r.max_solve_s = 0.01;
    r.mean_bnb_nodes = 17.25;
    r.max_bnb_nodes = 1234567;

    const RunRecord parsed = parse_run_record(format_run_record(r));
    CHECK(parsed.seed == r.seed);
    CHECK(parsed.wind_seed == r.wind_seed);
    CHECK(parsed.policy == r.policy);
    CHECK(parsed.wind_kts == r.wind_kts);
    CHECK(parsed.aggregate_rate == r.aggregate_rate);
    CHECK(parsed.n_aircraft == r.n_aircraft);
    CHECK(parsed.mean_stretch_nmi == r.mean_stretch_nmi);
    CHECK(parsed.mean_delay_s == r.mean_delay_s);
    CHECK(parsed.mean_fuel_kg == r.mean_fuel_kg);
    CHECK(parsed.max_bnb_nodes == r.max_bnb_nodes);

    CHECK_THROWS_AS(parse_run_record("1,2,3"), HarnessError);
}

TEST_CASE("campaign cardinality and determinism") {
    const ExperimentConfig config = tiny_config();
    const std::vector<RunRecord> a = run_monte_carlo(config);
    CHECK(a.size() == 4);  // 2 seeds x 2 winds x 1 policy x 1 grid
    const std::vector<RunRecord> b = run_monte_carlo(config);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(deterministic_fields(a[i]) == deterministic_fields(b[i]));
    }
    // worker count must not affect the output order or values
    ExperimentConfig threaded = config;
    threaded.threads = 2;
    const std::vector<RunRecord> c = run_monte_carlo(threaded);
    REQUIRE(a.size() == c.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(deterministic_fields(a[i]) == deterministic_fields(c[i]));
    }
    for (const RunRecord& r : a) {
        CHECK(r.n_aircraft >= 4);
        CHECK(r.aggregate_rate == doctest::Approx(r.n_aircraft / 0.25).epsilon(1e-12));
    }
}

TEST_CASE("rate bins center on 5k + 2.5 with half-width 2.5") {
    RunRecord a, b;
    a.policy = b.policy = "foffs";
    a.delta_d = b.delta_d = 0.5;
    a.delta_s = b.delta_s = 5.0;
    a.seed = 1;
    b.seed = 2;
    a.aggregate_rate = 38.0;
    b.aggregate_rate = 42.0;
    a.mean_stretch_nmi = 2.0;
    b.mean_stretch_nmi = 4.0;

    const std::vector<BinRow> bins = aggregate_metrics({a, b});
    REQUIRE(bins.size() == 2);
    CHECK(bins[0].bin_center == 37.5);
    CHECK(bins[1].bin_center == 42.5);
    CHECK(bins[0].count + bins[1].count == 2);
    CHECK(bins[0].mean[0] == 2.0);
    // single record per seed: no wind spread to report
    CHECK(bins[0].wind_std[0] == 0.0);
    CHECK_THROWS_AS(aggregate_metrics({}), HarnessError);
}

TEST_CASE("wind spread is measured within seeds") {
    std::vector<RunRecord> records;
    for (int wind = 0; wind < 3; ++wind) {
        RunRecord r;
        r.policy = "fefs";
        r.delta_d = 0.5;
        r.delta_s = 5.0;
        r.seed = 7;
        r.wind_seed = 100 + wind;
        r.aggregate_rate = 30.0;
        r.mean_delay_s = 10.0 * wind;  // values 0, 10, 20 -> sample std 10
        records.push_back(r);
    }
    const std::vector<BinRow> bins = aggregate_metrics(records);
    REQUIRE(bins.size() == 1);
    CHECK(bins[0].count == 3);
    CHECK(bins[0].mean[2] == doctest::Approx(10.0));
    CHECK(bins[0].wind_std[2] == doctest::Approx(10.0));
}

TEST_CASE("emitted raw files parse back and re-aggregate identically") {
    const ExperimentConfig config = tiny_config();
    const std::vector<RunRecord> records = run_monte_carlo(config);
    const std::vector<BinRow> bins = aggregate_metrics(records);

    const std::string dir = "harness_out_test";
    emit_outputs(records, bins, dir);
    const std::vector<RunRecord> reread = read_raw_records(dir + "/raw.csv");
    REQUIRE(reread.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(format_run_record(reread[i]) == format_run_record(records[i]));
    }
    const std::vector<BinRow> rebinned = aggregate_metrics(reread);
    REQUIRE(rebinned.size() == bins.size());
    for (std::size_t i = 0; i < bins.size(); ++i) {
        CHECK(rebinned[i].bin_center == bins[i].bin_center);
        CHECK(rebinned[i].count == bins[i].count);
        for (int m = 0; m < kMetricCount; ++m) {
            CHECK(rebinned[i].mean[m] == bins[i].mean[m]);
        }
    }
    CHECK(std::filesystem::exists(dir + "/binned_stretch_nmi.csv"));
    CHECK(std::filesystem::exists(dir + "/series_delay_s_foffs_dd1_ds10.csv"));
    std::filesystem::remove_all(dir);
}
