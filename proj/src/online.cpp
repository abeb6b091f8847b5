#include "tma/online.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

namespace tma {

namespace {

int corner_index(const std::string& corner) {
    for (int i = 0; i < 4; ++i) {
        if (corner == kCornerOrder[i]) return i;
    }
    return 0;
}

double max_required_separation(const WakeMatrix& wake, const std::vector<const Aircraft*>& members) {
    double m = 0.0;
    for (const auto& row : wake.sep_s) {
        for (double v : row) m = std::max(m, v);
    }
    for (const Aircraft* ac : members) m = std::max(m, ac->type.t_rwy_s);
    return m;
}

// Includes set relation on sorted id vectors.
bool is_subset(const std::vector<int>& sub, const std::vector<int>& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace

std::vector<int> build_window(const Aircraft& entering, const std::vector<Aircraft>& all,
                              const SchedulerState& state, double wind,
                              const ApproachLayout& layout, const SpeedBounds& bounds,
                              const WakeMatrix& wake) {
    const double eta = nominal_eta(entering, wind, layout, bounds);
    const double horizon = eta;  // tau_i + H(x_i)

    std::vector<int> ids;
    std::vector<const Aircraft*> uncommitted;
    for (const Aircraft& ac : all) {
        if (state.committed.count(ac.id)) continue;
        if (ac.tau <= horizon) {
            ids.push_back(ac.id);
            uncommitted.push_back(&ac);
        }
    }

    // A committed aircraft whose FAF time precedes every uncommitted
    // window member's earliest time by more than the largest possible
    // separation cannot bind any constraint; drop it.
    double min_earliest = std::numeric_limits<double>::infinity();
    for (const Aircraft* ac : uncommitted) {
        min_earliest = std::min(min_earliest, nominal_eta(*ac, wind, layout, bounds));
    }
    const double max_sep = max_required_separation(wake, uncommitted);
    for (const auto& [id, decision] : state.committed) {
        if (decision.t >= min_earliest - max_sep) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

EntryOutcome process_entry(const Aircraft& entering, const std::vector<Aircraft>& all,
                           SchedulerState& state, double wind, const ApproachLayout& layout,
                           const WakeMatrix& wake, const OnlineConfig& config) {
    EntryOutcome outcome;
    outcome.id = entering.id;
    outcome.tau = entering.tau;

    const std::vector<int> window_ids =
        build_window(entering, all, state, wind, layout, config.bounds, wake);

    if (config.use_preview_cache) {
        // FEFS/FOFFS previews survive any window shrink: an aircraft ranked
        // ahead of the enterer can never leave the window (tau < eta is
        // strict), and pruned committed members are non-interacting by
        // construction. A CPS preview is only as good as the exact joint
        // problem it solved, and any commitment since that solve changes
        // the problem — even the storing entry's own commit pins the
        // trajectory-grid time in place of the ordering-stage time, which
        // can shift the optimum in a saturated window. The version check
        // therefore demands that nothing has been committed since the
        // preview's solve ran.
        const bool cps_joint = config.policy.kind == Policy::Kind::Cps && config.policy.k >= 1;
        auto it = state.previews.find(entering.id);
        if (it != state.previews.end() && is_subset(window_ids, it->second.window_ids) &&
            (!cps_joint || it->second.committed_version == state.committed_version)) {
            outcome.decision = it->second.decision;
            outcome.decision.committed = true;
            outcome.t_free = it->second.t_free;
            outcome.cache_hit = true;
            state.committed.emplace(entering.id, outcome.decision);
            state.committed_t_free.emplace(entering.id, outcome.t_free);
            ++state.committed_version;
            state.previews.erase(it);
            return outcome;
        }
    }

    const auto t0 = std::chrono::steady_clock::now();

    std::vector<const Aircraft*> members;
    members.reserve(window_ids.size());
    for (int id : window_ids) members.push_back(&all[id - 1]);

    const std::uint64_t version_at_solve = state.committed_version;

    // Phase 1: landing order
    std::vector<int> ordered_ids;
    if (config.policy.kind == Policy::Kind::Cps && config.policy.k >= 1) {
        // FOFFS reference ranks over the window
        LandingSequence foffs =
            order_policy(members, Policy::Kind::Foffs, wind, layout, config.bounds);
        std::vector<SeqEntry> entries;
        entries.reserve(foffs.ids.size());
        std::vector<int> last_of_corner(4, -1);
        for (int id : foffs.ids) {
            const Aircraft& ac = all[id - 1];
            SeqEntry e;
            e.id = id;
            e.corner_idx = corner_index(ac.corner);
            e.stream_pred = last_of_corner[e.corner_idx];
            last_of_corner[e.corner_idx] = static_cast<int>(entries.size());
            const ArrivalWindowBounds win = arrival_window(ac, wind, layout, config.bounds);
            e.earliest = win.earliest;
            e.latest = win.latest;
            e.s_absorb = win.s_absorb;
            auto committed = state.committed.find(id);
            if (committed != state.committed.end()) {
                e.committed = true;
                e.committed_t = committed->second.t;
            }
            e.weight_class = ac.type.weight_class;
            e.t_rwy_s = ac.type.t_rwy_s;
            entries.push_back(e);
        }
        Phase1Result p1 = solve_phase1_cps(entries, config.policy.k, wake, config.weights);
        outcome.bnb_nodes = p1.nodes;
        for (int idx : p1.order) ordered_ids.push_back(entries[idx].id);
    } else {
        const Policy::Kind kind =
            config.policy.kind == Policy::Kind::Fefs ? Policy::Kind::Fefs : Policy::Kind::Foffs;
        ordered_ids = order_policy(members, kind, wind, layout, config.bounds).ids;
    }

    // Phase 2: greedy grid assignment over the ordered window
    std::vector<RankedAircraft> ranked;
    ranked.reserve(ordered_ids.size());
    for (int id : ordered_ids) {
        RankedAircraft ra;
        ra.ac = &all[id - 1];
        auto committed = state.committed.find(id);
        if (committed != state.committed.end()) {
            ra.decision = committed->second;
            ra.t_free = state.committed_t_free.at(id);
        }
        ranked.push_back(ra);
    }
    GridContext ctx;
    ctx.layout = &layout;
    ctx.bounds = &config.bounds;
    ctx.wake = &wake;
    ctx.weights = config.weights;
    ctx.grid = config.grid;
    ctx.wind = wind;
    greedy_grid_assign(ranked, ctx);

    const auto t1 = std::chrono::steady_clock::now();
    outcome.solve_seconds = std::chrono::duration<double>(t1 - t0).count();

    // Commit the entering aircraft, then cache previews for the remaining
    // uncommitted members against the post-commit version.
    for (const RankedAircraft& ra : ranked) {
        if (ra.ac->id != entering.id) continue;
        outcome.decision = ra.decision;
        outcome.decision.committed = true;
        outcome.t_free = ra.t_free;
    }
    state.committed.emplace(entering.id, outcome.decision);
    state.committed_t_free.emplace(entering.id, outcome.t_free);
    ++state.committed_version;
    state.previews.erase(entering.id);

    if (config.use_preview_cache) {
        for (const RankedAircraft& ra : ranked) {
            if (ra.ac->id == entering.id || state.committed.count(ra.ac->id)) continue;
            PreviewEntry preview;
            preview.decision = ra.decision;
            preview.t_free = ra.t_free;
            preview.window_ids = window_ids;
            preview.committed_version = version_at_solve;
            state.previews[ra.ac->id] = preview;
        }
    }
    return outcome;
}

ScenarioResult run_scenario(const Scenario& scenario, double wind, const ApproachLayout& layout,
                            const WakeMatrix& wake, const OnlineConfig& config) {
    ScenarioResult result;
    SchedulerState state;
    for (const Aircraft& ac : scenario.aircraft) {
        result.outcomes.push_back(
            process_entry(ac, scenario.aircraft, state, wind, layout, wake, config));
    }
    return result;
}

}  // namespace tma
