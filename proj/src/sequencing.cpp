#include "tma/sequencing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "tma/wind.hpp"

namespace tma {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

int corner_index(const std::string& corner) {
    for (int i = 0; i < 4; ++i) {
        if (corner == kCornerOrder[i]) return i;
    }
    return 0;
}
}  // namespace

Policy Policy::parse(const std::string& name) {
    if (name == "fefs") return {Kind::Fefs, 0};
    if (name == "foffs") return {Kind::Foffs, 0};
    if (name.size() == 4 && name.rfind("cps", 0) == 0 && std::isdigit(name[3])) {
        return {Kind::Cps, name[3] - '0'};
    }
    throw std::invalid_argument("unknown policy: " + name);
}

std::string Policy::name() const {
    switch (kind) {
        case Kind::Fefs: return "fefs";
        case Kind::Foffs: return "foffs";
        case Kind::Cps: return "cps" + std::to_string(k);
    }
    return "?";
}

double nominal_eta(const Aircraft& ac, double w, const ApproachLayout& layout,
                   const SpeedBounds& bounds) {
    return wind_corrected_arrival_time(ac.entry_point, ac.tau, layout, 0.0,
                                       bounds.max_speeds(ac.type), w);
}

ArrivalWindowBounds arrival_window(const Aircraft& ac, double w, const ApproachLayout& layout,
                                   const SpeedBounds& bounds) {
    ArrivalWindowBounds win;
    const SegmentSpeeds vmax = bounds.max_speeds(ac.type);
    const SegmentSpeeds vmin = bounds.min_speeds(ac.type);
    win.earliest = wind_corrected_arrival_time(ac.entry_point, ac.tau, layout, 0.0, vmax, w);
    win.s_absorb =
        wind_corrected_arrival_time(ac.entry_point, ac.tau, layout, 0.0, vmin, w) - win.earliest;
    double d_hi = bounds.d_max;
    try {
        win.latest = wind_corrected_arrival_time(ac.entry_point, ac.tau, layout, d_hi, vmin, w);
    } catch (const EntryInsideTurnCircle&) {
        // D_max pushes the turn center past the tangency limit; clamp L to
        // the largest feasible extension.
        double lo = 0.0, hi = d_hi;
        for (int i = 0; i < 100; ++i) {
            const double mid = 0.5 * (lo + hi);
            try {
                build_path(ac.entry_point, layout, mid);
                lo = mid;
            } catch (const EntryInsideTurnCircle&) {
                hi = mid;
            }
        }
        win.latest = wind_corrected_arrival_time(ac.entry_point, ac.tau, layout, lo, vmin, w);
        win.latest_clamped = true;
    }
    return win;
}

LandingSequence order_policy(const std::vector<const Aircraft*>& window, Policy::Kind policy,
                             double w, const ApproachLayout& layout, const SpeedBounds& bounds) {
    if (window.empty()) throw std::invalid_argument("order_policy: empty window");
    struct Keyed {
        double key;
        int id;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(window.size());
    for (const Aircraft* ac : window) {
        const double key =
            policy == Policy::Kind::Fefs ? ac->tau : nominal_eta(*ac, w, layout, bounds);
        keyed.push_back({key, ac->id});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        return a.key != b.key ? a.key < b.key : a.id < b.id;
    });
    LandingSequence seq;
    seq.policy = policy == Policy::Kind::Fefs ? "fefs" : "foffs";
    for (const auto& kv : keyed) seq.ids.push_back(kv.id);
    return seq;
}

CpsPairSets cps_swap_sets(const std::vector<int>& foffs_ranks, int k) {
    if (k < 1) throw std::invalid_argument("cps_swap_sets: k must be >= 1");
    CpsPairSets sets;
    const int n = static_cast<int>(foffs_ranks.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int diff = foffs_ranks[j] - foffs_ranks[i];
            if (diff <= 0) continue;
            if (diff <= k) {
                sets.swap_set.emplace_back(i, j);
            } else {
                sets.far_set.emplace_back(i, j);
            }
        }
    }
    return sets;
}

double entry_separation(const SeqEntry& leader, const SeqEntry& trailer, const WakeMatrix& wake) {
    return std::max(wake(leader.weight_class, trailer.weight_class), trailer.t_rwy_s);
}

double evaluate_order(const std::vector<SeqEntry>& entries, const std::vector<int>& order,
                      const WakeMatrix& wake, const ObjectiveWeights& weights,
                      std::vector<double>* times_out) {
    double acc = 0.0;
    double t_prev = kNegInf;
    double t_last = kNegInf;
    int prev_idx = -1;
    double stream_last[4] = {kNegInf, kNegInf, kNegInf, kNegInf};
    if (times_out) times_out->assign(order.size(), 0.0);

    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const SeqEntry& e = entries[order[pos]];
        const double required =
            prev_idx < 0 ? kNegInf : t_prev + entry_separation(entries[prev_idx], e, wake);
        double t;
        if (e.committed) {
            t = e.committed_t;
            if (required > t) acc += weights.safe * (required - t);
            if (stream_last[e.corner_idx] > t) {
                acc += weights.safe * (stream_last[e.corner_idx] - t);
            }
        } else {
            t = std::max(e.earliest, std::max(required, stream_last[e.corner_idx]));
        }
        if (t > e.latest) acc += weights.safe * (t - e.latest);              // alpha
        const double excess = t - (e.earliest + e.s_absorb);
        if (excess > 0.0) acc += weights.delay * excess;                     // e_j
        if (times_out) (*times_out)[pos] = t;
        stream_last[e.corner_idx] = std::max(stream_last[e.corner_idx], t);
        t_last = std::max(t_last, t);
        t_prev = t;
        prev_idx = order[pos];
    }
    return acc + weights.thru * t_last;
}

namespace {

// A visited search prefix, reduced to everything the remaining subproblem
// can depend on. Two prefixes over the same placed set with the same last
// aircraft share their optimal continuation, so one dominates the other if
// its accumulated cost and every landing-time component are no larger; on
// exact ties the lexicographically smaller placed-rank list wins, matching
// the full-search tie-break.
struct DomState {
    double acc;
    double t_prev;
    double t_last;
    double stream_last[4];
    std::vector<int> placed_ranks;  // rank of each placed aircraft, by index
};

struct DomKey {
    std::uint64_t used;
    int prev_idx;
    bool operator==(const DomKey& o) const { return used == o.used && prev_idx == o.prev_idx; }
};

struct DomKeyHash {
    std::size_t operator()(const DomKey& k) const {
        std::uint64_t h = k.used * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(k.prev_idx + 1);
        h ^= h >> 29;
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 32;
        return static_cast<std::size_t>(h);
    }
};

// Depth-first branch-and-bound state for the Phase-1 ordering search.
struct BnbState {
    const std::vector<SeqEntry>* entries;
    const WakeMatrix* wake;
    const ObjectiveWeights* weights;
    int n = 0;
    int k = 0;
    std::uint64_t used = 0;
    std::vector<int> order;
    std::vector<int> best_order;
    std::vector<int> best_ranks;
    double best_cost = 0.0;
    std::int64_t nodes = 0;
    // E (or committed t) of every entry, for the makespan lower bound
    std::vector<double> floor_t;
    std::uint64_t committed_mask = 0;
    // smallest separation any leader could require ahead of entry i
    std::vector<double> min_sep_in;
    double min_sep = 0.0;
    std::unordered_map<DomKey, std::vector<DomState>, DomKeyHash> seen;
    // position of each placed aircraft, kept in step with `order`
    std::vector<int> pos_of;
};

std::vector<int> placed_rank_list(const BnbState& st) {
    std::vector<int> ranks;
    ranks.reserve(st.order.size());
    for (int i = 0; i < st.n; ++i) {
        if (st.pos_of[i] >= 0) ranks.push_back(st.pos_of[i]);
    }
    return ranks;
}

// true when `a` makes `b` redundant: every quantity the continuation depends
// on is no larger, and exact ties resolve to `a` by the rank tie-break
bool dominates(const DomState& a, const DomState& b) {
    if (a.acc > b.acc || a.t_prev > b.t_prev || a.t_last > b.t_last) return false;
    for (int c = 0; c < 4; ++c) {
        if (a.stream_last[c] > b.stream_last[c]) return false;
    }
    // A cost gap beyond every rounding error that summing the remaining
    // terms could introduce (≤ ~70 additions at magnitudes ≤ 1e8) makes the
    // completed totals strictly ordered, so `b` can never tie for best.
    if (a.acc <= b.acc - 1e-4) return true;
    // Near-ties may collapse to the exact same float total, and then the
    // reported order hinges on the rank tie-break.
    return a.placed_ranks <= b.placed_ranks;
}

std::vector<int> rank_vector(const std::vector<int>& order) {
    std::vector<int> ranks(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) ranks[order[pos]] = static_cast<int>(pos);
    return ranks;
}

void bnb_recurse(BnbState& st, int pos, double acc, double t_prev, int prev_idx, double t_last,
                 const double stream_last_in[4]) {
    const auto& entries = *st.entries;
    if (pos == st.n) {
        const double cost = acc + st.weights->thru * t_last;
        if (cost < st.best_cost) {
            st.best_cost = cost;
            st.best_order = st.order;
            st.best_ranks = rank_vector(st.order);
        } else if (cost == st.best_cost) {
            // deterministic tie-break: lexicographically smallest rank vector
            std::vector<int> ranks = rank_vector(st.order);
            if (ranks < st.best_ranks) {
                st.best_order = st.order;
                st.best_ranks = std::move(ranks);
            }
        }
        return;
    }

    // below four remaining positions the subtree is cheaper than the memo
    // bookkeeping, so only prefixes above that line are deduplicated
    if (pos > 0 && st.n - pos >= 4) {
        DomState cur;
        cur.acc = acc;
        cur.t_prev = t_prev;
        cur.t_last = t_last;
        for (int c = 0; c < 4; ++c) cur.stream_last[c] = stream_last_in[c];
        cur.placed_ranks = placed_rank_list(st);
        std::vector<DomState>& states = st.seen[DomKey{st.used, prev_idx}];
        for (const DomState& s : states) {
            if (dominates(s, cur)) return;
        }
        states.erase(std::remove_if(states.begin(), states.end(),
                                    [&](const DomState& s) { return dominates(cur, s); }),
                     states.end());
        if (states.size() < 1024) states.push_back(std::move(cur));
    }

    int smallest_unplaced = -1;
    for (int i = 0; i < st.n; ++i) {
        if (!(st.used >> i & 1)) {
            smallest_unplaced = i;
            break;
        }
    }
    // If the lowest-ranked unplaced aircraft has exhausted its displacement
    // budget it must be placed now.
    const bool forced = smallest_unplaced + st.k == pos;
    const int lo = smallest_unplaced;
    const int hi = forced ? smallest_unplaced : std::min(st.n - 1, pos + st.k);

    for (int idx = lo; idx <= hi; ++idx) {
        if (st.used >> idx & 1) continue;
        if (idx - pos > st.k || pos - idx > st.k) continue;
        const SeqEntry& e = entries[idx];
        if (e.stream_pred >= 0 && !(st.used >> e.stream_pred & 1)) continue;
        ++st.nodes;

        // Forward-greedy extension; the arithmetic mirrors evaluate_order
        // term for term so the accumulated cost is an exact prefix.
        double child_acc = acc;
        const double required =
            prev_idx < 0 ? kNegInf : t_prev + entry_separation(entries[prev_idx], e, *st.wake);
        double t;
        if (e.committed) {
            t = e.committed_t;
            if (required > t) child_acc += st.weights->safe * (required - t);
            if (stream_last_in[e.corner_idx] > t) {
                child_acc += st.weights->safe * (stream_last_in[e.corner_idx] - t);
            }
        } else {
            t = std::max(e.earliest, std::max(required, stream_last_in[e.corner_idx]));
        }
        if (t > e.latest) child_acc += st.weights->safe * (t - e.latest);
        const double excess = t - (e.earliest + e.s_absorb);
        if (excess > 0.0) child_acc += st.weights->delay * excess;

        // Admissible bound on the remaining cost. Every unplaced aircraft
        // lands no earlier than its own E (or fixed committed time) and no
        // earlier than its stream's last landing so far; when no committed
        // aircraft remain, landing times also grow by at least one minimum
        // separation past the current landing, and the last of m remaining
        // lands at least m separations later. Past-latest and delay terms
        // implied by those floors are unavoidable in every completion.
        const std::uint64_t remaining = ~st.used & ~(1ULL << idx) & ((1ULL << st.n) - 1);
        const bool committed_left = (remaining & st.committed_mask) != 0;
        double makespan_lb = std::max(t_last, t);
        double future_lb = 0.0;
        int m_left = 0;
        for (int m = 0; m < st.n; ++m) {
            if (!(remaining >> m & 1)) continue;
            ++m_left;
            const SeqEntry& r = entries[m];
            double tlb = st.floor_t[m];
            if (!r.committed) {
                tlb = std::max(tlb, stream_last_in[r.corner_idx]);
                if (!committed_left) tlb = std::max(tlb, t + st.min_sep_in[m]);
            }
            makespan_lb = std::max(makespan_lb, tlb);
            if (tlb > r.latest) future_lb += st.weights->safe * (tlb - r.latest);
            const double ex = tlb - (r.earliest + r.s_absorb);
            if (ex > 0.0) future_lb += st.weights->delay * ex;
        }
        if (!committed_left && m_left > 0) {
            makespan_lb = std::max(makespan_lb, t + m_left * st.min_sep);
        }
        const double bound = child_acc + future_lb + st.weights->thru * makespan_lb;
        // small slack so float reordering in the bound can never cut off an
        // order whose true accumulated cost ties or beats the incumbent
        if (bound > st.best_cost + (1e-9 + 1e-12 * std::abs(st.best_cost))) continue;

        double stream_last[4] = {stream_last_in[0], stream_last_in[1], stream_last_in[2],
                                 stream_last_in[3]};
        stream_last[e.corner_idx] = std::max(stream_last[e.corner_idx], t);
        st.used |= 1ULL << idx;
        st.pos_of[idx] = pos;
        st.order.push_back(idx);
        bnb_recurse(st, pos + 1, child_acc, t, idx, std::max(t_last, t), stream_last);
        st.order.pop_back();
        st.pos_of[idx] = -1;
        st.used &= ~(1ULL << idx);
    }
}

}  // namespace

Phase1Result solve_phase1_cps(const std::vector<SeqEntry>& entries, int k, const WakeMatrix& wake,
                              const ObjectiveWeights& weights) {
    const int n = static_cast<int>(entries.size());
    if (n > 64) throw std::invalid_argument("solve_phase1_cps: window too large");
    std::vector<int> identity(n);
    for (int i = 0; i < n; ++i) identity[i] = i;

    Phase1Result result;
    if (k <= 0 || n <= 1) {
        result.order = identity;
        result.objective = evaluate_order(entries, identity, wake, weights);
        return result;
    }

    BnbState st;
    st.entries = &entries;
    st.wake = &wake;
    st.weights = &weights;
    st.n = n;
    st.k = k;
    st.order.reserve(n);
    st.best_order = identity;
    st.best_ranks = identity;
    st.best_cost = evaluate_order(entries, identity, wake, weights);
    st.pos_of.assign(n, -1);
    st.floor_t.resize(n);
    st.min_sep_in.resize(n);
    st.min_sep = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        st.floor_t[i] = entries[i].committed ? entries[i].committed_t : entries[i].earliest;
        if (entries[i].committed) st.committed_mask |= 1ULL << i;
        double sep = std::numeric_limits<double>::infinity();
        for (WeightClass leader : {WeightClass::Heavy, WeightClass::Large, WeightClass::Small}) {
            sep = std::min(sep, std::max(wake(leader, entries[i].weight_class),
                                         entries[i].t_rwy_s));
        }
        st.min_sep_in[i] = sep;
        st.min_sep = std::min(st.min_sep, sep);
    }

    const double stream_last[4] = {kNegInf, kNegInf, kNegInf, kNegInf};
    bnb_recurse(st, 0, 0.0, kNegInf, -1, kNegInf, stream_last);

    result.order = std::move(st.best_order);
    result.objective = st.best_cost;
    result.nodes = st.nodes;
    return result;
}

}  // namespace tma
