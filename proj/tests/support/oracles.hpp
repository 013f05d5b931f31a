#pragma once

// Test-only oracles, kept independent of the library's incremental reward
// path: the reward is recomputed directly from the event lists, and optima
// come from exhaustive subset enumeration.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "cascades.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace oracle {

// Direct evaluation of sum_c size(c) / (1 + min_{s in S}(t_cs - t_c)) by
// scanning every cascade's raw events.
inline double naive_reward(const ssp::CascadeLog& log, const std::vector<ssp::NodeId>& sensors) {
    std::set<ssp::NodeId> in_set(sensors.begin(), sensors.end());
    double total = 0.0;
    for (ssp::CascadeIdx c = 0; c < log.cascade_count(); ++c) {
        std::optional<ssp::Tick> best;
        for (const auto& event : log.events(c)) {
            if (!in_set.contains(event.node)) continue;
            const ssp::Tick delay = event.tick - log.start_time(c);
            if (!best || delay < *best) best = delay;
        }
        if (best)
            total += static_cast<double>(log.size(c)) / (1.0 + static_cast<double>(*best));
    }
    return total;
}

// Optimal reward over all subsets of size exactly min(budget, |V|)
// (monotonicity makes larger sets never worse).
inline double brute_force_opt(const ssp::Graph& graph, const ssp::CascadeLog& log,
                              std::uint32_t budget) {
    const std::uint32_t n = graph.node_count();
    const std::uint32_t k = std::min(budget, n);
    std::vector<ssp::NodeId> subset(k);
    double best = 0.0;
    // lexicographic combinations
    std::vector<std::uint32_t> idx(k);
    for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
    if (k == 0) return 0.0;
    while (true) {
        for (std::uint32_t i = 0; i < k; ++i) subset[i] = idx[i];
        best = std::max(best, naive_reward(log, subset));
        std::int32_t pos = static_cast<std::int32_t>(k) - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (std::uint32_t i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return best;
}

struct RandomInstance {
    ssp::Graph graph;
    ssp::CascadeLog log;
};

// Random small instance: a connected-ish random graph plus random cascades.
// Guarantees at least one edge so walk-based samplers are usable.
inline RandomInstance random_instance(ssp::Rng& rng, std::uint32_t max_nodes,
                                      std::uint32_t max_cascades, ssp::Tick max_tick = 50) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.pick_index(max_nodes - 1));
    std::vector<ssp::ExternalId> nodes(n);
    for (std::uint32_t i = 0; i < n; ++i) nodes[i] = i;

    std::vector<std::pair<ssp::ExternalId, ssp::ExternalId>> edges;
    // random spanning tree keeps everything reachable
    for (std::uint32_t v = 1; v < n; ++v)
        edges.emplace_back(rng.pick_index(v), v);
    const std::uint32_t extra = static_cast<std::uint32_t>(rng.pick_index(n));
    for (std::uint32_t e = 0; e < extra; ++e) {
        const auto a = rng.pick_index(n);
        const auto b = rng.pick_index(n);
        if (a != b) edges.emplace_back(a, b);
    }

    std::vector<std::pair<ssp::ExternalId, double>> activity;
    for (std::uint32_t i = 0; i < n; ++i)
        activity.emplace_back(i, static_cast<double>(rng.pick_index(10)));

    auto graph = ssp::Graph::build(std::move(nodes), edges, activity, /*directed=*/false);

    const std::uint32_t cascades = 1 + static_cast<std::uint32_t>(rng.pick_index(max_cascades));
    std::vector<ssp::CascadeRecord> records;
    for (std::uint32_t c = 0; c < cascades; ++c) {
        const std::uint32_t participants = 1 + static_cast<std::uint32_t>(rng.pick_index(n));
        for (std::uint32_t i = 0; i < participants; ++i) {
            records.push_back({c, rng.pick_index(n), rng.next_below(max_tick + 1)});
        }
    }
    auto log = ssp::CascadeLog::build(graph, std::move(records));
    return {std::move(graph), std::move(log)};
}

}  // namespace oracle
