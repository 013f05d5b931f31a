#include "samplers.hpp"

#include <algorithm>

#include "errors.hpp"

namespace ssp {

namespace {

double bias_weight(const Graph& graph, NodeId u, BiasMode mode) {
    switch (mode) {
        case BiasMode::Uniform: return 1.0;
        case BiasMode::Degree: return static_cast<double>(graph.degree(u));
        case BiasMode::Activity: return graph.activity(u);
    }
    return 1.0;
}

// The neighbor_cap most active neighbors of v, ties by ascending node id.
std::vector<NodeId> top_active_neighbors(const Graph& graph, NodeId v, std::uint32_t cap) {
    auto nb = graph.neighbors(v);
    std::vector<NodeId> scan(nb.begin(), nb.end());
    if (scan.size() > cap) {
        std::partial_sort(scan.begin(), scan.begin() + cap, scan.end(), [&](NodeId a, NodeId b) {
            const double aa = graph.activity(a);
            const double ab = graph.activity(b);
            if (aa != ab) return aa > ab;
            return a < b;
        });
        scan.resize(cap);
        std::sort(scan.begin(), scan.end());  // deterministic gain-scan order
    }
    return scan;
}

// argmax of the marginal gain over `scan`, skipping nodes already committed.
// Returns nullopt when every scanned node is already a candidate.
std::optional<GainTuple> best_of_scan(SelectionState& state, const std::vector<NodeId>& scan,
                                      std::uint32_t round, CandidateSet& out) {
    bool found = false;
    NodeId best_node = 0;
    double best_gain = 0.0;
    for (NodeId s : scan) {
        if (state.is_sensor(s)) continue;
        const double g = state.marginal_gain(s);
        ++out.build_cost;
        if (!found || better_pick(g, s, best_gain, best_node)) {
            best_node = s;
            best_gain = g;
            found = true;
        }
    }
    if (!found) return std::nullopt;
    return GainTuple{best_node, best_gain, round};
}

}  // namespace

BiasMode parse_bias(const std::string& name) {
    if (name == "uniform") return BiasMode::Uniform;
    if (name == "degree") return BiasMode::Degree;
    if (name == "activity") return BiasMode::Activity;
    throw param_error("unknown bias mode: " + name);
}

std::string bias_name(BiasMode mode) {
    switch (mode) {
        case BiasMode::Uniform: return "uniform";
        case BiasMode::Degree: return "degree";
        case BiasMode::Activity: return "activity";
    }
    return "uniform";
}

CandidateSet vertex_sample_candidates(const Graph& graph, const CascadeLog& log,
                                      const VertexSampleOptions& options) {
    if (options.candidate_budget < 1) throw param_error("candidate budget must be >= 1");
    if (options.candidate_budget > graph.node_count())
        throw param_error("candidate budget exceeds node count");
    if (options.neighbor_cap < 1) throw param_error("neighbor cap must be >= 1");

    CandidateSet result;
    SelectionState state(log);
    Rng rng(options.seed);

    std::vector<NodeId> pool(graph.node_count());
    for (NodeId u = 0; u < graph.node_count(); ++u) pool[u] = u;
    std::vector<double> weights(graph.node_count());
    double weight_total = 0.0;
    for (NodeId u = 0; u < graph.node_count(); ++u) {
        weights[u] = bias_weight(graph, u, options.bias);
        weight_total += weights[u];
    }
    if (weight_total <= 0.0) {
        result.bias_fallback = true;
        std::fill(weights.begin(), weights.end(), 1.0);
    }

    std::vector<double> cumulative;
    std::uint32_t round = 1;
    while (result.nodes.size() < options.candidate_budget) {
        std::erase_if(pool, [&](NodeId u) { return state.is_sensor(u); });
        if (pool.empty()) {
            result.exhausted = true;
            break;
        }
        // weighted draw without replacement over never-drawn, never-committed nodes
        cumulative.clear();
        cumulative.reserve(pool.size());
        double acc = 0.0;
        for (NodeId u : pool) {
            acc += weights[u];
            cumulative.push_back(acc);
        }
        if (acc <= 0.0) {
            result.bias_fallback = true;
            acc = 0.0;
            for (std::size_t i = 0; i < pool.size(); ++i) cumulative[i] = acc += 1.0;
        }
        const std::size_t pick = rng.weighted_index(cumulative);
        const NodeId v = pool[pick];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));

        std::vector<NodeId> scan = top_active_neighbors(graph, v, options.neighbor_cap);
        scan.push_back(v);
        result.visit_cost += scan.size();
        auto best = best_of_scan(state, scan, round, result);
        if (!best) continue;  // whole neighborhood already committed

        state.commit(best->node);
        result.nodes.push_back(best->node);
        result.gains.push_back(*best);
        if (options.record_trace) result.trace.push_back({v, std::move(scan), best->node, best->gain});
        ++round;
    }
    return result;
}

CandidateSet random_walk_candidates(const Graph& graph, const CascadeLog& log,
                                    const RandomWalkOptions& options) {
    if (options.candidate_budget < 1) throw param_error("candidate budget must be >= 1");
    if (options.candidate_budget > graph.node_count())
        throw param_error("candidate budget exceeds node count");
    if (graph.edge_count() == 0) throw param_error("random walk requires a graph with edges");
    if (options.neighbor_cap < 1) throw param_error("neighbor cap must be >= 1");

    CandidateSet result;
    SelectionState state(log);
    RandomWalker walker(graph, options.bias, options.seed);

    std::uint32_t round = 1;
    std::uint64_t consecutive_stalls = 0;
    while (result.nodes.size() < options.candidate_budget) {
        if (consecutive_stalls >= options.stall_limit) {
            result.exhausted = true;
            break;
        }
        const NodeId v = walker.step();
        result.visit_cost += 1;

        std::vector<NodeId> scan = top_active_neighbors(graph, v, options.neighbor_cap);
        result.visit_cost += scan.size();
        auto best = best_of_scan(state, scan, round, result);
        if (!best) {
            ++result.stalls;
            if (++consecutive_stalls % options.restart_window == 0) walker.restart();
            continue;
        }
        consecutive_stalls = 0;
        state.commit(best->node);
        result.nodes.push_back(best->node);
        result.gains.push_back(*best);
        if (options.record_trace) result.trace.push_back({v, std::move(scan), best->node, best->gain});
        ++round;
    }
    return result;
}

BaselineResult random_baseline(const Graph& graph, std::uint32_t budget, std::uint64_t seed) {
    if (budget > graph.node_count()) throw param_error("budget exceeds node count");
    Rng rng(seed);
    std::vector<NodeId> pool(graph.node_count());
    for (NodeId u = 0; u < graph.node_count(); ++u) pool[u] = u;
    BaselineResult result;
    for (std::uint32_t i = 0; i < budget; ++i) {
        std::size_t j = i + rng.pick_index(pool.size() - i);
        std::swap(pool[i], pool[j]);
        result.sensors.push_back(pool[i]);
    }
    return result;
}

BaselineResult friendship_paradox_baseline(const Graph& graph, std::uint32_t budget,
                                           std::uint64_t seed) {
    if (budget > graph.node_count()) throw param_error("budget exceeds node count");
    Rng rng(seed);
    BaselineResult result;
    std::vector<bool> chosen(graph.node_count(), false);
    // generous cap: every draw needs a node with neighbors and an unseen pick
    const std::uint64_t max_attempts = 1000 + 200ULL * budget;
    std::uint64_t attempts = 0;
    while (result.sensors.size() < budget) {
        if (++attempts > max_attempts) {
            result.partial = true;
            break;
        }
        const NodeId u = static_cast<NodeId>(rng.pick_index(graph.node_count()));
        auto nb = graph.neighbors(u);
        if (nb.empty()) continue;
        const NodeId v = nb[rng.pick_index(nb.size())];
        if (chosen[v]) continue;
        chosen[v] = true;
        result.sensors.push_back(v);
    }
    return result;
}

RandomWalker::RandomWalker(const Graph& graph, BiasMode bias, std::uint64_t seed)
    : graph_(&graph), bias_(bias), rng_(seed) {
    if (graph.node_count() == 0) throw param_error("walk on empty graph");
    position_ = static_cast<NodeId>(rng_.pick_index(graph.node_count()));
}

void RandomWalker::restart() {
    position_ = static_cast<NodeId>(rng_.pick_index(graph_->node_count()));
}

NodeId RandomWalker::step() {
    auto nb = graph_->neighbors(position_);
    while (nb.empty()) {  // dead end: uniform restart until a walkable node appears
        restart();
        nb = graph_->neighbors(position_);
    }
    if (bias_ == BiasMode::Uniform) {
        position_ = nb[rng_.pick_index(nb.size())];
        return position_;
    }
    cumulative_.clear();
    cumulative_.reserve(nb.size());
    double acc = 0.0;
    for (NodeId v : nb) {
        acc += bias_weight(*graph_, v, bias_);
        cumulative_.push_back(acc);
    }
    if (acc <= 0.0) {
        position_ = nb[rng_.pick_index(nb.size())];
        return position_;
    }
    position_ = nb[rng_.weighted_index(cumulative_)];
    return position_;
}

}  // namespace ssp
