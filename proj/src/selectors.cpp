#include "selectors.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <queue>
#include <unordered_map>

#include <json.hpp>

#include "errors.hpp"
#include "tsv.hpp"

namespace ssp {

namespace {

std::vector<NodeId> full_universe(const Graph& graph) {
    std::vector<NodeId> all(graph.node_count());
    std::iota(all.begin(), all.end(), NodeId{0});
    return all;
}

std::vector<NodeId> resolve_universe(const Graph& graph, std::span<const NodeId> universe) {
    if (universe.empty()) return full_universe(graph);
    std::vector<NodeId> u(universe.begin(), universe.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    if (!u.empty() && u.back() >= graph.node_count())
        throw param_error("universe references a node outside the graph");
    return u;
}

struct TupleOrder {
    // max-queue: highest quantized gain first, then lowest node id.
    bool operator()(const GainTuple& a, const GainTuple& b) const {
        return !better_pick(a.gain, a.node, b.gain, b.node);
    }
};

using GainQueue = std::priority_queue<GainTuple, std::vector<GainTuple>, TupleOrder>;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

}  // namespace

double SelectionResult::total_reward() const {
    double sum = 0.0;
    for (double g : per_round_gain) sum += g;
    return sum;
}

SelectionResult exact_greedy(const Graph& graph, const CascadeLog& log, std::uint32_t budget,
                             std::span<const NodeId> universe) {
    if (budget < 1) throw param_error("budget must be >= 1");
    Timer timer;
    const std::vector<NodeId> nodes = resolve_universe(graph, universe);
    SelectionState state(log);
    SelectionResult result;
    result.method = "greedy";

    while (result.sensors.size() < budget) {
        bool found = false;
        NodeId best_node = 0;
        double best_gain = 0.0;
        for (NodeId u : nodes) {
            if (state.is_sensor(u)) continue;
            const double g = state.marginal_gain(u);
            if (!found || better_pick(g, u, best_gain, best_node)) {
                best_node = u;
                best_gain = g;
                found = true;
            }
        }
        if (!found || best_gain <= 0.0) {
            result.early_stopped = true;
            break;
        }
        state.commit(best_node);
        result.sensors.push_back(best_node);
        result.per_round_gain.push_back(best_gain);
    }
    result.rounds = static_cast<std::uint32_t>(result.sensors.size());
    result.gain_evals = state.gain_evals();
    result.wall_ms = timer.ms();
    return result;
}

SelectionResult lazy_greedy(const Graph& graph, const CascadeLog& log, std::uint32_t budget,
                            std::span<const NodeId> universe) {
    if (budget < 1) throw param_error("budget must be >= 1");
    Timer timer;
    const std::vector<NodeId> nodes = resolve_universe(graph, universe);
    SelectionState state(log);
    SelectionResult result;
    result.method = "lazy";

    GainQueue queue;
    for (NodeId u : nodes) queue.push({u, state.marginal_gain(u), 1});

    std::uint32_t round = 1;
    while (result.sensors.size() < budget && !queue.empty()) {
        GainTuple head = queue.top();
        queue.pop();
        if (head.round != round) {
            head.gain = state.marginal_gain(head.node);
            head.round = round;
            queue.push(head);
            continue;
        }
        if (head.gain <= 0.0) {
            result.early_stopped = true;
            break;
        }
        state.commit(head.node);
        result.sensors.push_back(head.node);
        result.per_round_gain.push_back(head.gain);
        ++round;
    }
    if (result.sensors.size() < budget && queue.empty()) result.early_stopped = true;
    result.rounds = static_cast<std::uint32_t>(result.sensors.size());
    result.gain_evals = state.gain_evals();
    result.wall_ms = timer.ms();
    return result;
}

SelectionResult framework_greedy(const Graph& graph, const CascadeLog& log,
                                 const CandidateSource& source, const FrameworkOptions& options) {
    if (options.budget < 1) throw param_error("budget must be >= 1");
    Timer timer;
    SelectionState state(log);
    SelectionResult result;
    result.method = options.method;
    result.seed = options.seed;

    // node -> cached tuple, kept across rounds when memoizing
    std::unordered_map<NodeId, GainTuple> cache;

    std::uint32_t round = 1;
    while (result.sensors.size() < options.budget) {
        bool committed = false;
        for (std::uint32_t attempt = 0; attempt <= options.zero_gain_retries; ++attempt) {
            std::vector<NodeId> candidates = source(round, state);
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
            std::erase_if(candidates, [&](NodeId u) { return state.is_sensor(u); });
            if (candidates.empty()) {
                if (state.sensors().size() >= graph.node_count()) break;  // nothing left to pick
                throw param_error("candidate source produced an empty set");
            }
            if (!candidates.empty() && candidates.back() >= graph.node_count())
                throw param_error("candidate source produced a node outside the graph");

            GainQueue queue;
            for (NodeId u : candidates) {
                if (options.memoize) {
                    auto it = cache.find(u);
                    if (it != cache.end()) {
                        queue.push(it->second);  // stale upper bound, lazily refreshed below
                        continue;
                    }
                }
                GainTuple fresh{u, state.marginal_gain(u), round};
                if (options.memoize) cache[u] = fresh;
                queue.push(fresh);
            }
            GainTuple winner{0, 0.0, 0};
            while (!queue.empty()) {
                GainTuple head = queue.top();
                queue.pop();
                if (head.round == round) {
                    winner = head;
                    break;
                }
                head.gain = state.marginal_gain(head.node);
                head.round = round;
                if (options.memoize) cache[head.node] = head;
                queue.push(head);
            }
            if (winner.round == round && winner.gain > 0.0) {
                state.commit(winner.node);
                if (options.memoize) cache.erase(winner.node);
                result.sensors.push_back(winner.node);
                result.per_round_gain.push_back(winner.gain);
                committed = true;
                break;
            }
        }
        if (!committed) {
            result.early_stopped = true;
            result.sampler_exhausted = state.sensors().size() < graph.node_count();
            break;
        }
        ++round;
    }
    result.rounds = static_cast<std::uint32_t>(result.sensors.size());
    result.gain_evals = state.gain_evals();
    result.wall_ms = timer.ms();
    return result;
}

CandidateSource uniform_candidate_source(const Graph& graph, std::uint32_t size, std::uint64_t seed,
                                         std::vector<NodeId> universe) {
    if (size < 1) throw param_error("candidate size must be >= 1");
    std::vector<NodeId> pool =
        universe.empty() ? full_universe(graph) : resolve_universe(graph, universe);
    auto rng = std::make_shared<Rng>(seed);
    return [pool = std::move(pool), size, rng](std::uint32_t, const SelectionState& state) {
        std::vector<NodeId> eligible;
        eligible.reserve(pool.size());
        for (NodeId u : pool)
            if (!state.is_sensor(u)) eligible.push_back(u);
        // partial Fisher-Yates: draw without replacement within the round
        const std::size_t take = std::min<std::size_t>(size, eligible.size());
        for (std::size_t i = 0; i < take; ++i) {
            std::size_t j = i + rng->pick_index(eligible.size() - i);
            std::swap(eligible[i], eligible[j]);
        }
        eligible.resize(take);
        return eligible;
    };
}

std::vector<double> instrument_lambda(const SelectionResult& result, const Graph& graph,
                                      const CascadeLog& log, std::span<const NodeId> universe) {
    const std::vector<NodeId> nodes = resolve_universe(graph, universe);
    SelectionState state(log);
    std::vector<double> lambdas;
    lambdas.reserve(result.sensors.size());
    for (std::size_t k = 0; k < result.sensors.size(); ++k) {
        bool found = false;
        NodeId best_node = 0;
        double best_gain = 0.0;
        for (NodeId u : nodes) {
            if (state.is_sensor(u)) continue;
            const double g = state.marginal_gain(u);
            if (!found || better_pick(g, u, best_gain, best_node)) {
                best_node = u;
                best_gain = g;
                found = true;
            }
        }
        const double achieved = result.per_round_gain[k];
        if (best_gain <= 0.0)
            lambdas.push_back(1.0);  // nothing to gain anywhere: no loss this round
        else
            lambdas.push_back(achieved / best_gain);
        state.commit(result.sensors[k]);
    }
    return lambdas;
}

std::string to_json(const SelectionResult& result, const Graph& graph) {
    nlohmann::json j;
    j["method"] = result.method;
    j["seed"] = result.seed;
    j["rounds"] = result.rounds;
    j["gain_evals"] = result.gain_evals;
    j["early_stopped"] = result.early_stopped;
    j["sampler_exhausted"] = result.sampler_exhausted;
    auto sensors = nlohmann::json::array();
    for (NodeId u : result.sensors) sensors.push_back(graph.external_id(u));
    j["sensors"] = std::move(sensors);
    j["per_round_gain"] = result.per_round_gain;
    j["total_reward"] = result.total_reward();
    if (!result.lambda_trace.empty()) {
        j["lambda_trace"] = result.lambda_trace;
        j["lambda"] = *std::min_element(result.lambda_trace.begin(), result.lambda_trace.end());
    }
    return j.dump(2);
}

}  // namespace ssp
