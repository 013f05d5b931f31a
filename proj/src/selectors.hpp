#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cascades.hpp"
#include "graph.hpp"
#include "reward.hpp"
#include "rng.hpp"

namespace ssp {

// Gains are compared after quantizing at 1e-12 so algebraic ties collapse to
// one value, then broken by ascending node id. nearbyint of g*1e12 is a
// monotone map, so it is a valid strict-weak-order key for priority queues.
inline double quantize_gain(double g) { return std::nearbyint(g * 1e12); }

// true if (gain_a, a) is a strictly better pick than (gain_b, b).
inline bool better_pick(double gain_a, NodeId a, double gain_b, NodeId b) {
    const double qa = quantize_gain(gain_a);
    const double qb = quantize_gain(gain_b);
    if (qa != qb) return qa > qb;
    return a < b;
}

// Cached gain tuple <node, gain, round-of-validity>. While round lags the
// current round the gain is only an upper bound (submodularity).
struct GainTuple {
    NodeId node;
    double gain;
    std::uint32_t round;
};

struct SelectionResult {
    std::vector<NodeId> sensors;        // selection order, internal ids
    std::vector<double> per_round_gain;
    std::vector<double> lambda_trace;   // filled by instrument_lambda
    std::uint64_t gain_evals = 0;
    std::uint32_t rounds = 0;
    bool early_stopped = false;         // stopped before reaching the budget
    bool sampler_exhausted = false;     // candidate source ran dry / zero-gain retries spent
    std::uint64_t seed = 0;
    std::string method;
    double wall_ms = 0.0;               // informational only, never serialized

    double total_reward() const;
};

// Round k picks the exact argmax of the marginal gain over the remaining
// universe (all nodes by default). Stops at `budget` sensors or when the best
// available gain is zero.
SelectionResult exact_greedy(const Graph& graph, const CascadeLog& log, std::uint32_t budget,
                             std::span<const NodeId> universe = {});

// CELF / accelerated greedy: stale gains are reused as upper bounds through a
// priority queue; picks the identical sensor sequence to exact_greedy and
// never evaluates more gains.
SelectionResult lazy_greedy(const Graph& graph, const CascadeLog& log, std::uint32_t budget,
                            std::span<const NodeId> universe = {});

// Yields the candidate set for one round; nodes already selected are ignored.
// Returning an empty set while unselected nodes remain is an error.
using CandidateSource =
    std::function<std::vector<NodeId>(std::uint32_t round, const SelectionState& state)>;

struct FrameworkOptions {
    std::uint32_t budget = 1;
    bool memoize = true;             // reuse cached gain tuples across rounds
    std::uint32_t zero_gain_retries = 3;
    std::uint64_t seed = 0;          // echoed into the result
    std::string method = "framework";
};

// Candidate-set framework: round k commits the argmax over the sampled
// candidates only. With memoize on, tuples from earlier rounds feed a lazy
// refresh queue restricted to this round's candidates.
SelectionResult framework_greedy(const Graph& graph, const CascadeLog& log,
                                 const CandidateSource& source, const FrameworkOptions& options);

// Draws `size` candidates uniformly without replacement from the unselected
// part of the universe each round (fresh draw every round).
CandidateSource uniform_candidate_source(const Graph& graph, std::uint32_t size, std::uint64_t seed,
                                         std::vector<NodeId> universe = {});

// Per-round quality ratios lambda_k = achieved gain / true best gain, the true
// best found by a full rescan of the universe. Rounds where both are zero
// count as 1 (no loss). Does not touch the result's cost counters.
std::vector<double> instrument_lambda(const SelectionResult& result, const Graph& graph,
                                      const CascadeLog& log, std::span<const NodeId> universe = {});

// JSON with external node ids; deterministic byte-for-byte given equal
// inputs (wall time is deliberately excluded).
std::string to_json(const SelectionResult& result, const Graph& graph);

}  // namespace ssp
