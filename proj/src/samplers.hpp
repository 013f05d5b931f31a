#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cascades.hpp"
#include "graph.hpp"
#include "reward.hpp"
#include "rng.hpp"
#include "selectors.hpp"

namespace ssp {

enum class BiasMode { Uniform, Degree, Activity };

BiasMode parse_bias(const std::string& name);
std::string bias_name(BiasMode mode);

// One committed candidate: which node was drawn/stepped to, what was scanned,
// and what won. Kept only when tracing is enabled.
struct CandidateTraceEntry {
    NodeId pivot;                 // drawn node (VS) or walk position v (RW)
    std::vector<NodeId> scanned;  // nodes whose gain was evaluated
    NodeId chosen;
    double gain;
};

struct CandidateSet {
    std::vector<NodeId> nodes;          // commit order, no duplicates
    std::vector<GainTuple> gains;       // gain at commit time, round = commit index (1-based)
    std::uint64_t build_cost = 0;       // marginal-gain evaluations during construction
    std::uint64_t visit_cost = 0;       // node touches (draws, steps, neighbor scans)
    std::uint64_t stalls = 0;           // steps that produced no new candidate (RW)
    bool exhausted = false;             // ran out of nodes / stall limit hit before budget
    bool bias_fallback = false;         // all-zero weights fell back to uniform
    std::vector<CandidateTraceEntry> trace;
};

struct VertexSampleOptions {
    std::uint32_t candidate_budget = 1;  // B'
    BiasMode bias = BiasMode::Uniform;
    std::uint32_t neighbor_cap = 10;     // scan only the n most active neighbors
    std::uint64_t seed = 0;
    bool record_trace = false;
};

// Vertex-sampling candidate construction: repeatedly draw an unseen node v by
// bias weight (without replacement), then commit the best-gain node among
// {v} plus v's most active neighbors. Gains are measured against the growing
// candidate set.
CandidateSet vertex_sample_candidates(const Graph& graph, const CascadeLog& log,
                                      const VertexSampleOptions& options);

struct RandomWalkOptions {
    std::uint32_t candidate_budget = 1;  // B'
    BiasMode bias = BiasMode::Uniform;
    std::uint32_t neighbor_cap = 10;
    std::uint64_t seed = 0;
    std::uint32_t restart_window = 100;  // consecutive stalls before a uniform restart
    std::uint32_t stall_limit = 1000;    // consecutive stalls before giving up
    bool record_trace = false;
};

// Random-walk candidate construction: step u -> v with v drawn from Nb(u) by
// bias weight, then commit the best-gain node among v's most active
// neighbors (v itself is not scanned). Dead ends restart uniformly; a step
// whose argmax is already a candidate is skipped without consuming budget.
CandidateSet random_walk_candidates(const Graph& graph, const CascadeLog& log,
                                    const RandomWalkOptions& options);

struct BaselineResult {
    std::vector<NodeId> sensors;
    bool partial = false;  // fewer than requested could be produced
};

// Uniform node selection without replacement.
BaselineResult random_baseline(const Graph& graph, std::uint32_t budget, std::uint64_t seed);

// Friendship-paradox selection: each sensor is a uniform neighbor of an
// independent uniform node; duplicates are resampled.
BaselineResult friendship_paradox_baseline(const Graph& graph, std::uint32_t budget,
                                           std::uint64_t seed);

// Stateful neighbor-to-neighbor walker used by the random-walk sampler and by
// the degree-estimation experiments. Restarts uniformly at dead ends.
class RandomWalker {
public:
    RandomWalker(const Graph& graph, BiasMode bias, std::uint64_t seed);

    NodeId position() const { return position_; }
    // Advances one step and returns the new position.
    NodeId step();
    // Jumps to a uniform random node.
    void restart();

private:
    const Graph* graph_;
    BiasMode bias_;
    Rng rng_;
    NodeId position_;
    std::vector<double> cumulative_;  // scratch for biased neighbor choice
};

}  // namespace ssp
