#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cascades.hpp"
#include "graph.hpp"
#include "samplers.hpp"
#include "selectors.hpp"

namespace ssp {

struct DetectionMetrics {
    std::uint64_t detects = 0;            // cascades with at least one participating sensor
    std::vector<double> lead_times;       // peak time minus earliest sensor tick, detected only
    double mean_lead_time = 0.0;          // 0 when nothing was detected
};

// Lead time may be negative: a sensor that joins after the peak still detects.
DetectionMetrics detection_metrics(std::span<const NodeId> sensors, const CascadeLog& log,
                                   Tick bucket_width);

// How a selection method is executed by the harness. Exact greedy ignores the
// seed; sampling methods derive their stream from it.
struct MethodSpec {
    enum class Kind { Greedy, Lazy, Framework, VertexSample, RandomWalk, Random, FriendshipParadox };
    Kind kind = Kind::Greedy;
    BiasMode bias = BiasMode::Uniform;
    std::uint32_t candidate_budget = 0;      // B' for vs/rw (0 = 4x sensor budget)
    std::uint32_t candidate_size = 0;        // per-round size for framework (0 = use p/alpha)
    double p = 0.9;                          // framework sample-size confidence
    double alpha = 0.0;                      // framework percentile (0 = 100B/|V|)
    std::uint32_t neighbor_cap = 10;
    bool memoize = true;

    static MethodSpec parse(const std::string& text);  // e.g. "rw:degree", "framework"
    std::string label() const;
};

struct RunOutcome {
    SelectionResult selection;
    std::uint64_t build_cost = 0;   // candidate construction gain evaluations (vs/rw)
    std::uint64_t total_cost() const { return selection.gain_evals + build_cost; }
    std::vector<NodeId> candidate_union;  // all candidates seen (empty for greedy/lazy)
};

// Runs one method end to end (candidate construction + selection).
RunOutcome run_method(const Graph& graph, const CascadeLog& log, const MethodSpec& method,
                      std::uint32_t budget, std::uint64_t seed,
                      std::span<const NodeId> universe = {});

struct ExperimentReport {
    std::string method;
    std::uint64_t seed = 0;
    std::uint32_t budget = 0;
    double reward = 0.0;
    double reward_ratio_vs_greedy = 0.0;
    std::uint64_t gain_evals = 0;   // build + selection
    double speedup = 0.0;           // greedy evals / this method's evals
    std::uint64_t detects = 0;
    double mean_lead_time = 0.0;
    double cover_ratio = 0.0;       // vs the greedy proxy for OPT
};

// |candidate_union ∩ opt| / |opt|.
double measured_cover_ratio(std::span<const NodeId> candidate_union, std::span<const NodeId> opt);

struct TemporalSplit {
    Tick window_width = 0;
    std::uint32_t train_begin = 0;  // inclusive window indexes
    std::uint32_t train_end = 0;    // inclusive
    std::uint32_t test_window = 0;
};

// Selects sensors on the training windows' events only, then scores them on
// the test window's cascades (a cascade belongs to the window of its start
// tick).
ExperimentReport prediction_run(const Graph& graph, const CascadeLog& log,
                                const TemporalSplit& split, const MethodSpec& method,
                                std::uint32_t budget, std::uint64_t seed, Tick bucket_width);

enum class RegularizeRule { MinCascadesPerWindow, MinActiveDaysPerWindow, MinCascadesPerDay };

RegularizeRule parse_regularize_rule(const std::string& name);

// Nodes of the log satisfying an activity-history rule; selectors restrict
// their universe to this subset. Throws when nothing survives the threshold.
std::vector<NodeId> regularize_universe(const CascadeLog& log, RegularizeRule rule, double threshold,
                                        Tick day_width);

struct BenchConfig {
    std::vector<MethodSpec> methods;
    std::uint32_t budget = 10;
    std::uint32_t replications = 1;
    std::vector<std::uint64_t> seeds;  // one per replication (derived from seeds[0] if short)
    Tick bucket_width = 1;
    std::uint32_t jobs = 1;
};

struct BenchOutput {
    std::vector<ExperimentReport> reports;
    std::string csv;
    std::string json;
};

// Runs every (method, replication) pair against the same instance, with exact
// greedy as the speedup denominator. CSV/JSON are byte-deterministic for a
// fixed seed list regardless of the job count.
BenchOutput bench(const Graph& graph, const CascadeLog& log, const BenchConfig& config);

}  // namespace ssp
