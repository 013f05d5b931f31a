#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cascades.hpp"

namespace ssp {

// Incremental evaluation of the timeliness-weighted reward
//
//   F(S) = sum over cascades c of size(c) / (1 + min over s in S of (t_cs - t_c))
//
// where the term is 0 when no sensor participates in c. The state keeps the
// best (smallest) detection delay per cascade so a marginal gain touches only
// the cascades its node participates in.
//
// gain_evals counts marginal_gain() calls; it is the canonical cost unit for
// speedup reporting. commit() does not count.
class SelectionState {
public:
    explicit SelectionState(const CascadeLog& log)
        : log_(&log), best_delay_(log.cascade_count()), is_sensor_(log.node_count(), false) {}

    const CascadeLog& log() const { return *log_; }
    const std::vector<NodeId>& sensors() const { return sensors_; }
    bool is_sensor(NodeId u) const { return is_sensor_[u]; }
    std::optional<Tick> best_delay(CascadeIdx c) const { return best_delay_[c]; }

    // Incrementally maintained F(S).
    double total_reward() const { return total_reward_; }

    // F(S) re-derived from the per-cascade delays (cross-check path).
    double reward() const;

    std::uint64_t gain_evals() const { return gain_evals_; }

    // F(S + s) - F(S) without mutating the selection. Counts one gain
    // evaluation. Throws param_error if s is already a sensor.
    double marginal_gain(NodeId s);

    // Adds s, folding its participations into the per-cascade delays.
    void commit(NodeId s);

private:
    double gain_of(NodeId s) const;

    const CascadeLog* log_;
    std::vector<NodeId> sensors_;
    std::vector<std::optional<Tick>> best_delay_;
    std::vector<bool> is_sensor_;
    double total_reward_ = 0.0;
    std::uint64_t gain_evals_ = 0;
};

}  // namespace ssp
