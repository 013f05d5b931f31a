#include "reward.hpp"

#include "errors.hpp"

namespace ssp {

double SelectionState::reward() const {
    double sum = 0.0;
    for (CascadeIdx c = 0; c < log_->cascade_count(); ++c) {
        if (best_delay_[c])
            sum += static_cast<double>(log_->size(c)) / (1.0 + static_cast<double>(*best_delay_[c]));
    }
    return sum;
}

double SelectionState::gain_of(NodeId s) const {
    double gain = 0.0;
    for (const auto& entry : log_->participations(s)) {
        const Tick delay = entry.tick - log_->start_time(entry.cascade);
        const auto& current = best_delay_[entry.cascade];
        if (current && *current <= delay) continue;
        const double size = static_cast<double>(log_->size(entry.cascade));
        const double before = current ? size / (1.0 + static_cast<double>(*current)) : 0.0;
        gain += size / (1.0 + static_cast<double>(delay)) - before;
    }
    return gain;
}

double SelectionState::marginal_gain(NodeId s) {
    if (is_sensor_[s]) throw param_error("node is already a sensor");
    ++gain_evals_;
    return gain_of(s);
}

void SelectionState::commit(NodeId s) {
    if (is_sensor_[s]) throw param_error("node is already a sensor");
    total_reward_ += gain_of(s);
    for (const auto& entry : log_->participations(s)) {
        const Tick delay = entry.tick - log_->start_time(entry.cascade);
        auto& current = best_delay_[entry.cascade];
        if (!current || delay < *current) current = delay;
    }
    sensors_.push_back(s);
    is_sensor_[s] = true;
}

}  // namespace ssp
