#pragma once

#include "bousq/functional_value.hpp"
#include "bousq/state.hpp"

#include <functional>

namespace bousq {

/// Named functional sampled along an evolution.
struct FunctionalObserver {
    std::string name;
    std::function<FunctionalValue(const State&)> eval;
};

/// Time series of functional records plus sparse state snapshots
/// (first and last state of the run).
struct Trajectory {
    std::vector<double> times;
    std::vector<std::string> names;
    std::vector<std::vector<FunctionalValue>> series;  // series[i][sample]
    std::vector<State> snapshots;

    const std::vector<FunctionalValue>& series_for(const std::string& name) const {
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return series[i];
        throw std::out_of_range("trajectory has no series named '" + name + "'");
    }

    const State& initial_state() const { return snapshots.front(); }
    const State& final_state() const { return snapshots.back(); }
};

}  // namespace bousq
