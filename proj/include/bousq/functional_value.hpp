#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bousq {

/// One evaluation of a named functional, optionally decomposed into named
/// per-term contributions that sum to the value.
struct FunctionalValue {
    std::string name;
    double time = 0.0;
    double value = 0.0;
    std::vector<std::pair<std::string, double>> terms;

    double term(const std::string& key) const {
        for (const auto& [k, v] : terms)
            if (k == key) return v;
        throw std::out_of_range("functional '" + name + "' has no term '" + key + "'");
    }

    double sum_of_terms() const {
        double s = 0.0;
        for (const auto& [k, v] : terms) s += v;
        return s;
    }
};

}  // namespace bousq
