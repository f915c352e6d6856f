#pragma once

#include <string>
#include <vector>

namespace undulant {

/// One pass/fail comparison of a measured value against a threshold.
struct Check {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation;  // how value is compared with threshold, e.g. "<=" or ">="
    std::string detail;
};

inline Check check_le(std::string name, double value, double threshold, std::string detail = {}) {
    return {std::move(name), value <= threshold, value, threshold, "<=", std::move(detail)};
}

inline Check check_ge(std::string name, double value, double threshold, std::string detail = {}) {
    return {std::move(name), value >= threshold, value, threshold, ">=", std::move(detail)};
}

inline bool all_passed(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

}  // namespace undulant
