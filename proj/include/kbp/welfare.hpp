#pragma once

#include <span>

namespace kbp {

struct WelfareReport {
    double utilitarian = 0;
    double egalitarian = 0;
    double max_utility_difference = 0;
};

// Throws std::invalid_argument on an empty vector.
WelfareReport welfare(std::span<const double> utilities);

}  // namespace kbp
