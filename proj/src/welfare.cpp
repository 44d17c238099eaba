#include "kbp/welfare.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kbp {

WelfareReport welfare(std::span<const double> utilities)
{
    if (utilities.empty()) throw std::invalid_argument("welfare of an empty utility vector");
    auto [lo, hi] = std::minmax_element(utilities.begin(), utilities.end());
    return {std::accumulate(utilities.begin(), utilities.end(), 0.0), *lo, *hi - *lo};
}

}  // namespace kbp
