#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace kbp::lp {

struct SparseColumn {
    std::vector<std::pair<int, std::int64_t>> entries;  // (row, coefficient)
};

// minimize cost.x  subject to  A x = rhs,  lower <= x <= upper.
// Lower bounds must be finite; an absent upper bound means +infinity.
struct Problem {
    int rows = 0;
    std::vector<SparseColumn> columns;
    std::vector<mpq_class> cost;
    std::vector<mpq_class> rhs;
    std::vector<mpq_class> lower;
    std::vector<std::optional<mpq_class>> upper;

    // Appends a column with cost c and bounds [0, +inf).
    void add_column(SparseColumn column, mpq_class c);
};

enum class Status { optimal, infeasible, unbounded };

struct Result {
    Status status = Status::infeasible;
    std::vector<mpq_class> x;
    mpq_class objective;
    std::vector<mpq_class> duals;  // one per row at the optimum
    std::int64_t iterations = 0;
};

// Exact two-phase bounded-variable revised simplex. Returns a basic solution.
Result solve(const Problem& problem);

}  // namespace kbp::lp
