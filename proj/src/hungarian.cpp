#include "barrier/hungarian.hpp"

#include <algorithm>
#include <limits>

namespace barrier {

namespace {

// Shortest augmenting path Hungarian method with row/column potentials.
// rows <= cols; returns the column matched to each row.
std::vector<std::size_t> solve_dense(const std::vector<std::vector<double>>& a, std::size_t rows,
                                     std::size_t cols) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
    std::vector<std::size_t> match(cols + 1, 0), way(cols + 1, 0);
    for (std::size_t i = 1; i <= rows; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(cols + 1, kInf);
        std::vector<bool> used(cols + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = match[j0];
            double delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= cols; ++j) {
                if (used[j]) continue;
                const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= cols; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> row_to_col(rows, 0);
    for (std::size_t j = 1; j <= cols; ++j) {
        if (match[j] != 0) row_to_col[match[j] - 1] = j - 1;
    }
    return row_to_col;
}

}  // namespace

std::optional<Assignment> hungarian(const AssignmentProblem& problem) {
    const std::size_t sensors = problem.rows();
    const std::size_t targets = problem.cols();
    if (sensors == 0 || targets == 0) return std::nullopt;

    // Forbidden cells get a cost larger than any all-feasible assignment.
    double big = 1.0;
    for (std::size_t i = 0; i < sensors; ++i) {
        for (std::size_t j = 0; j < targets; ++j) {
            if (problem.feasible[i][j]) big += problem.cost[i][j];
        }
    }

    // Rows are targets, columns are sensors (padded with forbidden columns).
    const std::size_t cols = std::max(sensors, targets);
    std::vector<std::vector<double>> a(targets, std::vector<double>(cols, big));
    for (std::size_t j = 0; j < targets; ++j) {
        for (std::size_t i = 0; i < sensors; ++i) {
            if (problem.feasible[i][j]) a[j][i] = problem.cost[i][j];
        }
    }

    const auto row_to_col = solve_dense(a, targets, cols);
    Assignment assignment(targets);
    for (std::size_t j = 0; j < targets; ++j) {
        const std::size_t i = row_to_col[j];
        if (i >= sensors || !problem.feasible[i][j]) return std::nullopt;
        assignment[j] = i;
    }
    return assignment;
}

double assignment_cost(const AssignmentProblem& problem, const Assignment& assignment) {
    double total = 0.0;
    for (std::size_t j = 0; j < assignment.size(); ++j) total += problem.cost[assignment[j]][j];
    return total;
}

}  // namespace barrier
