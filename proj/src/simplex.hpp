#pragma once

// Phase-one simplex for { lambda >= 0 : A lambda = b }, templated on the number
// type. With doubles it is a fast heuristic whose answers are checked exactly by
// the caller; with mpq_class it is exact and uses Bland's rule, so it terminates.

#include <gmpxx.h>

#include <cstddef>
#include <limits>
#include <vector>

namespace peelkit::lp {

enum class Phase1Status { Feasible, Infeasible, Undecided };

template <class T>
struct Phase1Result {
    Phase1Status status = Phase1Status::Undecided;
    /// Feasible: columns with positive weight, and the weights.
    std::vector<std::size_t> support;
    std::vector<T> weights;
    /// Infeasible: y with y.A_j <= 0 for every column and y.b > 0.
    std::vector<T> farkas;
};

template <class T>
struct NumberTraits;

template <>
struct NumberTraits<double> {
    static constexpr bool exact = false;
    static bool positive(double x, double tol) { return x > tol; }
    static bool negative(double x, double tol) { return x < -tol; }
};

template <>
struct NumberTraits<mpq_class> {
    static constexpr bool exact = true;
    static bool positive(const mpq_class& x, double) { return sgn(x) > 0; }
    static bool negative(const mpq_class& x, double) { return sgn(x) < 0; }
};

/// columns: m columns of height rows, stored column after column.
template <class T>
Phase1Result<T> phase_one(const std::vector<T>& columns, std::size_t m, std::size_t rows,
                          const std::vector<T>& rhs, double tol, std::size_t max_iterations) {
    using Traits = NumberTraits<T>;
    const std::size_t width = m + rows + 1;
    const std::size_t rhs_col = m + rows;

    std::vector<T> tab(rows * width, T(0));
    std::vector<int> flip(rows, 1);
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        if (Traits::negative(rhs[i], 0.0)) flip[i] = -1;
        for (std::size_t j = 0; j < m; ++j) {
            tab[i * width + j] = flip[i] > 0 ? columns[j * rows + i] : T(-columns[j * rows + i]);
        }
        tab[i * width + m + i] = T(1);
        tab[i * width + rhs_col] = flip[i] > 0 ? rhs[i] : T(-rhs[i]);
        basis[i] = m + i;
    }
    // Reduced costs of the phase-one objective (sum of artificials).
    std::vector<T> cost(width, T(0));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < m; ++j) cost[j] -= tab[i * width + j];
        cost[rhs_col] -= tab[i * width + rhs_col];
    }

    Phase1Result<T> result;
    std::size_t iteration = 0;
    for (;; ++iteration) {
        if (!Traits::exact && iteration >= max_iterations) return result;

        std::size_t enter = m;
        if constexpr (Traits::exact) {
            for (std::size_t j = 0; j < m; ++j) {
                if (sgn(cost[j]) < 0) {
                    enter = j;
                    break;
                }
            }
        } else {
            double most = -tol;
            for (std::size_t j = 0; j < m; ++j) {
                if (cost[j] < most) {
                    most = cost[j];
                    enter = j;
                }
            }
        }
        if (enter == m) break;

        std::size_t leave = rows;
        T best_ratio{};
        for (std::size_t i = 0; i < rows; ++i) {
            const T& a = tab[i * width + enter];
            if (!Traits::positive(a, tol)) continue;
            T ratio = tab[i * width + rhs_col] / a;
            if (leave == rows || ratio < best_ratio ||
                (Traits::exact && ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == rows) return result;  // unbounded direction; cannot happen in exact phase one

        const T pivot = tab[leave * width + enter];
        for (std::size_t j = 0; j < width; ++j) tab[leave * width + j] /= pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave) continue;
            const T factor = tab[i * width + enter];
            if (factor == T(0)) continue;
            for (std::size_t j = 0; j < width; ++j) tab[i * width + j] -= factor * tab[leave * width + j];
        }
        {
            const T factor = cost[enter];
            for (std::size_t j = 0; j < width; ++j) cost[j] -= factor * tab[leave * width + j];
        }
        basis[leave] = enter;
    }

    const T objective = -cost[rhs_col];
    if (!Traits::positive(objective, tol)) {
        result.status = Phase1Status::Feasible;
        for (std::size_t i = 0; i < rows; ++i) {
            const T& value = tab[i * width + rhs_col];
            if (basis[i] < m && Traits::positive(value, tol)) {
                result.support.push_back(basis[i]);
                result.weights.push_back(value);
            }
        }
        return result;
    }
    result.status = Phase1Status::Infeasible;
    result.farkas.resize(rows);
    for (std::size_t k = 0; k < rows; ++k) {
        T y = T(1) - cost[m + k];
        result.farkas[k] = flip[k] > 0 ? y : T(-y);
    }
    return result;
}

} // namespace peelkit::lp
