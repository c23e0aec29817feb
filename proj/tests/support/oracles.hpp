#pragma once

// Independent oracles used to cross-check the library. These deliberately
// take different computational routes than the implementation: reachable
// interval bounds in closed form, a linear scan for closest worlds, and
// an enumerate-subsets hull test instead of simplex feasibility.

#include <optional>
#include <vector>

#include "credalkit/credal.hpp"

namespace credalkit::testoracle {

/// Exact lower envelope of sum_{i in event} p_i over the polytope
/// { lower <= p <= upper, sum p = 1 }: max(sum_S lower, 1 - sum_~S upper).
inline Rational interval_lower(const std::vector<std::pair<Rational, Rational>>& bounds,
                               const std::vector<bool>& in_event) {
    Rational inside_lower = 0, outside_upper = 0;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (in_event[i]) inside_lower += bounds[i].first;
        else outside_upper += bounds[i].second;
    }
    const Rational complement = Rational(1) - outside_upper;
    return inside_lower > complement ? inside_lower : complement;
}

/// Exact upper envelope: min(sum_S upper, 1 - sum_~S lower).
inline Rational interval_upper(const std::vector<std::pair<Rational, Rational>>& bounds,
                               const std::vector<bool>& in_event) {
    Rational inside_upper = 0, outside_lower = 0;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (in_event[i]) inside_upper += bounds[i].second;
        else outside_lower += bounds[i].first;
    }
    const Rational complement = Rational(1) - outside_lower;
    return inside_upper < complement ? inside_upper : complement;
}

/// Closest satisfying world by plain enumeration: filter, measure, take the
/// first minimum. Returns nullopt on an unsatisfiable formula.
inline std::optional<World> closest_world_scan(const Space& space, const World& origin,
                                               const Formula& formula) {
    std::optional<World> best;
    std::size_t best_distance = 0;
    for (std::size_t i = 0; i < space.world_count(); ++i) {
        const World candidate = space.world(i);
        if (!satisfies(candidate, formula)) continue;
        std::size_t d = 0;
        for (std::size_t v = 0; v < origin.size(); ++v)
            if (origin[v] != candidate[v]) ++d;
        if (!best || d < best_distance) {
            best = candidate;
            best_distance = d;
        }
    }
    return best;
}

namespace detail {

// Solves M x = b exactly by Gaussian elimination. Returns nullopt when the
// system is rank-deficient or inconsistent.
inline std::optional<std::vector<Rational>>
solve_unique(std::vector<std::vector<Rational>> m, std::vector<Rational> b) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t p = row;
        while (p < rows && m[p][col] == 0) ++p;
        if (p == rows) return std::nullopt; // column without pivot: not full column rank
        std::swap(m[p], m[row]);
        std::swap(b[p], b[row]);
        const Rational d = m[row][col];
        for (std::size_t c = col; c < cols; ++c) m[row][c] /= d;
        b[row] /= d;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
            b[r] -= f * b[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (pivot_col.size() < cols) return std::nullopt;
    for (std::size_t r = row; r < rows; ++r)
        if (b[r] != 0) return std::nullopt; // inconsistent
    std::vector<Rational> x(cols);
    for (std::size_t i = 0; i < cols; ++i) x[i] = b[i];
    return x;
}

} // namespace detail

/// Caratheodory-style membership: the point lies in the hull iff some
/// affinely independent subset of at most dim+1 generators carries it with
/// non-negative weights. Exponential in the generator count; test-sized
/// inputs only.
inline bool hull_member_scan(const std::vector<std::vector<Rational>>& generators,
                             const std::vector<Rational>& point) {
    const std::size_t n = generators.size();
    const std::size_t dim = point.size();
    const std::size_t max_size = std::min(n, dim + 1);
    for (const auto& g : generators)
        if (g == point) return true;

    std::vector<std::size_t> subset;
    // iterative enumeration of subsets of size 2..max_size
    std::vector<std::size_t> stack;
    for (std::size_t size = 2; size <= max_size; ++size) {
        stack.assign(size, 0);
        for (std::size_t i = 0; i < size; ++i) stack[i] = i;
        if (size > n) break;
        while (true) {
            // solve for convex weights on this subset
            std::vector<std::vector<Rational>> m(dim + 1, std::vector<Rational>(size));
            std::vector<Rational> b(dim + 1);
            for (std::size_t d = 0; d < dim; ++d) {
                for (std::size_t j = 0; j < size; ++j) m[d][j] = generators[stack[j]][d];
                b[d] = point[d];
            }
            for (std::size_t j = 0; j < size; ++j) m[dim][j] = 1;
            b[dim] = 1;
            if (auto x = detail::solve_unique(std::move(m), std::move(b))) {
                bool nonneg = true;
                for (const auto& v : *x)
                    if (v < 0) { nonneg = false; break; }
                if (nonneg) return true;
            }
            // next combination
            std::size_t i = size;
            while (i-- > 0) {
                if (stack[i] + (size - i) < n) {
                    ++stack[i];
                    for (std::size_t j = i + 1; j < size; ++j) stack[j] = stack[j - 1] + 1;
                    break;
                }
                if (i == 0) goto next_size;
            }
        }
    next_size:;
    }
    return false;
}

} // namespace credalkit::testoracle
