#include <algorithm>
#include <set>

#include "credalkit/credal.hpp"

namespace credalkit {

namespace {

// Phase-one simplex with Bland's rule, dense rational tableau. Decides
// feasibility of  A x = b, x >= 0  (b >= 0 required by the callers below).
bool equality_system_feasible(const std::vector<std::vector<Rational>>& a,
                              const std::vector<Rational>& b) {
    const std::size_t rows = a.size();
    const std::size_t structural = rows == 0 ? 0 : a[0].size();
    const std::size_t cols = structural + rows; // artificials appended

    // tableau[r] = row of A | I with rhs; objective minimizes the artificials
    std::vector<std::vector<Rational>> tab(rows, std::vector<Rational>(cols + 1, Rational(0)));
    std::vector<std::size_t> basis(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < structural; ++c) tab[r][c] = a[r][c];
        tab[r][structural + r] = 1;
        tab[r][cols] = b[r];
        basis[r] = structural + r;
    }

    // reduced costs: z_j - c_j = sum of rows for structural columns
    std::vector<Rational> z(cols + 1, Rational(0));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c <= cols; ++c) z[c] += tab[r][c];
    for (std::size_t c = structural; c < cols; ++c) z[c] -= 1;

    while (true) {
        // Bland: smallest-index column with positive reduced cost
        std::size_t entering = cols;
        for (std::size_t c = 0; c < cols; ++c) {
            if (z[c] > 0) {
                entering = c;
                break;
            }
        }
        if (entering == cols) break;

        std::size_t leaving = rows;
        Rational best_ratio;
        for (std::size_t r = 0; r < rows; ++r) {
            if (tab[r][entering] <= 0) continue;
            const Rational ratio = tab[r][cols] / tab[r][entering];
            if (leaving == rows || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leaving])) {
                leaving = r;
                best_ratio = ratio;
            }
        }
        if (leaving == rows) break; // unbounded cannot happen in phase one

        const Rational pivot = tab[leaving][entering];
        for (std::size_t c = 0; c <= cols; ++c) tab[leaving][c] /= pivot;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == leaving || tab[r][entering] == 0) continue;
            const Rational factor = tab[r][entering];
            for (std::size_t c = 0; c <= cols; ++c) tab[r][c] -= factor * tab[leaving][c];
        }
        const Rational zfactor = z[entering];
        if (zfactor != 0)
            for (std::size_t c = 0; c <= cols; ++c) z[c] -= zfactor * tab[leaving][c];
        basis[leaving] = entering;
    }

    Rational artificial_mass = 0;
    for (std::size_t r = 0; r < rows; ++r)
        if (basis[r] >= structural) artificial_mass += tab[r][cols];
    return artificial_mass == 0;
}

} // namespace

bool in_convex_hull(const std::vector<std::vector<Rational>>& generators,
                    const std::vector<Rational>& point) {
    if (generators.empty()) return false;
    const std::size_t dim = point.size();
    for (const auto& g : generators)
        if (g.size() != dim) throw Error("in_convex_hull: dimension mismatch");
    // quick exit: an exact match is its own certificate
    for (const auto& g : generators)
        if (g == point) return true;

    // sum(lambda_j g_j) = point, sum(lambda_j) = 1, lambda >= 0.
    // b >= 0 holds because the callers pass probability vectors.
    std::vector<std::vector<Rational>> a(dim + 1, std::vector<Rational>(generators.size()));
    std::vector<Rational> b(dim + 1);
    for (std::size_t d = 0; d < dim; ++d) {
        if (point[d] < 0) throw Error("in_convex_hull: negative coordinate");
        for (std::size_t j = 0; j < generators.size(); ++j) a[d][j] = generators[j][d];
        b[d] = point[d];
    }
    for (std::size_t j = 0; j < generators.size(); ++j) a[dim][j] = 1;
    b[dim] = 1;
    return equality_system_feasible(a, b);
}

std::vector<std::vector<Rational>>
capped_simplex_vertices(const std::vector<std::pair<Rational, Rational>>& bounds) {
    const std::size_t n = bounds.size();
    if (n == 0) throw Error("capped_simplex_vertices: empty bounds");
    if (n > 16)
        throw SizeLimitError("interval specification over " + std::to_string(n) +
                             " coordinates exceeds the exact enumeration limit of 16");

    Rational lower_total = 0;
    Rational upper_total = 0;
    for (const auto& [lo, hi] : bounds) {
        if (lo < 0 || hi > 1 || lo > hi)
            throw Error("interval bounds must satisfy 0 <= lower <= upper <= 1");
        lower_total += lo;
        upper_total += hi;
    }
    if (lower_total > 1 || upper_total < 1)
        throw InfeasibleSpecError("interval specification describes an empty polytope (lower sum " +
                                  to_exact_string(lower_total) + ", upper sum " +
                                  to_exact_string(upper_total) + ")");

    // At a vertex every coordinate except at most one sits on a bound. For
    // each candidate free coordinate, walk the bound patterns of the others
    // in Gray-code order, maintaining the running sum with one update.
    std::set<std::vector<Rational>> vertices;
    std::vector<std::size_t> others;
    for (std::size_t k = 0; k < n; ++k) {
        others.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (i != k) others.push_back(i);

        std::vector<Rational> point(n);
        Rational sum = 0;
        for (std::size_t i : others) {
            point[i] = bounds[i].first;
            sum += point[i];
        }

        const std::size_t patterns = std::size_t(1) << others.size();
        std::size_t gray = 0;
        for (std::size_t step = 0;; ++step) {
            const Rational free = Rational(1) - sum;
            if (free >= bounds[k].first && free <= bounds[k].second) {
                point[k] = free;
                vertices.insert(point);
            }
            if (step + 1 == patterns) break;
            const std::size_t next_gray = (step + 1) ^ ((step + 1) >> 1);
            const std::size_t bit = gray ^ next_gray; // exactly one bit flips
            std::size_t j = 0;
            while (!((bit >> j) & 1)) ++j;
            const std::size_t i = others[j];
            if (next_gray & bit) {
                sum += bounds[i].second - bounds[i].first;
                point[i] = bounds[i].second;
            } else {
                sum -= bounds[i].second - bounds[i].first;
                point[i] = bounds[i].first;
            }
            gray = next_gray;
        }
    }
    return std::vector<std::vector<Rational>>(vertices.begin(), vertices.end());
}

} // namespace credalkit
