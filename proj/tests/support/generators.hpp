#pragma once

// Deterministic random-instance generators for the property suites. Every
// test seeds its own engine, so failures reproduce exactly.

#include <random>
#include <string>
#include <vector>

#include "credalkit/credal.hpp"

namespace credalkit::testgen {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// A space of 2..max_vars variables with 2..max_vals values each.
inline SpacePtr small_space(Rng& rng, std::size_t max_vars = 3, std::size_t max_vals = 3) {
    const std::size_t n_vars = pick(rng, 2, max_vars);
    static const char* names[] = {"A", "B", "C", "D"};
    std::vector<Variable> vars;
    for (std::size_t i = 0; i < n_vars; ++i) {
        const std::size_t n_vals = pick(rng, 2, max_vals);
        std::vector<std::string> domain;
        for (std::size_t j = 0; j < n_vals; ++j) {
            std::string v = names[i];
            for (char& ch : v) ch = static_cast<char>(std::tolower(ch));
            domain.push_back(v + std::to_string(j));
        }
        vars.emplace_back(names[i], std::move(domain));
    }
    return Space::make(std::move(vars));
}

/// Random rational weights (integers over a common denominator).
inline Pmf random_pmf(Rng& rng, const SpacePtr& space, bool strictly_positive = false) {
    std::vector<Rational> weights(space->world_count());
    Rational total = 0;
    while (total == 0) {
        total = 0;
        for (auto& w : weights) {
            const std::size_t raw = pick(rng, strictly_positive ? 1 : 0, 20);
            w = Rational(raw);
            total += w;
        }
    }
    for (auto& w : weights) w /= total;
    return Pmf(space, std::move(weights));
}

inline std::vector<Rational> random_probability_vector(Rng& rng, std::size_t n,
                                                       bool strictly_positive = false) {
    std::vector<Rational> probs(n);
    Rational total = 0;
    while (total == 0) {
        total = 0;
        for (auto& p : probs) {
            p = Rational(pick(rng, strictly_positive ? 1 : 0, 20));
            total += p;
        }
    }
    for (auto& p : probs) p /= total;
    return probs;
}

inline Formula random_formula(Rng& rng, const SpacePtr& space, int depth = 3) {
    const std::size_t choice = depth <= 0 ? pick(rng, 0, 1) : pick(rng, 0, 9);
    if (choice <= 1 || depth <= 0) {
        if (choice == 0 && pick(rng, 0, 9) == 0)
            return pick(rng, 0, 1) ? Formula::top(space) : Formula::bottom(space);
        const std::size_t var = pick(rng, 0, space->arity() - 1);
        const std::size_t val = pick(rng, 0, space->variable(var).size() - 1);
        return Formula::atom(space, var, val);
    }
    switch (choice % 3) {
    case 0: return Formula::negation(random_formula(rng, space, depth - 1));
    case 1:
        return Formula::conjunction(random_formula(rng, space, depth - 1),
                                    random_formula(rng, space, depth - 1));
    default:
        return Formula::disjunction(random_formula(rng, space, depth - 1),
                                    random_formula(rng, space, depth - 1));
    }
}

inline MarginalEvidence random_marginal_evidence(Rng& rng, const SpacePtr& space,
                                                 std::size_t variable,
                                                 bool strictly_positive = false) {
    return MarginalEvidence(
        space, variable,
        random_probability_vector(rng, space->variable(variable).size(), strictly_positive));
}

inline ConditionalEvidence random_conditional_evidence(Rng& rng, const SpacePtr& space,
                                                       std::size_t variable,
                                                       std::size_t given_variable,
                                                       std::size_t given_value,
                                                       bool strictly_positive = false) {
    return ConditionalEvidence(
        space, variable, given_variable, given_value,
        random_probability_vector(rng, space->variable(variable).size(), strictly_positive));
}

/// Interval bounds widened around a random center PMF; never empty.
inline std::vector<std::pair<Rational, Rational>>
random_bounds_around(Rng& rng, const std::vector<Rational>& center) {
    std::vector<std::pair<Rational, Rational>> bounds;
    bounds.reserve(center.size());
    for (const auto& c : center) {
        const Rational down = Rational(pick(rng, 0, 4), 20);
        const Rational up = Rational(pick(rng, 0, 4), 20);
        Rational lo = c - down;
        Rational hi = c + up;
        if (lo < 0) lo = 0;
        if (hi > 1) hi = 1;
        bounds.emplace_back(std::move(lo), std::move(hi));
    }
    return bounds;
}

inline CredalEvidence random_credal_evidence(Rng& rng, const SpacePtr& space,
                                             std::size_t variable) {
    const auto center = random_probability_vector(rng, space->variable(variable).size());
    return CredalEvidence(space, variable, random_bounds_around(rng, center));
}

inline CredalSet random_credal_set(Rng& rng, const SpacePtr& space, std::size_t max_extremes = 3,
                                   bool strictly_positive = false) {
    const std::size_t n = pick(rng, 1, max_extremes);
    std::vector<Pmf> points;
    for (std::size_t i = 0; i < n; ++i) points.push_back(random_pmf(rng, space, strictly_positive));
    return CredalSet(space, std::move(points));
}

} // namespace credalkit::testgen
