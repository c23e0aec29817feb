#pragma once

#include <vector>

#include "credalkit/model.hpp"
#include "credalkit/rational.hpp"

namespace credalkit {

/// A sharp belief state: exact non-negative weights over the worlds of a
/// space, summing to exactly one. Immutable after construction.
class Pmf {
public:
    Pmf(SpacePtr space, std::vector<Rational> weights);

    const SpacePtr& space() const { return space_; }
    const std::vector<Rational>& weights() const { return weights_; }
    const Rational& weight(std::size_t world_index) const { return weights_[world_index]; }

    bool operator==(const Pmf& other) const { return weights_ == other.weights_; }
    /// Lexicographic weight order; the canonical extreme-point ordering.
    bool operator<(const Pmf& other) const { return weights_ < other.weights_; }

private:
    SpacePtr space_;
    std::vector<Rational> weights_;
};

/// Probabilistic evidence on one variable: a PMF over its domain.
class MarginalEvidence {
public:
    MarginalEvidence(SpacePtr space, std::size_t variable, std::vector<Rational> value_prob);

    const SpacePtr& space() const { return space_; }
    std::size_t variable() const { return variable_; }
    const std::vector<Rational>& value_prob() const { return value_prob_; }
    /// Index of the value carrying probability one, if the evidence is
    /// deterministic.
    std::optional<std::size_t> degenerate_at() const;

    bool operator==(const MarginalEvidence& other) const {
        return variable_ == other.variable_ && value_prob_ == other.value_prob_;
    }

private:
    SpacePtr space_;
    std::size_t variable_;
    std::vector<Rational> value_prob_;
};

/// Evidence on X gathered conditional on another variable taking a fixed
/// value: a PMF over the domain of X, read as the desired P(X | given).
class ConditionalEvidence {
public:
    ConditionalEvidence(SpacePtr space, std::size_t variable, std::size_t given_variable,
                        std::size_t given_value, std::vector<Rational> value_prob);

    const SpacePtr& space() const { return space_; }
    std::size_t variable() const { return variable_; }
    std::size_t given_variable() const { return given_variable_; }
    std::size_t given_value() const { return given_value_; }
    const std::vector<Rational>& value_prob() const { return value_prob_; }
    std::optional<std::size_t> degenerate_at() const;

    bool operator==(const ConditionalEvidence& other) const {
        return variable_ == other.variable_ && given_variable_ == other.given_variable_ &&
               given_value_ == other.given_value_ && value_prob_ == other.value_prob_;
    }

private:
    SpacePtr space_;
    std::size_t variable_;
    std::size_t given_variable_;
    std::size_t given_value_;
    std::vector<Rational> value_prob_;
};

/// P(formula): total weight of the formula's extension.
Rational prob(const Pmf& p, const Formula& formula);

/// P(target | given); throws ConditioningUndefinedError when P(given) = 0.
Rational conditional_prob(const Pmf& p, const Formula& target, const Formula& given);

/// Bayesian conditioning on an event. Throws ConditioningUndefinedError on a
/// zero-probability event; that failure mode is what imaging exists to avoid.
Pmf condition(const Pmf& p, const Formula& event);

/// Jeffrey's rule: adjust towards the prescribed marginal while preserving
/// conditionals given each value. Evidence mass on a zero-probability value
/// raises PartialityViolationError.
Pmf jeffrey_revise(const Pmf& p, const MarginalEvidence& evidence);

/// Adams' conditioning: the conditional analogue of Jeffrey's rule. Requires
/// P(given) > 0 and evidence compatible with the prior conditional support.
Pmf adams_revise(const Pmf& p, const ConditionalEvidence& evidence);

/// Lewis imaging: every world's mass moves to its closest formula-world.
Pmf image(const Pmf& p, const Formula& formula);

/// Weighted imaging on a formula and its negation with weight c on the
/// formula side.
Pmf jeffrey_image(const Pmf& p, const Formula& formula, const Rational& c);

/// Probabilistic Jeffrey's imaging on marginal evidence: the image on each
/// value, mixed by the evidence weights. Defined for any evidence, including
/// evidence inconsistent with p.
Pmf marginal_jeffrey_image(const Pmf& p, const MarginalEvidence& evidence);

/// Adams' imaging: keep the complement of the conditioning event untouched
/// and rebuild the event's slice from per-value images. Requires
/// P(given) > 0; evidence may contradict the prior conditional.
Pmf adams_image(const Pmf& p, const ConditionalEvidence& evidence);

/// Convex combination lambda*a + (1-lambda)*b.
Pmf mix(const Rational& lambda, const Pmf& a, const Pmf& b);

/// Marginal over the given variables (ascending indices); the result lives
/// on the sub-space that keeps their declaration order.
Pmf marginal(const Pmf& p, const std::vector<std::size_t>& variables);

/// The sub-space spanned by the given variables of `space`.
SpacePtr subspace(const SpacePtr& space, const std::vector<std::size_t>& variables);

} // namespace credalkit
