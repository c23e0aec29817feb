#include "credalkit/sharp.hpp"

#include <algorithm>

namespace credalkit {

namespace {

void check_probability_vector(const std::vector<Rational>& probs, const char* what) {
    Rational total = 0;
    for (const auto& c : probs) {
        if (c < 0 || c > 1) throw Error(std::string(what) + ": entries must lie in [0,1]");
        total += c;
    }
    if (total != 1) throw Error(std::string(what) + ": entries must sum to 1, got " +
                                to_exact_string(total));
}

std::optional<std::size_t> find_unit_entry(const std::vector<Rational>& probs) {
    for (std::size_t i = 0; i < probs.size(); ++i)
        if (probs[i] == 1) return i;
    return std::nullopt;
}

} // namespace

Pmf::Pmf(SpacePtr space, std::vector<Rational> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
    if (!space_) throw Error("Pmf: null space");
    if (weights_.size() != space_->world_count())
        throw Error("Pmf: expected " + std::to_string(space_->world_count()) + " weights, got " +
                    std::to_string(weights_.size()));
    Rational total = 0;
    for (const auto& w : weights_) {
        if (w < 0) throw Error("Pmf: negative weight " + to_exact_string(w));
        total += w;
    }
    if (total != 1)
        throw Error("Pmf: weights sum to " + to_exact_string(total) + ", expected 1");
}

MarginalEvidence::MarginalEvidence(SpacePtr space, std::size_t variable,
                                   std::vector<Rational> value_prob)
    : space_(std::move(space)), variable_(variable), value_prob_(std::move(value_prob)) {
    if (!space_ || variable_ >= space_->arity())
        throw Error("MarginalEvidence: variable index out of range");
    if (value_prob_.size() != space_->variable(variable_).size())
        throw Error("MarginalEvidence: one probability per domain value required");
    check_probability_vector(value_prob_, "MarginalEvidence");
}

std::optional<std::size_t> MarginalEvidence::degenerate_at() const {
    return find_unit_entry(value_prob_);
}

ConditionalEvidence::ConditionalEvidence(SpacePtr space, std::size_t variable,
                                         std::size_t given_variable, std::size_t given_value,
                                         std::vector<Rational> value_prob)
    : space_(std::move(space)), variable_(variable), given_variable_(given_variable),
      given_value_(given_value), value_prob_(std::move(value_prob)) {
    if (!space_ || variable_ >= space_->arity() || given_variable_ >= space_->arity())
        throw Error("ConditionalEvidence: variable index out of range");
    if (variable_ == given_variable_)
        throw Error("ConditionalEvidence: target and conditioning variable must differ");
    if (given_value_ >= space_->variable(given_variable_).size())
        throw Error("ConditionalEvidence: conditioning value out of range");
    if (value_prob_.size() != space_->variable(variable_).size())
        throw Error("ConditionalEvidence: one probability per domain value required");
    check_probability_vector(value_prob_, "ConditionalEvidence");
}

std::optional<std::size_t> ConditionalEvidence::degenerate_at() const {
    return find_unit_entry(value_prob_);
}

// ---------------------------------------------------------------------------
// Queries

Rational prob(const Pmf& p, const Formula& formula) {
    require_same_space(p.space(), formula.space(), "prob");
    Rational total = 0;
    for (std::size_t idx : extension_indices(formula, *p.space())) total += p.weight(idx);
    return total;
}

Rational conditional_prob(const Pmf& p, const Formula& target, const Formula& given) {
    const Rational denom = prob(p, given);
    if (denom == 0)
        throw ConditioningUndefinedError("conditioning on zero-probability event '" +
                                         to_string(given) + "'");
    return prob(p, Formula::conjunction(target, given)) / denom;
}

// ---------------------------------------------------------------------------
// Revision operators (partial: inconsistent evidence is refused)

Pmf condition(const Pmf& p, const Formula& event) {
    require_same_space(p.space(), event.space(), "condition");
    const Rational total = prob(p, event);
    if (total == 0)
        throw ConditioningUndefinedError("conditioning on zero-probability event '" +
                                         to_string(event) + "'");
    const Space& space = *p.space();
    std::vector<Rational> weights(space.world_count(), Rational(0));
    for (std::size_t idx : extension_indices(event, space)) weights[idx] = p.weight(idx) / total;
    return Pmf(p.space(), std::move(weights));
}

Pmf jeffrey_revise(const Pmf& p, const MarginalEvidence& evidence) {
    require_same_space(p.space(), evidence.space(), "jeffrey_revise");
    const Space& space = *p.space();
    const std::size_t var = evidence.variable();
    const std::size_t n_values = space.variable(var).size();

    std::vector<Rational> value_mass(n_values, Rational(0));
    for (std::size_t i = 0; i < space.world_count(); ++i)
        value_mass[space.world(i)[var]] += p.weight(i);

    std::vector<Rational> factor(n_values, Rational(0));
    for (std::size_t v = 0; v < n_values; ++v) {
        const Rational& c = evidence.value_prob()[v];
        if (c > 0 && value_mass[v] == 0)
            throw PartialityViolationError(
                "evidence assigns probability " + to_exact_string(c) + " to '" +
                space.variable(var).name() + "=" + space.variable(var).domain()[v] +
                "', which has prior probability 0");
        if (value_mass[v] > 0) factor[v] = c / value_mass[v];
    }

    std::vector<Rational> weights(space.world_count());
    for (std::size_t i = 0; i < space.world_count(); ++i)
        weights[i] = p.weight(i) * factor[space.world(i)[var]];
    return Pmf(p.space(), std::move(weights));
}

Pmf adams_revise(const Pmf& p, const ConditionalEvidence& evidence) {
    require_same_space(p.space(), evidence.space(), "adams_revise");
    const Space& space = *p.space();
    const std::size_t var = evidence.variable();
    const std::size_t given_var = evidence.given_variable();
    const std::size_t given_val = evidence.given_value();
    const std::size_t n_values = space.variable(var).size();

    Rational given_mass = 0;
    std::vector<Rational> joint_mass(n_values, Rational(0)); // P(x, given)
    for (std::size_t i = 0; i < space.world_count(); ++i) {
        const World w = space.world(i);
        if (w[given_var] != given_val) continue;
        given_mass += p.weight(i);
        joint_mass[w[var]] += p.weight(i);
    }
    if (given_mass == 0)
        throw ConditioningUndefinedError(
            "conditional evidence given '" + space.variable(given_var).name() + "=" +
            space.variable(given_var).domain()[given_val] + "', which has prior probability 0");

    std::vector<Rational> factor(n_values, Rational(0)); // evidence(x) / P(x|given)
    for (std::size_t v = 0; v < n_values; ++v) {
        const Rational& c = evidence.value_prob()[v];
        if (c > 0 && joint_mass[v] == 0)
            throw PartialityViolationError(
                "evidence assigns probability " + to_exact_string(c) + " to '" +
                space.variable(var).name() + "=" + space.variable(var).domain()[v] +
                "' given the event, but the prior conditional is 0");
        if (joint_mass[v] > 0) factor[v] = c * given_mass / joint_mass[v];
    }

    std::vector<Rational> weights(space.world_count());
    for (std::size_t i = 0; i < space.world_count(); ++i) {
        const World w = space.world(i);
        weights[i] = w[given_var] == given_val ? p.weight(i) * factor[w[var]] : p.weight(i);
    }
    return Pmf(p.space(), std::move(weights));
}

// ---------------------------------------------------------------------------
// Imaging operators (total: inconsistent evidence is welcome)

Pmf image(const Pmf& p, const Formula& formula) {
    require_same_space(p.space(), formula.space(), "image");
    const Space& space = *p.space();
    const std::vector<std::size_t> targets = extension_indices(formula, space);
    if (targets.empty())
        throw NoClosestWorldError("no closest world: '" + to_string(formula) +
                                  "' is unsatisfiable");
    std::vector<World> target_worlds;
    target_worlds.reserve(targets.size());
    for (std::size_t t : targets) target_worlds.push_back(space.world(t));

    std::vector<Rational> weights(space.world_count(), Rational(0));
    for (std::size_t i = 0; i < space.world_count(); ++i) {
        if (p.weight(i) == 0) continue;
        const World origin = space.world(i);
        std::size_t best = targets[0];
        std::size_t best_distance = space.arity() + 1;
        for (std::size_t k = 0; k < targets.size(); ++k) {
            std::size_t d = 0;
            for (std::size_t v = 0; v < origin.size(); ++v)
                if (origin[v] != target_worlds[k][v]) ++d;
            if (d < best_distance) { // first strict improvement = canonical tie-break
                best = targets[k];
                best_distance = d;
                if (d == 0) break;
            }
        }
        weights[best] += p.weight(i);
    }
    return Pmf(p.space(), std::move(weights));
}

Pmf jeffrey_image(const Pmf& p, const Formula& formula, const Rational& c) {
    if (c < 0 || c > 1) throw Error("jeffrey_image: weight must lie in [0,1]");
    if (c == 1) return image(p, formula);
    if (c == 0) return image(p, Formula::negation(formula));
    const Pmf on = image(p, formula);
    const Pmf off = image(p, Formula::negation(formula));
    return mix(c, on, off);
}

Pmf marginal_jeffrey_image(const Pmf& p, const MarginalEvidence& evidence) {
    require_same_space(p.space(), evidence.space(), "marginal_jeffrey_image");
    const Space& space = *p.space();
    const std::size_t var = evidence.variable();
    std::vector<Rational> weights(space.world_count(), Rational(0));
    for (std::size_t v = 0; v < space.variable(var).size(); ++v) {
        const Rational& c = evidence.value_prob()[v];
        if (c == 0) continue;
        const Pmf img = image(p, Formula::atom(p.space(), var, v));
        for (std::size_t i = 0; i < space.world_count(); ++i) weights[i] += c * img.weight(i);
    }
    return Pmf(p.space(), std::move(weights));
}

Pmf adams_image(const Pmf& p, const ConditionalEvidence& evidence) {
    require_same_space(p.space(), evidence.space(), "adams_image");
    const Space& space = *p.space();
    const std::size_t var = evidence.variable();
    const std::size_t given_var = evidence.given_variable();
    const std::size_t given_val = evidence.given_value();

    Rational given_mass = 0;
    for (std::size_t i = 0; i < space.world_count(); ++i)
        if (space.world(i)[given_var] == given_val) given_mass += p.weight(i);
    if (given_mass == 0)
        throw ConditioningUndefinedError(
            "Adams' imaging given '" + space.variable(given_var).name() + "=" +
            space.variable(given_var).domain()[given_val] + "', which has prior probability 0");

    // untouched outside the event; per-value images rebuilt inside it
    std::vector<Rational> weights(space.world_count(), Rational(0));
    for (std::size_t i = 0; i < space.world_count(); ++i)
        if (space.world(i)[given_var] != given_val) weights[i] = p.weight(i);

    for (std::size_t v = 0; v < space.variable(var).size(); ++v) {
        const Rational& c = evidence.value_prob()[v];
        if (c == 0) continue;
        const Pmf img = image(p, Formula::atom(p.space(), var, v));
        for (std::size_t i = 0; i < space.world_count(); ++i)
            if (space.world(i)[given_var] == given_val) weights[i] += c * img.weight(i);
    }
    return Pmf(p.space(), std::move(weights));
}

// ---------------------------------------------------------------------------
// Structure helpers

Pmf mix(const Rational& lambda, const Pmf& a, const Pmf& b) {
    require_same_space(a.space(), b.space(), "mix");
    if (lambda < 0 || lambda > 1) throw Error("mix: weight must lie in [0,1]");
    std::vector<Rational> weights(a.weights().size());
    for (std::size_t i = 0; i < weights.size(); ++i)
        weights[i] = lambda * a.weight(i) + (1 - lambda) * b.weight(i);
    return Pmf(a.space(), std::move(weights));
}

SpacePtr subspace(const SpacePtr& space, const std::vector<std::size_t>& variables) {
    if (variables.empty()) throw Error("subspace: need at least one variable");
    if (!std::is_sorted(variables.begin(), variables.end()) ||
        std::adjacent_find(variables.begin(), variables.end()) != variables.end())
        throw Error("subspace: variable indices must be strictly increasing");
    std::vector<Variable> vars;
    for (std::size_t v : variables) {
        if (v >= space->arity()) throw Error("subspace: variable index out of range");
        vars.push_back(space->variable(v));
    }
    return Space::make(std::move(vars));
}

Pmf marginal(const Pmf& p, const std::vector<std::size_t>& variables) {
    const SpacePtr sub = subspace(p.space(), variables);
    const Space& space = *p.space();
    std::vector<Rational> weights(sub->world_count(), Rational(0));
    for (std::size_t i = 0; i < space.world_count(); ++i) {
        const World w = space.world(i);
        std::vector<std::uint32_t> values;
        values.reserve(variables.size());
        for (std::size_t v : variables) values.push_back(w[v]);
        weights[sub->index(World(std::move(values)))] += p.weight(i);
    }
    return Pmf(sub, std::move(weights));
}

} // namespace credalkit
