#include "credalkit/credal.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace credalkit {

namespace {

void require_common_space(const SpacePtr& space, const std::vector<Pmf>& points,
                          const char* context) {
    for (const auto& p : points) require_same_space(space, p.space(), context);
}

std::vector<Pmf> dedupe_sorted(std::vector<Pmf> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

// Drops every point expressible as a convex combination of the remaining
// ones. The minimal generating set of a polytope is unique, so the result
// does not depend on the visiting order.
std::vector<Pmf> reduce_points(std::vector<Pmf> points) {
    points = dedupe_sorted(std::move(points));
    if (points.size() <= 1) return points;

    std::vector<bool> alive(points.size(), true);
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<std::vector<Rational>> generators;
        for (std::size_t j = 0; j < points.size(); ++j)
            if (alive[j] && j != i) generators.push_back(points[j].weights());
        if (in_convex_hull(generators, points[i].weights())) alive[i] = false;
    }

    std::vector<Pmf> out;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (alive[i]) out.push_back(std::move(points[i]));
    return out;
}

void check_value_bounds(const Space& space, std::size_t variable,
                        const std::vector<std::pair<Rational, Rational>>& bounds,
                        const char* what) {
    if (variable >= space.arity()) throw Error(std::string(what) + ": variable index out of range");
    if (bounds.size() != space.variable(variable).size())
        throw Error(std::string(what) + ": one bound pair per domain value required");
    Rational lower_total = 0, upper_total = 0;
    for (const auto& [lo, hi] : bounds) {
        if (lo < 0 || hi > 1 || lo > hi)
            throw Error(std::string(what) + ": bounds must satisfy 0 <= lower <= upper <= 1");
        lower_total += lo;
        upper_total += hi;
    }
    if (lower_total > 1 || upper_total < 1)
        throw InfeasibleSpecError(std::string(what) + ": bounds describe an empty evidence set");
}

} // namespace

// ---------------------------------------------------------------------------
// Types

CredalSet::CredalSet(SpacePtr space, std::vector<Pmf> generating_points)
    : space_(std::move(space)) {
    if (generating_points.empty()) throw Error("CredalSet: need at least one PMF");
    require_common_space(space_, generating_points, "CredalSet");
    extremes_ = reduce_points(std::move(generating_points));
}

CredalSet::CredalSet(trusted_tag, SpacePtr space, std::vector<Pmf> extreme_points)
    : space_(std::move(space)), extremes_(dedupe_sorted(std::move(extreme_points))) {}

CredalSet CredalSet::from_extreme_points(SpacePtr space, std::vector<Pmf> extreme_points) {
    if (extreme_points.empty()) throw Error("CredalSet: need at least one PMF");
    require_common_space(space, extreme_points, "CredalSet");
    return CredalSet(trusted_tag{}, std::move(space), std::move(extreme_points));
}

const Pmf& CredalSet::sharp() const {
    if (!is_sharp()) throw Error("credal set is not sharp (" +
                                 std::to_string(extremes_.size()) + " extreme points)");
    return extremes_.front();
}

IntervalSpec::IntervalSpec(SpacePtr space, std::vector<std::pair<Rational, Rational>> bounds)
    : space_(std::move(space)), bounds_(std::move(bounds)) {
    if (!space_) throw Error("IntervalSpec: null space");
    if (bounds_.size() != space_->world_count())
        throw Error("IntervalSpec: one bound pair per world required");
    Rational lower_total = 0, upper_total = 0;
    for (const auto& [lo, hi] : bounds_) {
        if (lo < 0 || hi > 1 || lo > hi)
            throw Error("IntervalSpec: bounds must satisfy 0 <= lower <= upper <= 1");
        lower_total += lo;
        upper_total += hi;
    }
    if (lower_total > 1 || upper_total < 1)
        throw InfeasibleSpecError("IntervalSpec: bounds describe an empty polytope");
}

CredalEvidence::CredalEvidence(SpacePtr space, std::size_t variable,
                               std::vector<std::pair<Rational, Rational>> bounds)
    : space_(std::move(space)), variable_(variable), bounds_(std::move(bounds)) {
    if (!space_) throw Error("CredalEvidence: null space");
    check_value_bounds(*space_, variable_, bounds_, "CredalEvidence");
}

bool CredalEvidence::is_sharp() const {
    return std::all_of(bounds_.begin(), bounds_.end(),
                       [](const auto& b) { return b.first == b.second; });
}

std::optional<std::size_t> CredalEvidence::degenerate_at() const {
    if (!is_sharp()) return std::nullopt;
    for (std::size_t i = 0; i < bounds_.size(); ++i)
        if (bounds_[i].first == 1) return i;
    return std::nullopt;
}

std::vector<MarginalEvidence> CredalEvidence::evidence_extremes() const {
    std::vector<MarginalEvidence> out;
    for (auto& vertex : capped_simplex_vertices(bounds_))
        out.emplace_back(space_, variable_, std::move(vertex));
    return out;
}

// ---------------------------------------------------------------------------
// Construction

CredalSet reduce(SpacePtr space, std::vector<Pmf> points) {
    return CredalSet(std::move(space), std::move(points));
}

CredalSet from_intervals(const IntervalSpec& spec) {
    std::vector<Pmf> vertices;
    for (auto& v : capped_simplex_vertices(spec.bounds()))
        vertices.emplace_back(spec.space(), std::move(v));
    return CredalSet::from_extreme_points(spec.space(), std::move(vertices));
}

// ---------------------------------------------------------------------------
// Envelopes

Rational lower_envelope(const CredalSet& k, const Formula& formula) {
    require_same_space(k.space(), formula.space(), "lower_envelope");
    const auto ext = extension_indices(formula, *k.space());
    bool first = true;
    Rational best;
    for (const Pmf& p : k.extremes()) {
        Rational value = 0;
        for (std::size_t idx : ext) value += p.weight(idx);
        if (first || value < best) best = value;
        first = false;
    }
    return best;
}

Rational upper_envelope(const CredalSet& k, const Formula& formula) {
    require_same_space(k.space(), formula.space(), "upper_envelope");
    const auto ext = extension_indices(formula, *k.space());
    bool first = true;
    Rational best;
    for (const Pmf& p : k.extremes()) {
        Rational value = 0;
        for (std::size_t idx : ext) value += p.weight(idx);
        if (first || value > best) best = value;
        first = false;
    }
    return best;
}

std::pair<Rational, Rational> conditional_envelopes(const CredalSet& k, const Formula& target,
                                                    const Formula& given) {
    require_same_space(k.space(), target.space(), "conditional_envelopes");
    require_same_space(k.space(), given.space(), "conditional_envelopes");
    const auto given_ext = extension_indices(given, *k.space());
    const auto both_ext = extension_indices(Formula::conjunction(target, given), *k.space());

    bool any = false;
    Rational lo, hi;
    for (const Pmf& p : k.extremes()) {
        Rational denom = 0;
        for (std::size_t idx : given_ext) denom += p.weight(idx);
        if (denom == 0) continue;
        Rational numer = 0;
        for (std::size_t idx : both_ext) numer += p.weight(idx);
        const Rational value = numer / denom;
        if (!any) {
            lo = hi = value;
            any = true;
        } else {
            if (value < lo) lo = value;
            if (value > hi) hi = value;
        }
    }
    if (!any)
        throw ConditioningUndefinedError("every extreme point assigns probability 0 to '" +
                                         to_string(given) + "'");
    return {lo, hi};
}

CredalSet conditional_cs(const CredalSet& k, const Formula& given) {
    std::vector<Pmf> conditioned;
    for (const Pmf& p : k.extremes())
        if (prob(p, given) > 0) conditioned.push_back(condition(p, given));
    if (conditioned.empty())
        throw ConditioningUndefinedError("every extreme point assigns probability 0 to '" +
                                         to_string(given) + "'");
    return CredalSet(k.space(), std::move(conditioned));
}

// ---------------------------------------------------------------------------
// Imaging operators

CredalSet credal_image(const CredalSet& k, const Formula& formula) {
    std::vector<Pmf> images;
    images.reserve(k.extremes().size());
    for (const Pmf& p : k.extremes()) images.push_back(image(p, formula));
    return CredalSet(k.space(), std::move(images));
}

CredalSet credal_marginal_jeffrey_image(const CredalSet& k, const MarginalEvidence& evidence) {
    std::vector<Pmf> adjusted;
    adjusted.reserve(k.extremes().size());
    for (const Pmf& p : k.extremes()) adjusted.push_back(marginal_jeffrey_image(p, evidence));
    return CredalSet(k.space(), std::move(adjusted));
}

CredalSet credal_adams_image(const CredalSet& k, const ConditionalEvidence& evidence,
                             bool coupled) {
    require_same_space(k.space(), evidence.space(), "credal_adams_image");
    const Space& space = *k.space();
    const std::size_t given_var = evidence.given_variable();
    const std::size_t given_val = evidence.given_value();
    const Formula given = Formula::atom(k.space(), given_var, given_val);
    if (lower_envelope(k, given) == 0)
        throw ConditioningUndefinedError(
            "Adams' imaging requires a positive lower envelope on '" + to_string(given) + "'");

    if (coupled) {
        std::vector<Pmf> adjusted;
        adjusted.reserve(k.extremes().size());
        for (const Pmf& p : k.extremes()) adjusted.push_back(adams_image(p, evidence));
        return CredalSet(k.space(), std::move(adjusted));
    }

    // Literal reading: the base belief and the image used for each evidence
    // value range over the extreme points independently. Combinations whose
    // total mass is not 1 are not belief states and are dropped; the coupled
    // combinations always survive, so the set is never empty.
    const std::size_t n_extremes = k.extremes().size();
    const std::size_t n_values = space.variable(evidence.variable()).size();

    std::vector<std::size_t> active_values;
    for (std::size_t v = 0; v < n_values; ++v)
        if (evidence.value_prob()[v] > 0) active_values.push_back(v);

    // image of every extreme on every active evidence value
    std::map<std::pair<std::size_t, std::size_t>, Pmf> images;
    for (std::size_t e = 0; e < n_extremes; ++e)
        for (std::size_t v : active_values)
            images.emplace(std::make_pair(e, v),
                           image(k.extremes()[e], Formula::atom(k.space(), evidence.variable(), v)));

    std::vector<Pmf> candidates;
    std::vector<std::size_t> choice(active_values.size(), 0);
    for (std::size_t base = 0; base < n_extremes; ++base) {
        std::fill(choice.begin(), choice.end(), 0);
        while (true) {
            std::vector<Rational> weights(space.world_count(), Rational(0));
            for (std::size_t i = 0; i < space.world_count(); ++i)
                if (space.world(i)[given_var] != given_val)
                    weights[i] = k.extremes()[base].weight(i);
            for (std::size_t a = 0; a < active_values.size(); ++a) {
                const Pmf& img = images.at({choice[a], active_values[a]});
                const Rational& c = evidence.value_prob()[active_values[a]];
                for (std::size_t i = 0; i < space.world_count(); ++i)
                    if (space.world(i)[given_var] == given_val) weights[i] += c * img.weight(i);
            }
            Rational total = 0;
            for (const auto& w : weights) total += w;
            if (total == 1) candidates.emplace_back(k.space(), std::move(weights));

            std::size_t pos = 0;
            while (pos < choice.size() && ++choice[pos] == n_extremes) choice[pos++] = 0;
            if (pos == choice.size()) break;
        }
    }
    return CredalSet(k.space(), std::move(candidates));
}

CredalSet credal_jeffrey_image(const CredalSet& k, const CredalEvidence& evidence) {
    require_same_space(k.space(), evidence.space(), "credal_jeffrey_image");
    std::vector<Pmf> adjusted;
    for (const MarginalEvidence& vertex : evidence.evidence_extremes())
        for (const Pmf& p : k.extremes()) adjusted.push_back(marginal_jeffrey_image(p, vertex));
    return CredalSet(k.space(), std::move(adjusted));
}

// ---------------------------------------------------------------------------
// Comparisons and marginals

bool cs_equivalent(const CredalSet& a, const CredalSet& b) {
    require_same_space(a.space(), b.space(), "cs_equivalent");
    return a.extremes() == b.extremes();
}

CredalSet marginal_cs(const CredalSet& k, const std::vector<std::size_t>& variables) {
    std::vector<Pmf> margins;
    margins.reserve(k.extremes().size());
    for (const Pmf& p : k.extremes()) margins.push_back(marginal(p, variables));
    return CredalSet(margins.front().space(), std::move(margins));
}

// ---------------------------------------------------------------------------
// Acceptance

namespace {

bool pmf_satisfies(const Pmf& p, const std::vector<ProbStatement>& statements) {
    for (const auto& st : statements) {
        const Rational value = prob(p, st.formula);
        switch (st.cmp) {
        case ProbStatement::Cmp::eq:
            if (value != st.bound) return false;
            break;
        case ProbStatement::Cmp::le:
            if (value > st.bound) return false;
            break;
        case ProbStatement::Cmp::ge:
            if (value < st.bound) return false;
            break;
        }
    }
    return true;
}

Acceptance trichotomy(std::size_t satisfied, std::size_t total) {
    if (satisfied == total) return Acceptance::accepted;
    if (satisfied == 0) return Acceptance::rejected;
    return Acceptance::neutral;
}

} // namespace

Acceptance satisfies_statements(const CredalSet& k, const std::vector<ProbStatement>& statements) {
    std::size_t satisfied = 0;
    for (const Pmf& p : k.extremes())
        if (pmf_satisfies(p, statements)) ++satisfied;
    return trichotomy(satisfied, k.extremes().size());
}

std::vector<ProbStatement> to_statements(const MarginalEvidence& evidence) {
    std::vector<ProbStatement> out;
    for (std::size_t v = 0; v < evidence.value_prob().size(); ++v)
        out.push_back({Formula::atom(evidence.space(), evidence.variable(), v),
                       ProbStatement::Cmp::eq, evidence.value_prob()[v]});
    return out;
}

std::vector<ProbStatement> to_statements(const CredalEvidence& evidence) {
    std::vector<ProbStatement> out;
    for (std::size_t v = 0; v < evidence.bounds().size(); ++v) {
        const Formula atom = Formula::atom(evidence.space(), evidence.variable(), v);
        out.push_back({atom, ProbStatement::Cmp::ge, evidence.bounds()[v].first});
        out.push_back({atom, ProbStatement::Cmp::le, evidence.bounds()[v].second});
    }
    return out;
}

Acceptance satisfies_evidence(const CredalSet& k, const MarginalEvidence& evidence) {
    return satisfies_statements(k, to_statements(evidence));
}

Acceptance satisfies_evidence(const CredalSet& k, const CredalEvidence& evidence) {
    return satisfies_statements(k, to_statements(evidence));
}

Acceptance satisfies_evidence(const CredalSet& k, const ConditionalEvidence& evidence) {
    require_same_space(k.space(), evidence.space(), "satisfies_evidence");
    const Formula given =
        Formula::atom(k.space(), evidence.given_variable(), evidence.given_value());
    std::size_t satisfied = 0;
    std::size_t conditionable = 0;
    for (const Pmf& p : k.extremes()) {
        if (prob(p, given) == 0) continue;
        ++conditionable;
        const Pmf cond = condition(p, given);
        bool ok = true;
        for (std::size_t v = 0; v < evidence.value_prob().size(); ++v) {
            if (prob(cond, Formula::atom(k.space(), evidence.variable(), v)) !=
                evidence.value_prob()[v]) {
                ok = false;
                break;
            }
        }
        if (ok) ++satisfied;
    }
    if (conditionable == 0)
        throw ConditioningUndefinedError("every extreme point assigns probability 0 to '" +
                                         to_string(given) + "'");
    return trichotomy(satisfied, conditionable);
}

} // namespace credalkit
