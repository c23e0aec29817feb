#include "credalkit/kinematics.hpp"

#include <algorithm>

namespace credalkit {

namespace {

std::string interval_text(const Rational& lo, const Rational& hi) {
    return "[" + to_exact_string(lo) + ", " + to_exact_string(hi) + "]";
}

std::string atom_text(const Space& space, std::size_t variable, std::size_t value) {
    return space.variable(variable).name() + "=" + space.variable(variable).domain()[value];
}

std::vector<std::size_t> all_but(std::size_t arity, std::initializer_list<std::size_t> removed) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < arity; ++i)
        if (std::find(removed.begin(), removed.end(), i) == removed.end()) out.push_back(i);
    return out;
}

} // namespace

bool KinematicsReport::all_hold() const {
    return std::none_of(conditions.begin(), conditions.end(),
                        [](const ConditionCheck& c) { return c.verdict == Verdict::fails; });
}

const ConditionCheck& KinematicsReport::condition(const std::string& id) const {
    for (const auto& c : conditions)
        if (c.id == id) return c;
    throw Error("no condition '" + id + "' in report");
}

bool PostulateReport::all_hold() const {
    return std::none_of(conditions.begin(), conditions.end(),
                        [](const ConditionCheck& c) { return c.verdict == Verdict::fails; });
}

const ConditionCheck& PostulateReport::condition(const std::string& id) const {
    for (const auto& c : conditions)
        if (c.id == id) return c;
    throw Error("no condition '" + id + "' in report");
}

std::vector<Formula> event_basis(const SpacePtr& space,
                                 const std::vector<std::size_t>& variables) {
    std::vector<Formula> out;
    // mixed-radix counter, one digit per variable: 0 = unconstrained,
    // d+1 = pinned to domain value d
    std::vector<std::size_t> digit(variables.size(), 0);
    while (true) {
        std::optional<Formula> conj;
        for (std::size_t i = 0; i < variables.size(); ++i) {
            if (digit[i] == 0) continue;
            Formula atom = Formula::atom(space, variables[i], digit[i] - 1);
            conj = conj ? Formula::conjunction(std::move(*conj), std::move(atom))
                        : std::move(atom);
        }
        out.push_back(conj ? std::move(*conj) : Formula::top(space));

        std::size_t pos = variables.size();
        while (pos > 0) {
            --pos;
            if (++digit[pos] <= space->variable(variables[pos]).size()) break;
            digit[pos] = 0;
            if (pos == 0) return out;
        }
        if (variables.empty()) return out;
    }
}

// ---------------------------------------------------------------------------
// PK / CPK

KinematicsReport check_pk(const Pmf& before, const Pmf& after,
                          const MarginalEvidence& evidence) {
    require_same_space(before.space(), after.space(), "check_pk");
    require_same_space(before.space(), evidence.space(), "check_pk");
    const SpacePtr& space = before.space();
    const std::size_t var = evidence.variable();
    KinematicsReport report{"PK", {}, {}};

    // PK1: conditionals given each evidence value are preserved
    {
        const auto basis = event_basis(space, all_but(space->arity(), {var}));
        ConditionCheck check{"PK1", Verdict::holds, ""};
        bool any_checked = false;
        for (std::size_t v = 0; v < space->variable(var).size() && check.verdict == Verdict::holds;
             ++v) {
            const Formula given = Formula::atom(space, var, v);
            const Rational before_mass = prob(before, given);
            const Rational after_mass = prob(after, given);
            if (before_mass == 0 || after_mass == 0) {
                report.notes.push_back("PK1: skipped " + atom_text(*space, var, v) +
                                       " (zero probability on one side)");
                continue;
            }
            any_checked = true;
            for (const Formula& alpha : basis) {
                const Formula joint = Formula::conjunction(alpha, given);
                const Rational lhs = prob(after, joint) / after_mass;
                const Rational rhs = prob(before, joint) / before_mass;
                if (lhs != rhs) {
                    check.verdict = Verdict::fails;
                    check.detail = "given " + atom_text(*space, var, v) + ", event '" +
                                   to_string(alpha) + "': before " + to_exact_string(rhs) +
                                   ", after " + to_exact_string(lhs);
                    break;
                }
            }
        }
        if (!any_checked && check.verdict == Verdict::holds) {
            check.verdict = Verdict::not_applicable;
            check.detail = "no evidence value is conditionable on both sides";
        }
        report.conditions.push_back(std::move(check));
    }

    // PK2: adjusted marginal equals the evidence
    {
        ConditionCheck check{"PK2", Verdict::holds, ""};
        for (std::size_t v = 0; v < space->variable(var).size(); ++v) {
            const Rational got = prob(after, Formula::atom(space, var, v));
            if (got != evidence.value_prob()[v]) {
                check.verdict = Verdict::fails;
                check.detail = atom_text(*space, var, v) + ": evidence " +
                               to_exact_string(evidence.value_prob()[v]) + ", marginal " +
                               to_exact_string(got);
                break;
            }
        }
        report.conditions.push_back(std::move(check));
    }
    return report;
}

KinematicsReport check_cpk(const Pmf& before, const Pmf& after,
                           const ConditionalEvidence& evidence) {
    require_same_space(before.space(), after.space(), "check_cpk");
    require_same_space(before.space(), evidence.space(), "check_cpk");
    const SpacePtr& space = before.space();
    const std::size_t var = evidence.variable();
    const std::size_t given_var = evidence.given_variable();
    const std::size_t given_val = evidence.given_value();
    const Formula given = Formula::atom(space, given_var, given_val);
    if (prob(before, given) == 0)
        throw ConditioningUndefinedError("check_cpk: prior probability of '" + to_string(given) +
                                         "' is 0");
    KinematicsReport report{"CPK", {}, {}};

    // CPK1: conditionals given (x, y) are preserved
    {
        const auto basis = event_basis(space, all_but(space->arity(), {var, given_var}));
        ConditionCheck check{"CPK1", Verdict::holds, ""};
        bool any_checked = false;
        for (std::size_t v = 0; v < space->variable(var).size() && check.verdict == Verdict::holds;
             ++v) {
            const Formula slice =
                Formula::conjunction(Formula::atom(space, var, v), given);
            const Rational before_mass = prob(before, slice);
            const Rational after_mass = prob(after, slice);
            if (before_mass == 0 || after_mass == 0) {
                report.notes.push_back("CPK1: skipped " + atom_text(*space, var, v) +
                                       " (zero probability on one side)");
                continue;
            }
            any_checked = true;
            for (const Formula& alpha : basis) {
                const Formula joint = Formula::conjunction(alpha, slice);
                const Rational lhs = prob(after, joint) / after_mass;
                const Rational rhs = prob(before, joint) / before_mass;
                if (lhs != rhs) {
                    check.verdict = Verdict::fails;
                    check.detail = "given " + atom_text(*space, var, v) + " and " +
                                   atom_text(*space, given_var, given_val) + ", event '" +
                                   to_string(alpha) + "': before " + to_exact_string(rhs) +
                                   ", after " + to_exact_string(lhs);
                    break;
                }
            }
        }
        if (!any_checked && check.verdict == Verdict::holds) {
            check.verdict = Verdict::not_applicable;
            check.detail = "no evidence value is conditionable on both sides";
        }
        report.conditions.push_back(std::move(check));
    }

    // CPK2: conditionals given the other values of the conditioning variable
    {
        const auto basis = event_basis(space, all_but(space->arity(), {given_var}));
        ConditionCheck check{"CPK2", Verdict::holds, ""};
        for (std::size_t y = 0;
             y < space->variable(given_var).size() && check.verdict == Verdict::holds; ++y) {
            if (y == given_val) continue;
            const Formula other = Formula::atom(space, given_var, y);
            const Rational before_mass = prob(before, other);
            const Rational after_mass = prob(after, other);
            if (before_mass == 0) {
                report.notes.push_back("CPK2: skipped " + atom_text(*space, given_var, y) +
                                       " (zero prior probability)");
                continue;
            }
            if (after_mass == 0) {
                check.verdict = Verdict::fails;
                check.detail = atom_text(*space, given_var, y) +
                               ": adjusted probability is 0, conditional lost";
                break;
            }
            for (const Formula& alpha : basis) {
                const Formula joint = Formula::conjunction(alpha, other);
                const Rational lhs = prob(after, joint) / after_mass;
                const Rational rhs = prob(before, joint) / before_mass;
                if (lhs != rhs) {
                    check.verdict = Verdict::fails;
                    check.detail = "given " + atom_text(*space, given_var, y) + ", event '" +
                                   to_string(alpha) + "': before " + to_exact_string(rhs) +
                                   ", after " + to_exact_string(lhs);
                    break;
                }
            }
        }
        report.conditions.push_back(std::move(check));
    }

    // CPK3: the conditioning variable's marginal is preserved
    {
        ConditionCheck check{"CPK3", Verdict::holds, ""};
        for (std::size_t y = 0; y < space->variable(given_var).size(); ++y) {
            const Formula atom = Formula::atom(space, given_var, y);
            const Rational lhs = prob(after, atom);
            const Rational rhs = prob(before, atom);
            if (lhs != rhs) {
                check.verdict = Verdict::fails;
                check.detail = atom_text(*space, given_var, y) + ": before " +
                               to_exact_string(rhs) + ", after " + to_exact_string(lhs);
                break;
            }
        }
        report.conditions.push_back(std::move(check));
    }

    // CPK4: the adjusted conditional equals the evidence
    {
        ConditionCheck check{"CPK4", Verdict::holds, ""};
        const Rational after_mass = prob(after, given);
        if (after_mass == 0) {
            check.verdict = Verdict::fails;
            check.detail = "adjusted probability of '" + to_string(given) + "' is 0";
        } else {
            for (std::size_t v = 0; v < space->variable(var).size(); ++v) {
                const Rational got =
                    prob(after, Formula::conjunction(Formula::atom(space, var, v), given)) /
                    after_mass;
                if (got != evidence.value_prob()[v]) {
                    check.verdict = Verdict::fails;
                    check.detail = atom_text(*space, var, v) + ": evidence " +
                                   to_exact_string(evidence.value_prob()[v]) + ", conditional " +
                                   to_exact_string(got);
                    break;
                }
            }
        }
        report.conditions.push_back(std::move(check));
    }
    return report;
}

// ---------------------------------------------------------------------------
// IK / ICK

namespace {

std::vector<std::size_t> all_variables(const Space& space) {
    std::vector<std::size_t> out(space.arity());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
}

std::pair<Rational, Rational> envelope_pair(const CredalSet& k, const Formula& formula) {
    return {lower_envelope(k, formula), upper_envelope(k, formula)};
}

bool interval_includes(const std::pair<Rational, Rational>& outer,
                       const std::pair<Rational, Rational>& inner) {
    return outer.first <= inner.first && inner.second <= outer.second;
}

std::vector<std::vector<Rational>> extreme_weight_vectors(const CredalSet& k) {
    std::vector<std::vector<Rational>> out;
    out.reserve(k.extremes().size());
    for (const Pmf& p : k.extremes()) out.push_back(p.weights());
    return out;
}

} // namespace

KinematicsReport check_ik(const CredalSet& before, const CredalSet& after,
                          const CredalEvidence& evidence, bool strict) {
    require_same_space(before.space(), after.space(), "check_ik");
    require_same_space(before.space(), evidence.space(), "check_ik");
    const SpacePtr& space = before.space();
    const std::size_t var = evidence.variable();
    KinematicsReport report{"IK", {}, {}};

    // IK1: conditioning the adjusted set on each evidence value covers (or,
    // strictly, matches) the envelopes of the prior's image on that value
    {
        const auto basis = event_basis(space, all_variables(*space));
        ConditionCheck check{"IK1", Verdict::holds, ""};
        bool any_checked = false;
        for (std::size_t v = 0; v < space->variable(var).size() && check.verdict == Verdict::holds;
             ++v) {
            const Formula given = Formula::atom(space, var, v);
            if (upper_envelope(after, given) == 0) {
                report.notes.push_back("IK1: skipped " + atom_text(*space, var, v) +
                                       " (adjusted upper probability 0)");
                continue;
            }
            any_checked = true;
            const CredalSet imaged = credal_image(before, given);
            for (const Formula& alpha : basis) {
                const auto cond = conditional_envelopes(after, alpha, given);
                const auto img = envelope_pair(imaged, alpha);
                const bool ok = strict ? cond == img : interval_includes(cond, img);
                if (!ok) {
                    check.verdict = Verdict::fails;
                    check.detail = "given " + atom_text(*space, var, v) + ", event '" +
                                   to_string(alpha) + "': conditional " +
                                   interval_text(cond.first, cond.second) + ", image " +
                                   interval_text(img.first, img.second);
                    break;
                }
            }
        }
        if (!any_checked && check.verdict == Verdict::holds) {
            check.verdict = Verdict::not_applicable;
            check.detail = "no evidence value has positive adjusted probability";
        }
        report.conditions.push_back(std::move(check));
    }

    // IK2: the adjusted marginal satisfies the evidence (the evidence set is
    // contained in the adjusted marginal set)
    {
        ConditionCheck check{"IK2", Verdict::holds, ""};
        const CredalSet margin = marginal_cs(after, {var});
        const auto gens = extreme_weight_vectors(margin);
        for (const MarginalEvidence& vertex : evidence.evidence_extremes()) {
            if (!in_convex_hull(gens, vertex.value_prob())) {
                check.verdict = Verdict::fails;
                std::string text;
                for (std::size_t v = 0; v < vertex.value_prob().size(); ++v) {
                    if (v) text += ", ";
                    text += to_exact_string(vertex.value_prob()[v]);
                }
                check.detail = "evidence point (" + text + ") lies outside the adjusted marginal";
                break;
            }
        }
        report.conditions.push_back(std::move(check));
    }

    // IK3: degenerate evidence must reproduce the image's marginal
    {
        ConditionCheck check{"IK3", Verdict::holds, ""};
        if (auto v = evidence.degenerate_at()) {
            const Formula given = Formula::atom(space, var, *v);
            const CredalSet imaged = credal_image(before, given);
            if (!cs_equivalent(marginal_cs(after, {var}), marginal_cs(imaged, {var}))) {
                check.verdict = Verdict::fails;
                check.detail = "adjusted marginal differs from the image on " +
                               atom_text(*space, var, *v);
            }
        } else {
            check.verdict = Verdict::not_applicable;
            check.detail = "evidence is not degenerate";
        }
        report.conditions.push_back(std::move(check));
    }
    return report;
}

KinematicsReport check_ick(const CredalSet& before, const CredalSet& after,
                           const ConditionalEvidence& evidence, bool strict) {
    require_same_space(before.space(), after.space(), "check_ick");
    require_same_space(before.space(), evidence.space(), "check_ick");
    const SpacePtr& space = before.space();
    const std::size_t var = evidence.variable();
    const std::size_t given_var = evidence.given_variable();
    const std::size_t given_val = evidence.given_value();
    const Formula given = Formula::atom(space, given_var, given_val);
    if (lower_envelope(before, given) == 0)
        throw ConditioningUndefinedError("check_ick: lower envelope of '" + to_string(given) +
                                         "' must be positive");
    KinematicsReport report{"ICK", {}, {}};

    // ICK1: conditioning the adjusted set on (x, y) covers the image on x
    // conditioned on y
    {
        const auto basis = event_basis(space, all_variables(*space));
        ConditionCheck check{"ICK1", Verdict::holds, ""};
        bool any_checked = false;
        for (std::size_t v = 0; v < space->variable(var).size() && check.verdict == Verdict::holds;
             ++v) {
            const Formula slice = Formula::conjunction(Formula::atom(space, var, v), given);
            if (upper_envelope(after, slice) == 0) {
                report.notes.push_back("ICK1: skipped " + atom_text(*space, var, v) +
                                       " (adjusted upper probability 0)");
                continue;
            }
            const CredalSet imaged = credal_image(before, Formula::atom(space, var, v));
            if (upper_envelope(imaged, given) == 0) {
                report.notes.push_back("ICK1: skipped " + atom_text(*space, var, v) +
                                       " (image assigns probability 0 to the event)");
                continue;
            }
            any_checked = true;
            for (const Formula& alpha : basis) {
                const auto cond = conditional_envelopes(after, alpha, slice);
                const auto img = conditional_envelopes(imaged, alpha, given);
                const bool ok = strict ? cond == img : interval_includes(cond, img);
                if (!ok) {
                    check.verdict = Verdict::fails;
                    check.detail = "given " + atom_text(*space, var, v) + " and " +
                                   atom_text(*space, given_var, given_val) + ", event '" +
                                   to_string(alpha) + "': conditional " +
                                   interval_text(cond.first, cond.second) + ", image " +
                                   interval_text(img.first, img.second);
                    break;
                }
            }
        }
        if (!any_checked && check.verdict == Verdict::holds) {
            check.verdict = Verdict::not_applicable;
            check.detail = "no evidence value is checkable";
        }
        report.conditions.push_back(std::move(check));
    }

    // ICK2: conditionals given the other conditioning values are equivalent
    {
        ConditionCheck check{"ICK2", Verdict::holds, ""};
        for (std::size_t y = 0;
             y < space->variable(given_var).size() && check.verdict == Verdict::holds; ++y) {
            if (y == given_val) continue;
            const Formula other = Formula::atom(space, given_var, y);
            const bool before_ok = upper_envelope(before, other) > 0;
            const bool after_ok = upper_envelope(after, other) > 0;
            if (!before_ok && !after_ok) {
                report.notes.push_back("ICK2: skipped " + atom_text(*space, given_var, y) +
                                       " (zero upper probability on both sides)");
                continue;
            }
            if (before_ok != after_ok) {
                check.verdict = Verdict::fails;
                check.detail = atom_text(*space, given_var, y) +
                               ": conditionable on one side only";
                break;
            }
            if (!cs_equivalent(conditional_cs(after, other), conditional_cs(before, other))) {
                check.verdict = Verdict::fails;
                check.detail = "conditional set given " + atom_text(*space, given_var, y) +
                               " changed";
            }
        }
        report.conditions.push_back(std::move(check));
    }

    // ICK3: the conditioning variable's marginal set is equivalent
    {
        ConditionCheck check{"ICK3", Verdict::holds, ""};
        if (!cs_equivalent(marginal_cs(after, {given_var}), marginal_cs(before, {given_var}))) {
            check.verdict = Verdict::fails;
            check.detail = "marginal set of " + space->variable(given_var).name() + " changed";
        }
        report.conditions.push_back(std::move(check));
    }

    // ICK4: the evidence lies inside the adjusted conditional set
    {
        ConditionCheck check{"ICK4", Verdict::holds, ""};
        if (upper_envelope(after, given) == 0) {
            check.verdict = Verdict::fails;
            check.detail = "adjusted upper probability of '" + to_string(given) + "' is 0";
        } else {
            const CredalSet cond_margin = marginal_cs(conditional_cs(after, given), {var});
            if (!in_convex_hull(extreme_weight_vectors(cond_margin), evidence.value_prob())) {
                check.verdict = Verdict::fails;
                check.detail = "evidence lies outside the adjusted conditional set";
            }
        }
        report.conditions.push_back(std::move(check));
    }

    // ICK5: degenerate evidence must reproduce the image's marginal
    {
        ConditionCheck check{"ICK5", Verdict::holds, ""};
        if (auto v = evidence.degenerate_at()) {
            if (upper_envelope(after, given) == 0) {
                check.verdict = Verdict::fails;
                check.detail = "adjusted upper probability of '" + to_string(given) + "' is 0";
            } else {
                const CredalSet imaged = credal_image(before, Formula::atom(space, var, *v));
                const CredalSet cond_margin = marginal_cs(conditional_cs(after, given), {var});
                if (!cs_equivalent(cond_margin, marginal_cs(imaged, {var}))) {
                    check.verdict = Verdict::fails;
                    check.detail = "adjusted conditional differs from the image on " +
                                   atom_text(*space, var, *v);
                }
            }
        } else {
            check.verdict = Verdict::not_applicable;
            check.detail = "evidence is not degenerate";
        }
        report.conditions.push_back(std::move(check));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Named operators

namespace {

const MarginalEvidence& as_marginal(const Evidence& e, const std::string& op) {
    if (const auto* m = std::get_if<MarginalEvidence>(&e)) return *m;
    throw UsageError("operator '" + op + "' needs marginal evidence");
}

const ConditionalEvidence& as_conditional(const Evidence& e, const std::string& op) {
    if (const auto* c = std::get_if<ConditionalEvidence>(&e)) return *c;
    throw UsageError("operator '" + op + "' needs conditional evidence");
}

const Pmf& as_sharp(const CredalSet& k, const std::string& op) {
    if (!k.is_sharp())
        throw UsageError("operator '" + op + "' needs a sharp belief state, got " +
                         std::to_string(k.extremes().size()) + " extreme points");
    return k.sharp();
}

Formula degenerate_event(const MarginalEvidence& evidence, const std::string& op) {
    if (auto v = evidence.degenerate_at())
        return Formula::atom(evidence.space(), evidence.variable(), *v);
    throw UsageError("operator '" + op +
                     "' needs degenerate marginal evidence (probability 1 on one value)");
}

CredalEvidence as_credal(const Evidence& e, const std::string& op) {
    if (const auto* c = std::get_if<CredalEvidence>(&e)) return *c;
    if (const auto* m = std::get_if<MarginalEvidence>(&e)) {
        std::vector<std::pair<Rational, Rational>> bounds;
        bounds.reserve(m->value_prob().size());
        for (const auto& c : m->value_prob()) bounds.emplace_back(c, c);
        return CredalEvidence(m->space(), m->variable(), std::move(bounds));
    }
    throw UsageError("operator '" + op + "' needs marginal or credal evidence");
}

} // namespace

AdjustmentOp standard_operator(const std::string& name, bool coupled) {
    if (name == "condition")
        return {name, [](const CredalSet& k, const Evidence& e) {
                    const auto& ev = as_marginal(e, "condition");
                    const Pmf conditioned =
                        condition(as_sharp(k, "condition"), degenerate_event(ev, "condition"));
                    return CredalSet::from_extreme_points(k.space(), {conditioned});
                }};
    if (name == "jeffrey")
        return {name, [](const CredalSet& k, const Evidence& e) {
                    const Pmf revised =
                        jeffrey_revise(as_sharp(k, "jeffrey"), as_marginal(e, "jeffrey"));
                    return CredalSet::from_extreme_points(k.space(), {revised});
                }};
    if (name == "adams")
        return {name, [](const CredalSet& k, const Evidence& e) {
                    const Pmf revised =
                        adams_revise(as_sharp(k, "adams"), as_conditional(e, "adams"));
                    return CredalSet::from_extreme_points(k.space(), {revised});
                }};
    if (name == "image")
        return {name, [](const CredalSet& k, const Evidence& e) {
                    return credal_image(k, degenerate_event(as_marginal(e, "image"), "image"));
                }};
    if (name == "jeffrey-image")
        return {name, [](const CredalSet& k, const Evidence& e) {
                    return credal_marginal_jeffrey_image(k, as_marginal(e, "jeffrey-image"));
                }};
    if (name == "adams-image")
        return {name, [coupled](const CredalSet& k, const Evidence& e) {
                    return credal_adams_image(k, as_conditional(e, "adams-image"), coupled);
                }};
    if (name == "credal-jeffrey-image")
        return {name, [](const CredalSet& k, const Evidence& e) {
                    return credal_jeffrey_image(k, as_credal(e, "credal-jeffrey-image"));
                }};
    if (name == "identity")
        return {name, [](const CredalSet& k, const Evidence&) { return k; }};
    throw UsageError("unknown operator '" + name + "'");
}

// ---------------------------------------------------------------------------
// KM postulates

namespace {

struct EvidenceView {
    std::size_t variable;
    std::optional<std::pair<std::size_t, std::size_t>> given; // (variable, value)
};

EvidenceView view_of(const Evidence& e) {
    if (const auto* m = std::get_if<MarginalEvidence>(&e)) return {m->variable(), std::nullopt};
    if (const auto* c = std::get_if<ConditionalEvidence>(&e))
        return {c->variable(), std::make_pair(c->given_variable(), c->given_value())};
    const auto& cr = std::get<CredalEvidence>(e);
    return {cr.variable(), std::nullopt};
}

SpacePtr space_of(const Evidence& e) {
    return std::visit([](const auto& ev) { return ev.space(); }, e);
}

/// Does the credal set contain the full evidence set, in the marginal (or
/// conditional) coordinates the evidence talks about?
Verdict evidence_contained(const CredalSet& k, const Evidence& e, std::string& detail) {
    const EvidenceView view = view_of(e);
    std::vector<std::vector<Rational>> gens;
    if (view.given) {
        const Formula given = Formula::atom(k.space(), view.given->first, view.given->second);
        if (upper_envelope(k, given) == 0) {
            detail = "upper probability of '" + to_string(given) + "' is 0";
            return Verdict::fails;
        }
        gens = extreme_weight_vectors(marginal_cs(conditional_cs(k, given), {view.variable}));
    } else {
        gens = extreme_weight_vectors(marginal_cs(k, {view.variable}));
    }

    std::vector<std::vector<Rational>> targets;
    if (const auto* m = std::get_if<MarginalEvidence>(&e)) {
        targets.push_back(m->value_prob());
    } else if (const auto* c = std::get_if<ConditionalEvidence>(&e)) {
        targets.push_back(c->value_prob());
    } else {
        for (const MarginalEvidence& vertex : std::get<CredalEvidence>(e).evidence_extremes())
            targets.push_back(vertex.value_prob());
    }
    for (const auto& t : targets) {
        if (!in_convex_hull(gens, t)) {
            std::string text;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) text += ", ";
                text += to_exact_string(t[i]);
            }
            detail = "evidence point (" + text + ") not contained";
            return Verdict::fails;
        }
    }
    return Verdict::holds;
}

bool pmf_satisfies_evidence(const Pmf& p, const Evidence& e) {
    const EvidenceView view = view_of(e);
    std::vector<Rational> coords;
    const SpacePtr& space = p.space();
    if (view.given) {
        const Formula given = Formula::atom(space, view.given->first, view.given->second);
        if (prob(p, given) == 0) return false;
        const Pmf cond = condition(p, given);
        for (std::size_t v = 0; v < space->variable(view.variable).size(); ++v)
            coords.push_back(prob(cond, Formula::atom(space, view.variable, v)));
    } else {
        for (std::size_t v = 0; v < space->variable(view.variable).size(); ++v)
            coords.push_back(prob(p, Formula::atom(space, view.variable, v)));
    }
    if (const auto* m = std::get_if<MarginalEvidence>(&e)) return coords == m->value_prob();
    if (const auto* c = std::get_if<ConditionalEvidence>(&e)) return coords == c->value_prob();
    const auto& cr = std::get<CredalEvidence>(e);
    for (std::size_t v = 0; v < coords.size(); ++v)
        if (coords[v] < cr.bounds()[v].first || coords[v] > cr.bounds()[v].second) return false;
    return true;
}

/// Re-presentation of the same belief set: duplicated, reordered and padded
/// with interior points. Operators satisfying KM4 must not notice.
CredalSet re_present(const CredalSet& k) {
    std::vector<Pmf> points(k.extremes().rbegin(), k.extremes().rend());
    points.push_back(k.extremes().front());
    if (k.extremes().size() >= 2)
        points.push_back(mix(Rational(1, 2), k.extremes().front(), k.extremes().back()));
    return CredalSet(k.space(), std::move(points));
}

/// An equivalent spelling of the same evidence; credal bounds are tightened
/// to their reachable values.
Evidence re_present(const Evidence& e) {
    if (const auto* cr = std::get_if<CredalEvidence>(&e)) {
        std::vector<std::pair<Rational, Rational>> bounds(cr->bounds().size(),
                                                          {Rational(1), Rational(0)});
        for (const MarginalEvidence& vertex : cr->evidence_extremes()) {
            for (std::size_t v = 0; v < bounds.size(); ++v) {
                bounds[v].first = std::min(bounds[v].first, vertex.value_prob()[v]);
                bounds[v].second = std::max(bounds[v].second, vertex.value_prob()[v]);
            }
        }
        return CredalEvidence(cr->space(), cr->variable(), std::move(bounds));
    }
    return e;
}

struct Conjunction {
    std::optional<Evidence> evidence;
    std::string reason; // set when evidence is empty
};

Conjunction conjoin(const Evidence& a, const Evidence& b) {
    const EvidenceView va = view_of(a);
    const EvidenceView vb = view_of(b);
    if (va.variable != vb.variable || va.given != vb.given)
        return {std::nullopt, "evidence statements talk about different events"};

    if (va.given) {
        const auto& ca = std::get<ConditionalEvidence>(a);
        if (!std::holds_alternative<ConditionalEvidence>(b))
            return {std::nullopt, "evidence statements have different kinds"};
        const auto& cb = std::get<ConditionalEvidence>(b);
        if (ca.value_prob() == cb.value_prob()) return {Evidence(ca), ""};
        return {std::nullopt, "conjunction is unsatisfiable"};
    }

    // marginal and credal evidence conjoin as interval intersections
    auto bounds_of = [](const Evidence& e) {
        std::vector<std::pair<Rational, Rational>> bounds;
        if (const auto* m = std::get_if<MarginalEvidence>(&e)) {
            for (const auto& c : m->value_prob()) bounds.emplace_back(c, c);
        } else {
            bounds = std::get<CredalEvidence>(e).bounds();
        }
        return bounds;
    };
    const auto ba = bounds_of(a);
    const auto bb = bounds_of(b);
    std::vector<std::pair<Rational, Rational>> merged(ba.size());
    Rational lower_total = 0, upper_total = 0;
    for (std::size_t v = 0; v < ba.size(); ++v) {
        merged[v] = {std::max(ba[v].first, bb[v].first), std::min(ba[v].second, bb[v].second)};
        if (merged[v].first > merged[v].second)
            return {std::nullopt, "conjunction is unsatisfiable"};
        lower_total += merged[v].first;
        upper_total += merged[v].second;
    }
    if (lower_total > 1 || upper_total < 1)
        return {std::nullopt, "conjunction is unsatisfiable"};
    return {Evidence(CredalEvidence(space_of(a), va.variable, std::move(merged))), ""};
}

} // namespace

PostulateReport check_km_with(const CredalSet& k, const Evidence& evidence,
                              const AdjustmentOp& op, const std::optional<CredalSet>& result,
                              const std::optional<Evidence>& aux) {
    require_same_space(k.space(), space_of(evidence), "check_km");
    PostulateReport report;
    report.notes.push_back("KM5/KM6 use the standard conjunction postulates; "
                           "slice membership is checked on extreme points");

    // KM1: the outcome satisfies the evidence
    if (result) {
        std::string detail;
        const Verdict v = evidence_contained(*result, evidence, detail);
        report.conditions.push_back({"KM1", v, detail});
    } else {
        report.conditions.push_back({"KM1", Verdict::not_applicable, "operator failed"});
    }

    // KM2: evidence already consistent with the belief set means adjustment
    // must not move it
    {
        std::string detail;
        if (evidence_contained(k, evidence, detail) != Verdict::holds) {
            report.conditions.push_back(
                {"KM2", Verdict::not_applicable, "prior does not satisfy the evidence"});
        } else if (!result) {
            report.conditions.push_back({"KM2", Verdict::not_applicable, "operator failed"});
        } else if (cs_equivalent(*result, k)) {
            report.conditions.push_back({"KM2", Verdict::holds, ""});
        } else {
            report.conditions.push_back(
                {"KM2", Verdict::fails,
                 "prior satisfies the evidence but the adjusted set differs (" +
                     std::to_string(k.extremes().size()) + " vs " +
                     std::to_string(result->extremes().size()) + " extreme points)"});
        }
    }

    // KM3: satisfiable evidence must produce a consistent outcome. Evidence
    // values are validated at construction, so satisfiability is given.
    if (result) {
        report.conditions.push_back({"KM3", Verdict::holds, ""});
    } else {
        report.conditions.push_back({"KM3", Verdict::fails, "operator produced no belief set"});
    }

    // KM4: equivalent presentations of belief and evidence adjust equally
    if (result) {
        try {
            const CredalSet base = op.apply(k, evidence);
            const CredalSet other = op.apply(re_present(k), re_present(evidence));
            if (cs_equivalent(base, other)) {
                report.conditions.push_back({"KM4", Verdict::holds, ""});
            } else {
                report.conditions.push_back(
                    {"KM4", Verdict::fails, "re-presented inputs produced a different set"});
            }
        } catch (const Error& err) {
            report.conditions.push_back(
                {"KM4", Verdict::fails, std::string("operator failed on re-presentation: ") +
                                            err.what()});
        }
    } else {
        report.conditions.push_back({"KM4", Verdict::not_applicable, "operator failed"});
    }

    // KM5 / KM6: conjunction postulates
    if (!aux) {
        report.conditions.push_back({"KM5", Verdict::not_applicable, "no auxiliary evidence"});
        report.conditions.push_back({"KM6", Verdict::not_applicable, "no auxiliary evidence"});
        return report;
    }
    if (!result) {
        report.conditions.push_back({"KM5", Verdict::not_applicable, "operator failed"});
        report.conditions.push_back({"KM6", Verdict::not_applicable, "operator failed"});
        return report;
    }
    const Conjunction conj = conjoin(evidence, *aux);
    if (!conj.evidence) {
        report.conditions.push_back({"KM5", Verdict::not_applicable, conj.reason});
        report.conditions.push_back({"KM6", Verdict::not_applicable, conj.reason});
        return report;
    }
    std::optional<CredalSet> adjusted_conj;
    try {
        adjusted_conj = op.apply(k, *conj.evidence);
    } catch (const Error& err) {
        const std::string reason = std::string("operator failed on the conjunction: ") + err.what();
        report.conditions.push_back({"KM5", Verdict::not_applicable, reason});
        report.conditions.push_back({"KM6", Verdict::not_applicable, reason});
        return report;
    }

    std::vector<const Pmf*> satisfying;
    for (const Pmf& p : result->extremes())
        if (pmf_satisfies_evidence(p, *aux)) satisfying.push_back(&p);

    {
        ConditionCheck check{"KM5", Verdict::holds, ""};
        if (satisfying.empty()) {
            check.detail = "no adjusted extreme point satisfies the auxiliary evidence";
        } else {
            const auto gens = extreme_weight_vectors(*adjusted_conj);
            for (const Pmf* p : satisfying) {
                if (!in_convex_hull(gens, p->weights())) {
                    check.verdict = Verdict::fails;
                    check.detail = "a restricted extreme point escapes the conjunctive adjustment";
                    break;
                }
            }
        }
        report.conditions.push_back(std::move(check));
    }
    {
        ConditionCheck check{"KM6", Verdict::not_applicable,
                             "no adjusted extreme point satisfies the auxiliary evidence"};
        if (!satisfying.empty()) {
            check.verdict = Verdict::holds;
            check.detail = "";
            const auto gens = extreme_weight_vectors(*result);
            for (const Pmf& q : adjusted_conj->extremes()) {
                if (!in_convex_hull(gens, q.weights()) || !pmf_satisfies_evidence(q, *aux)) {
                    check.verdict = Verdict::fails;
                    check.detail = "the conjunctive adjustment leaves the restricted set";
                    break;
                }
            }
        }
        report.conditions.push_back(std::move(check));
    }
    return report;
}

PostulateReport check_km(const CredalSet& k, const Evidence& evidence, const AdjustmentOp& op,
                         const std::optional<Evidence>& aux) {
    std::optional<CredalSet> result;
    try {
        result = op.apply(k, evidence);
    } catch (const UsageError&) {
        throw; // wrong pairing is a caller mistake, not a KM verdict
    } catch (const Error&) {
        // operator preconditions failed: KM3 records the failure
    }
    return check_km_with(k, evidence, op, result, aux);
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string render_condition(const ConditionCheck& c) {
    switch (c.verdict) {
    case Verdict::holds: return c.id + ": holds";
    case Verdict::fails:
        return c.id + ": FAILS" + (c.detail.empty() ? "" : " (" + c.detail + ")");
    case Verdict::not_applicable:
        return c.id + ": not-applicable" + (c.detail.empty() ? "" : " (" + c.detail + ")");
    }
    return c.id + ": ?";
}

} // namespace

std::vector<std::string> render_lines(const KinematicsReport& report) {
    std::vector<std::string> out;
    for (const auto& c : report.conditions) out.push_back(render_condition(c));
    for (const auto& n : report.notes) out.push_back("note: " + n);
    return out;
}

std::vector<std::string> render_lines(const PostulateReport& report) {
    std::vector<std::string> out;
    for (const auto& c : report.conditions) out.push_back(render_condition(c));
    for (const auto& n : report.notes) out.push_back("note: " + n);
    return out;
}

} // namespace credalkit
