#pragma once

#include <utility>
#include <vector>

#include "credalkit/sharp.hpp"

namespace credalkit {

/// Exact membership test: is `point` a convex combination of `generators`?
/// Decided by phase-one simplex over rationals; no tolerances involved.
bool in_convex_hull(const std::vector<std::vector<Rational>>& generators,
                    const std::vector<Rational>& point);

/// All vertices of { p : lower <= p <= upper, sum(p) = 1 }, deduplicated and
/// sorted. Dimensions above 16 are refused (SizeLimitError); an empty
/// polytope raises InfeasibleSpecError.
std::vector<std::vector<Rational>>
capped_simplex_vertices(const std::vector<std::pair<Rational, Rational>>& bounds);

/// An imprecise belief state: the convex hull of finitely many PMFs, stored
/// as its unique minimal extreme-point set in canonical (lexicographic)
/// order. Two credal sets are equivalent exactly when these sets are equal.
class CredalSet {
public:
    /// Reduces the generating points to the extreme ones.
    CredalSet(SpacePtr space, std::vector<Pmf> generating_points);
    /// Trusted path for points already known extreme (polytope vertices);
    /// deduplicates and sorts but skips hull reduction.
    static CredalSet from_extreme_points(SpacePtr space, std::vector<Pmf> extreme_points);

    const SpacePtr& space() const { return space_; }
    const std::vector<Pmf>& extremes() const { return extremes_; }
    bool is_sharp() const { return extremes_.size() == 1; }
    const Pmf& sharp() const;

private:
    struct trusted_tag {};
    CredalSet(trusted_tag, SpacePtr space, std::vector<Pmf> extreme_points);

    SpacePtr space_;
    std::vector<Pmf> extremes_;
};

/// Per-world probability intervals describing a credal set, as a belief
/// input format.
class IntervalSpec {
public:
    IntervalSpec(SpacePtr space, std::vector<std::pair<Rational, Rational>> bounds);

    const SpacePtr& space() const { return space_; }
    const std::vector<std::pair<Rational, Rational>>& bounds() const { return bounds_; }

private:
    SpacePtr space_;
    std::vector<std::pair<Rational, Rational>> bounds_;
};

/// Interval-valued (credal) evidence on one variable: a credal set over its
/// domain given by per-value probability bounds.
class CredalEvidence {
public:
    CredalEvidence(SpacePtr space, std::size_t variable,
                   std::vector<std::pair<Rational, Rational>> bounds);

    const SpacePtr& space() const { return space_; }
    std::size_t variable() const { return variable_; }
    const std::vector<std::pair<Rational, Rational>>& bounds() const { return bounds_; }

    /// All bounds collapse to points.
    bool is_sharp() const;
    /// Sharp with probability one on a single value.
    std::optional<std::size_t> degenerate_at() const;
    /// Vertices of the evidence polytope as marginal-evidence PMFs.
    std::vector<MarginalEvidence> evidence_extremes() const;

private:
    SpacePtr space_;
    std::size_t variable_;
    std::vector<std::pair<Rational, Rational>> bounds_;
};

/// Minimal extreme-point set with the same convex hull as `points`.
CredalSet reduce(SpacePtr space, std::vector<Pmf> points);

/// The credal set of all PMFs within an interval specification, via exact
/// vertex enumeration.
CredalSet from_intervals(const IntervalSpec& spec);

Rational lower_envelope(const CredalSet& k, const Formula& formula);
Rational upper_envelope(const CredalSet& k, const Formula& formula);

/// Min/max of P(target | given) over extreme points with P(given) > 0;
/// extremes assigning zero to `given` are skipped. Throws
/// ConditioningUndefinedError when every extreme does.
std::pair<Rational, Rational> conditional_envelopes(const CredalSet& k, const Formula& target,
                                                    const Formula& given);

/// The conditioned credal set {condition(P, given)} over the conditionable
/// extremes, reduced.
CredalSet conditional_cs(const CredalSet& k, const Formula& given);

/// Imaging extended to credal sets: the hull of the extreme points' images.
CredalSet credal_image(const CredalSet& k, const Formula& formula);

/// Probabilistic Jeffrey's imaging of every extreme point on sharp marginal
/// evidence, reduced.
CredalSet credal_marginal_jeffrey_image(const CredalSet& k, const MarginalEvidence& evidence);

/// Adams' imaging over a credal set. The default ranges the base belief and
/// the per-value images independently over the extreme points (keeping only
/// combinations that form proper PMFs); `coupled` ties every image to the
/// same base extreme. Requires the conditioning event's lower envelope to be
/// positive.
CredalSet credal_adams_image(const CredalSet& k, const ConditionalEvidence& evidence,
                             bool coupled = false);

/// Credal Jeffrey's imaging: every pairing of a belief extreme with an
/// evidence-polytope vertex, reduced. The pairing map is bilinear, so the
/// vertex cross-product spans the full set.
CredalSet credal_jeffrey_image(const CredalSet& k, const CredalEvidence& evidence);

/// Extreme-point set equality.
bool cs_equivalent(const CredalSet& a, const CredalSet& b);

/// Marginal credal set over the given variables (ascending indices).
CredalSet marginal_cs(const CredalSet& k, const std::vector<std::size_t>& variables);

enum class Acceptance { accepted, rejected, neutral };

/// One probabilistic statement P(formula) =/<=/>= bound.
struct ProbStatement {
    enum class Cmp { eq, le, ge };
    Formula formula;
    Cmp cmp;
    Rational bound;
};

/// The acceptance trichotomy: accepted when every extreme satisfies all
/// statements, rejected when none does, neutral otherwise.
Acceptance satisfies_statements(const CredalSet& k, const std::vector<ProbStatement>& statements);

std::vector<ProbStatement> to_statements(const MarginalEvidence& evidence);
std::vector<ProbStatement> to_statements(const CredalEvidence& evidence);

Acceptance satisfies_evidence(const CredalSet& k, const MarginalEvidence& evidence);
Acceptance satisfies_evidence(const CredalSet& k, const CredalEvidence& evidence);
/// For conditional evidence the trichotomy ranges over extremes that make
/// the conditioning event positive.
Acceptance satisfies_evidence(const CredalSet& k, const ConditionalEvidence& evidence);

} // namespace credalkit
