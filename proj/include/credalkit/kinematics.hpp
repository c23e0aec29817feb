#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "credalkit/credal.hpp"

namespace credalkit {

enum class Verdict { holds, fails, not_applicable };

struct ConditionCheck {
    std::string id; // "PK1", "ICK3", "KM4", ...
    Verdict verdict;
    std::string detail; // witness on failure, reason when not applicable
};

struct KinematicsReport {
    std::string family; // "PK", "CPK", "IK", "ICK"
    std::vector<ConditionCheck> conditions;
    std::vector<std::string> notes;

    bool all_hold() const;
    const ConditionCheck& condition(const std::string& id) const;
};

struct PostulateReport {
    std::vector<ConditionCheck> conditions; // KM1..KM6
    std::vector<std::string> notes;

    bool all_hold() const;
    const ConditionCheck& condition(const std::string& id) const;
};

/// All conjunctions of single-variable atoms over the given variables, the
/// empty conjunction (true) included, in a fixed enumeration order. Checking
/// equalities of measures on this basis settles them on every event by
/// linearity; on desk-scale spaces it reaches full world granularity.
std::vector<Formula> event_basis(const SpacePtr& space,
                                 const std::vector<std::size_t>& variables);

/// Probability kinematics: PK1 (conditionals given each evidence value are
/// preserved) and PK2 (the adjusted marginal matches the evidence).
/// Values that cannot be conditioned on either side are skipped and noted.
KinematicsReport check_pk(const Pmf& before, const Pmf& after, const MarginalEvidence& evidence);

/// Conditional probability kinematics CPK1-CPK4.
KinematicsReport check_cpk(const Pmf& before, const Pmf& after,
                           const ConditionalEvidence& evidence);

/// Imaginary kinematics IK1-IK3 over credal sets. With `strict`, IK1 is
/// demanded as envelope equality rather than inclusion.
KinematicsReport check_ik(const CredalSet& before, const CredalSet& after,
                          const CredalEvidence& evidence, bool strict);

/// Imaginary conditional kinematics ICK1-ICK5. Requires a positive lower
/// envelope on the conditioning event of `before`.
KinematicsReport check_ick(const CredalSet& before, const CredalSet& after,
                           const ConditionalEvidence& evidence, bool strict);

using Evidence = std::variant<MarginalEvidence, ConditionalEvidence, CredalEvidence>;

/// A named belief-adjustment operator, as consumed by the KM checker and the
/// command-line front end.
struct AdjustmentOp {
    std::string name;
    std::function<CredalSet(const CredalSet&, const Evidence&)> apply;
};

/// Builds one of the named operators: condition, jeffrey, adams, image,
/// jeffrey-image, adams-image, credal-jeffrey-image, identity. Throws
/// UsageError when applied to an incompatible evidence kind or belief form.
AdjustmentOp standard_operator(const std::string& name, bool coupled = false);

/// KM postulates for the given operator. KM2's antecedent is evidence
/// consistency with the prior set; KM5/KM6 are the standard conjunction
/// postulates, applicable only when `aux` can be conjoined with `evidence`
/// (same kind, same variable).
PostulateReport check_km(const CredalSet& k, const Evidence& evidence, const AdjustmentOp& op,
                         const std::optional<Evidence>& aux = std::nullopt);

/// Test variant: supply the adjusted set directly, or nullopt to model an
/// operator failure (which trips KM3).
PostulateReport check_km_with(const CredalSet& k, const Evidence& evidence,
                              const AdjustmentOp& op, const std::optional<CredalSet>& result,
                              const std::optional<Evidence>& aux = std::nullopt);

std::vector<std::string> render_lines(const KinematicsReport& report);
std::vector<std::string> render_lines(const PostulateReport& report);

} // namespace credalkit
