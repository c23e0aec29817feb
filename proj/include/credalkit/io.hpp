#pragma once

#include <iosfwd>
#include <string>

#include "credalkit/kinematics.hpp"

namespace credalkit {

/// A parsed model file: the declared space plus the belief it carries,
/// materialized as a credal set (sharp beliefs become singletons).
struct Model {
    SpacePtr space;
    CredalSet belief;
    std::string belief_kind; // "joint", "factors", "intervals" or "extremes"
};

/// Parses a model from its textual form. The format is line-oriented:
///
///   var Y : swan other            # declaration order fixes world order
///   var X : x_W x_G x_B
///   factors {                     # or: joint { ... }, intervals { ... },
///     table Y { swan : 0.7  other : 0.3 }        #     extremes { ... }
///     table X | Y { x_W | swan : 0.8  ... }
///   }
///
/// Numbers are exact: "0.15", "3/20" and "1" all parse to rationals.
Model parse_model(const std::string& text);
Model load_model(const std::string& path);

/// Renders a credal set as a model file in the `extremes` representation.
/// Deterministic: canonical world order, canonical extreme-point order,
/// zero weights omitted. Reloading yields an equivalent credal set.
std::string model_to_string(const CredalSet& belief);

/// Parses an evidence file against a known space:
///
///   evidence marginal X { x_W : 0.8  x_G : 0.1  x_B : 0.1 }
///   evidence conditional X | Y = swan { ... }
///   evidence credal X { x1 : [0.2, 0.4]  ... }
Evidence parse_evidence(const std::string& text, const SpacePtr& space);
Evidence load_evidence(const std::string& path, const SpacePtr& space);

/// A query: a formula, optionally conditioned. In query strings a top-level
/// '|' separates target from conditioning event; parenthesize a disjunction
/// to use it at the top level ("(X=a | X=b) | Y=y" asks P(a or b | y)).
struct Query {
    Formula target;
    std::optional<Formula> given;
};

Query parse_query(const std::string& text, const SpacePtr& space);
std::string to_string(const Query& query);

} // namespace credalkit
