#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "credalkit/errors.hpp"

namespace credalkit {

/// A discrete variable with an ordered, duplicate-free domain. The domain
/// order is fixed at construction; it drives canonical world enumeration
/// and every deterministic tie-break in the library.
class Variable {
public:
    Variable(std::string name, std::vector<std::string> domain);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& domain() const { return domain_; }
    std::size_t size() const { return domain_.size(); }
    std::optional<std::size_t> index_of(const std::string& value) const;

    bool operator==(const Variable&) const = default;

private:
    std::string name_;
    std::vector<std::string> domain_;
};

/// A total assignment, stored as one domain index per variable in
/// declaration order.
class World {
public:
    explicit World(std::vector<std::uint32_t> values) : values_(std::move(values)) {}

    std::uint32_t operator[](std::size_t variable) const { return values_[variable]; }
    std::size_t size() const { return values_.size(); }
    const std::vector<std::uint32_t>& values() const { return values_; }

    auto operator<=>(const World&) const = default;

private:
    std::vector<std::uint32_t> values_;
};

/// The joint possibility space of an ordered collection of variables.
/// Worlds are enumerated lexicographically: first variable most
/// significant, domain values in declaration order.
class Space {
public:
    explicit Space(std::vector<Variable> variables);
    static std::shared_ptr<const Space> make(std::vector<Variable> variables);

    const std::vector<Variable>& variables() const { return variables_; }
    const Variable& variable(std::size_t i) const { return variables_[i]; }
    std::size_t arity() const { return variables_.size(); }
    std::optional<std::size_t> index_of(const std::string& variable_name) const;

    std::size_t world_count() const { return world_count_; }
    World world(std::size_t index) const;
    std::size_t index(const World& world) const;
    /// Space-separated value names in declaration order, e.g. "swan x_W tame".
    std::string label(const World& world) const;

    bool operator==(const Space& other) const { return variables_ == other.variables_; }

private:
    std::vector<Variable> variables_;
    std::size_t world_count_;
};

using SpacePtr = std::shared_ptr<const Space>;

/// Immutable propositional formula over a space. Atoms assert that a
/// variable takes one specific domain value.
class Formula {
public:
    enum class Kind { top, bottom, atom, negation, conjunction, disjunction };

    static Formula top(SpacePtr space);
    static Formula bottom(SpacePtr space);
    static Formula atom(SpacePtr space, std::size_t variable, std::size_t value);
    /// Name-based construction; throws ParseError on unknown names.
    static Formula atom(SpacePtr space, const std::string& variable, const std::string& value);
    static Formula negation(Formula operand);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);

    Kind kind() const { return node_->kind; }
    std::size_t variable() const { return node_->variable; }
    std::size_t value() const { return node_->value; }
    Formula child() const { return Formula(node_->a, space_); }
    Formula left() const { return Formula(node_->a, space_); }
    Formula right() const { return Formula(node_->b, space_); }
    const SpacePtr& space() const { return space_; }

    /// Structural equality (spaces must agree as well).
    bool same_structure(const Formula& other) const;

private:
    struct Node {
        Kind kind;
        std::uint32_t variable = 0;
        std::uint32_t value = 0;
        std::shared_ptr<const Node> a;
        std::shared_ptr<const Node> b;
    };

    Formula(std::shared_ptr<const Node> node, SpacePtr space)
        : node_(std::move(node)), space_(std::move(space)) {}

    std::shared_ptr<const Node> node_;
    SpacePtr space_;
};

/// Parses the surface grammar
///   atom    := IDENT '=' IDENT
///   formula := atom | '!' formula | formula '&' formula
///            | formula '|' formula | '(' formula ')' | 'true' | 'false'
/// with precedence ! > & > |, '&' and '|' left-associative.
Formula parse_formula(const std::string& text, const SpacePtr& space);

/// Minimal-parenthesis rendering; parse(to_string(f)) is structurally
/// identical to f.
std::string to_string(const Formula& formula);

bool satisfies(const World& world, const Formula& formula);

/// Worlds satisfying the formula, in canonical enumeration order.
std::vector<World> extension(const Formula& formula, const Space& space);
/// Same, as canonical world indices (the workhorse form).
std::vector<std::size_t> extension_indices(const Formula& formula, const Space& space);

/// Lewis closest-world function. A satisfying world maps to itself; an
/// atom overwrites exactly that variable's coordinate; otherwise the
/// satisfying world at minimal Hamming distance wins, ties broken by
/// canonical world order. Throws NoClosestWorldError when the formula is
/// unsatisfiable.
World closest_world(const World& world, const Formula& formula, const Space& space);
std::size_t closest_world_index(std::size_t world_index, const Formula& formula,
                                const Space& space);

/// Shared-space guard used across modules.
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* context);

} // namespace credalkit
