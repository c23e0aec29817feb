#include "credalkit/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace credalkit {

// ---------------------------------------------------------------------------
// Variable / Space / World

Variable::Variable(std::string name, std::vector<std::string> domain)
    : name_(std::move(name)), domain_(std::move(domain)) {
    if (name_.empty()) throw Error("variable name must be non-empty");
    if (domain_.empty()) throw Error("variable '" + name_ + "' needs a non-empty domain");
    std::set<std::string> seen;
    for (const auto& v : domain_)
        if (!seen.insert(v).second)
            throw Error("duplicate value '" + v + "' in domain of '" + name_ + "'");
}

std::optional<std::size_t> Variable::index_of(const std::string& value) const {
    for (std::size_t i = 0; i < domain_.size(); ++i)
        if (domain_[i] == value) return i;
    return std::nullopt;
}

Space::Space(std::vector<Variable> variables) : variables_(std::move(variables)) {
    if (variables_.empty()) throw Error("a space needs at least one variable");
    std::set<std::string> seen;
    for (const auto& v : variables_)
        if (!seen.insert(v.name()).second)
            throw Error("duplicate variable name '" + v.name() + "'");
    world_count_ = 1;
    for (const auto& v : variables_) world_count_ *= v.size();
}

std::shared_ptr<const Space> Space::make(std::vector<Variable> variables) {
    return std::make_shared<const Space>(std::move(variables));
}

std::optional<std::size_t> Space::index_of(const std::string& variable_name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i].name() == variable_name) return i;
    return std::nullopt;
}

World Space::world(std::size_t index) const {
    std::vector<std::uint32_t> values(variables_.size());
    for (std::size_t i = variables_.size(); i-- > 0;) {
        const std::size_t n = variables_[i].size();
        values[i] = static_cast<std::uint32_t>(index % n);
        index /= n;
    }
    return World(std::move(values));
}

std::size_t Space::index(const World& world) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < variables_.size(); ++i)
        idx = idx * variables_[i].size() + world[i];
    return idx;
}

std::string Space::label(const World& world) const {
    std::string out;
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (i) out += ' ';
        out += variables_[i].domain()[world[i]];
    }
    return out;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* context) {
    if (a == b) return;
    if (a && b && *a == *b) return;
    throw SpaceMismatchError(std::string(context) + ": values belong to different spaces");
}

// ---------------------------------------------------------------------------
// Formula construction

Formula Formula::top(SpacePtr space) {
    return Formula(std::make_shared<const Node>(Node{Kind::top}), std::move(space));
}

Formula Formula::bottom(SpacePtr space) {
    return Formula(std::make_shared<const Node>(Node{Kind::bottom}), std::move(space));
}

Formula Formula::atom(SpacePtr space, std::size_t variable, std::size_t value) {
    if (!space || variable >= space->arity() || value >= space->variable(variable).size())
        throw Error("atom indices out of range");
    return Formula(std::make_shared<const Node>(Node{Kind::atom,
                                                     static_cast<std::uint32_t>(variable),
                                                     static_cast<std::uint32_t>(value)}),
                   std::move(space));
}

Formula Formula::atom(SpacePtr space, const std::string& variable, const std::string& value) {
    auto vi = space->index_of(variable);
    if (!vi) throw ParseError("unknown variable '" + variable + "'", 0);
    auto di = space->variable(*vi).index_of(value);
    if (!di) throw ParseError("unknown value '" + value + "' for variable '" + variable + "'", 0);
    return atom(std::move(space), *vi, *di);
}

Formula Formula::negation(Formula operand) {
    auto space = operand.space_;
    return Formula(std::make_shared<const Node>(Node{Kind::negation, 0, 0, operand.node_}),
                   std::move(space));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
    require_same_space(lhs.space_, rhs.space_, "conjunction");
    auto space = lhs.space_;
    return Formula(
        std::make_shared<const Node>(Node{Kind::conjunction, 0, 0, lhs.node_, rhs.node_}),
        std::move(space));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
    require_same_space(lhs.space_, rhs.space_, "disjunction");
    auto space = lhs.space_;
    return Formula(
        std::make_shared<const Node>(Node{Kind::disjunction, 0, 0, lhs.node_, rhs.node_}),
        std::move(space));
}

namespace {

bool node_equal(const Formula& a, const Formula& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Formula::Kind::top:
    case Formula::Kind::bottom:
        return true;
    case Formula::Kind::atom:
        return a.variable() == b.variable() && a.value() == b.value();
    case Formula::Kind::negation:
        return node_equal(a.child(), b.child());
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction:
        return node_equal(a.left(), b.left()) && node_equal(a.right(), b.right());
    }
    return false;
}

} // namespace

bool Formula::same_structure(const Formula& other) const {
    if (!(space_ == other.space_ || (space_ && other.space_ && *space_ == *other.space_)))
        return false;
    return node_equal(*this, other);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
    enum class Type { ident, bang, amp, pipe, lparen, rparen, equals, end };
    Type type;
    std::string text;
    std::size_t position;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ >= text_.size()) {
            current_ = {Token::Type::end, "", pos_};
            return;
        }
        const std::size_t start = pos_;
        const char c = text_[pos_];
        switch (c) {
        case '!': current_ = {Token::Type::bang, "!", start}; ++pos_; return;
        case '&': current_ = {Token::Type::amp, "&", start}; ++pos_; return;
        case '|': current_ = {Token::Type::pipe, "|", start}; ++pos_; return;
        case '(': current_ = {Token::Type::lparen, "(", start}; ++pos_; return;
        case ')': current_ = {Token::Type::rparen, ")", start}; ++pos_; return;
        case '=': current_ = {Token::Type::equals, "=", start}; ++pos_; return;
        default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            current_ = {Token::Type::ident, text_.substr(start, end - start), start};
            pos_ = end;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    Token current_;
};

class FormulaParser {
public:
    FormulaParser(const std::string& text, SpacePtr space)
        : lexer_(text), space_(std::move(space)) {}

    Formula parse() {
        Formula f = parse_or();
        if (lexer_.peek().type != Token::Type::end)
            throw ParseError("unexpected trailing input '" + lexer_.peek().text + "'",
                             lexer_.peek().position);
        return f;
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (lexer_.peek().type == Token::Type::pipe) {
            lexer_.next();
            f = Formula::disjunction(std::move(f), parse_and());
        }
        return f;
    }

private:
    Formula parse_and() {
        Formula f = parse_not();
        while (lexer_.peek().type == Token::Type::amp) {
            lexer_.next();
            f = Formula::conjunction(std::move(f), parse_not());
        }
        return f;
    }

    Formula parse_not() {
        if (lexer_.peek().type == Token::Type::bang) {
            lexer_.next();
            return Formula::negation(parse_not());
        }
        return parse_primary();
    }

    Formula parse_primary() {
        Token t = lexer_.next();
        switch (t.type) {
        case Token::Type::lparen: {
            Formula f = parse_or();
            Token close = lexer_.next();
            if (close.type != Token::Type::rparen)
                throw ParseError("expected ')'", close.position);
            return f;
        }
        case Token::Type::ident: {
            if (t.text == "true") return Formula::top(space_);
            if (t.text == "false") return Formula::bottom(space_);
            Token eq = lexer_.next();
            if (eq.type != Token::Type::equals)
                throw ParseError("expected '=' after '" + t.text + "'", eq.position);
            Token value = lexer_.next();
            if (value.type != Token::Type::ident)
                throw ParseError("expected a value name after '='", value.position);
            auto vi = space_->index_of(t.text);
            if (!vi) throw ParseError("unknown variable '" + t.text + "'", t.position);
            auto di = space_->variable(*vi).index_of(value.text);
            if (!di)
                throw ParseError("unknown value '" + value.text + "' for variable '" + t.text + "'",
                                 value.position);
            return Formula::atom(space_, *vi, *di);
        }
        default:
            throw ParseError("expected a formula", t.position);
        }
    }

    Lexer lexer_;
    SpacePtr space_;
};

} // namespace

Formula parse_formula(const std::string& text, const SpacePtr& space) {
    return FormulaParser(text, space).parse();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(Formula::Kind kind) {
    switch (kind) {
    case Formula::Kind::disjunction: return 1;
    case Formula::Kind::conjunction: return 2;
    default: return 3;
    }
}

void print(const Formula& f, std::string& out) {
    switch (f.kind()) {
    case Formula::Kind::top: out += "true"; return;
    case Formula::Kind::bottom: out += "false"; return;
    case Formula::Kind::atom:
        out += f.space()->variable(f.variable()).name();
        out += '=';
        out += f.space()->variable(f.variable()).domain()[f.value()];
        return;
    case Formula::Kind::negation: {
        out += '!';
        const Formula inner = f.child();
        if (precedence(inner.kind()) < 3) {
            out += '(';
            print(inner, out);
            out += ')';
        } else {
            print(inner, out);
        }
        return;
    }
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
        const int prec = precedence(f.kind());
        const char* op = f.kind() == Formula::Kind::conjunction ? " & " : " | ";
        const Formula lhs = f.left();
        const Formula rhs = f.right();
        // left-associative: parenthesize a weaker left child and any right
        // child that does not bind strictly tighter
        if (precedence(lhs.kind()) < prec) {
            out += '(';
            print(lhs, out);
            out += ')';
        } else {
            print(lhs, out);
        }
        out += op;
        if (precedence(rhs.kind()) <= prec) {
            out += '(';
            print(rhs, out);
            out += ')';
        } else {
            print(rhs, out);
        }
        return;
    }
    }
}

} // namespace

std::string to_string(const Formula& formula) {
    std::string out;
    print(formula, out);
    return out;
}

// ---------------------------------------------------------------------------
// Semantics

bool satisfies(const World& world, const Formula& formula) {
    switch (formula.kind()) {
    case Formula::Kind::top: return true;
    case Formula::Kind::bottom: return false;
    case Formula::Kind::atom: return world[formula.variable()] == formula.value();
    case Formula::Kind::negation: return !satisfies(world, formula.child());
    case Formula::Kind::conjunction:
        return satisfies(world, formula.left()) && satisfies(world, formula.right());
    case Formula::Kind::disjunction:
        return satisfies(world, formula.left()) || satisfies(world, formula.right());
    }
    return false;
}

std::vector<std::size_t> extension_indices(const Formula& formula, const Space& space) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < space.world_count(); ++i)
        if (satisfies(space.world(i), formula)) out.push_back(i);
    return out;
}

std::vector<World> extension(const Formula& formula, const Space& space) {
    std::vector<World> out;
    for (std::size_t idx : extension_indices(formula, space)) out.push_back(space.world(idx));
    return out;
}

namespace {

std::size_t hamming(const World& a, const World& b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++d;
    return d;
}

} // namespace

std::size_t closest_world_index(std::size_t world_index, const Formula& formula,
                                const Space& space) {
    const World origin = space.world(world_index);
    if (satisfies(origin, formula)) return world_index;

    bool found = false;
    std::size_t best_index = 0;
    std::size_t best_distance = 0;
    // canonical enumeration order makes "first strict improvement" the
    // deterministic tie-break
    for (std::size_t i = 0; i < space.world_count(); ++i) {
        const World candidate = space.world(i);
        if (!satisfies(candidate, formula)) continue;
        const std::size_t d = hamming(origin, candidate);
        if (!found || d < best_distance) {
            found = true;
            best_index = i;
            best_distance = d;
        }
    }
    if (!found)
        throw NoClosestWorldError("no closest world: '" + to_string(formula) +
                                  "' is unsatisfiable");
    return best_index;
}

World closest_world(const World& world, const Formula& formula, const Space& space) {
    return space.world(closest_world_index(space.index(world), formula, space));
}

} // namespace credalkit
