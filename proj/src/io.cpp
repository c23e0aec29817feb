#include "credalkit/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace credalkit {

namespace {

// ---------------------------------------------------------------------------
// Tokenizer shared by model and evidence files. '#' comments run to the end
// of the line; numbers cover "2", "0.15" and "3/20" as single tokens.

struct FileToken {
    enum class Type { ident, number, colon, pipe, equals, lbrace, rbrace, lbracket, rbracket, comma, end };
    Type type;
    std::string text;
    std::size_t position;
};

class FileLexer {
public:
    explicit FileLexer(const std::string& text) : text_(text) { advance(); }

    const FileToken& peek() const { return current_; }

    FileToken next() {
        FileToken t = current_;
        advance();
        return t;
    }

    FileToken expect(FileToken::Type type, const char* what) {
        if (current_.type != type)
            throw ParseError(std::string("expected ") + what + ", got '" + describe(current_) +
                                 "'",
                             current_.position);
        return next();
    }

    static std::string describe(const FileToken& t) {
        return t.type == FileToken::Type::end ? "end of input" : t.text;
    }

private:
    void advance() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ >= text_.size()) {
            current_ = {FileToken::Type::end, "", pos_};
            return;
        }
        const std::size_t start = pos_;
        const char c = text_[pos_];
        auto single = [&](FileToken::Type type) {
            current_ = {type, std::string(1, c), start};
            ++pos_;
        };
        switch (c) {
        case ':': single(FileToken::Type::colon); return;
        case '|': single(FileToken::Type::pipe); return;
        case '=': single(FileToken::Type::equals); return;
        case '{': single(FileToken::Type::lbrace); return;
        case '}': single(FileToken::Type::rbrace); return;
        case '[': single(FileToken::Type::lbracket); return;
        case ']': single(FileToken::Type::rbracket); return;
        case ',': single(FileToken::Type::comma); return;
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t end = pos_;
            bool seen_slash = false;
            while (end < text_.size()) {
                const char d = text_[end];
                if (std::isdigit(static_cast<unsigned char>(d)) || d == '.') {
                    ++end;
                } else if (d == '/' && !seen_slash) {
                    seen_slash = true;
                    ++end;
                } else {
                    break;
                }
            }
            current_ = {FileToken::Type::number, text_.substr(start, end - start), start};
            pos_ = end;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) ||
                                          text_[end] == '_'))
                ++end;
            current_ = {FileToken::Type::ident, text_.substr(start, end - start), start};
            pos_ = end;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    FileToken current_;
};

Rational read_number(FileLexer& lex) {
    const FileToken t = lex.expect(FileToken::Type::number, "a number");
    try {
        return parse_rational(t.text);
    } catch (const ParseError& e) {
        throw ParseError(e.what(), t.position);
    }
}

std::pair<Rational, Rational> read_interval(FileLexer& lex) {
    lex.expect(FileToken::Type::lbracket, "'['");
    Rational lo = read_number(lex);
    lex.expect(FileToken::Type::comma, "','");
    Rational hi = read_number(lex);
    lex.expect(FileToken::Type::rbracket, "']'");
    return {std::move(lo), std::move(hi)};
}

std::size_t resolve_variable(const Space& space, const FileToken& t) {
    if (auto i = space.index_of(t.text)) return *i;
    throw ParseError("unknown variable '" + t.text + "'", t.position);
}

std::size_t resolve_value(const Space& space, std::size_t variable, const FileToken& t) {
    if (auto i = space.variable(variable).index_of(t.text)) return *i;
    throw ParseError("unknown value '" + t.text + "' for variable '" +
                         space.variable(variable).name() + "'",
                     t.position);
}

// world row: one value name per variable in declaration order
std::size_t read_world(FileLexer& lex, const Space& space) {
    std::vector<std::uint32_t> values;
    values.reserve(space.arity());
    for (std::size_t v = 0; v < space.arity(); ++v) {
        const FileToken t = lex.expect(FileToken::Type::ident, "a value name");
        values.push_back(static_cast<std::uint32_t>(resolve_value(space, v, t)));
    }
    return space.index(World(std::move(values)));
}

std::vector<Rational> read_weight_block(FileLexer& lex, const SpacePtr& space) {
    lex.expect(FileToken::Type::lbrace, "'{'");
    std::vector<Rational> weights(space->world_count(), Rational(0));
    std::vector<bool> seen(space->world_count(), false);
    while (lex.peek().type != FileToken::Type::rbrace) {
        const std::size_t pos = lex.peek().position;
        const std::size_t idx = read_world(lex, *space);
        if (seen[idx])
            throw ParseError("world '" + space->label(space->world(idx)) + "' listed twice", pos);
        seen[idx] = true;
        lex.expect(FileToken::Type::colon, "':'");
        weights[idx] = read_number(lex);
    }
    lex.expect(FileToken::Type::rbrace, "'}'");
    return weights;
}

Pmf read_joint(FileLexer& lex, const SpacePtr& space, std::size_t block_pos) {
    try {
        return Pmf(space, read_weight_block(lex, space));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what(), block_pos);
    }
}

// factors { table CHILD | PARENT... { childval | parentval... : p } ... }
Pmf read_factors(FileLexer& lex, const SpacePtr& space, std::size_t block_pos) {
    lex.expect(FileToken::Type::lbrace, "'{'");
    struct Table {
        std::vector<std::size_t> parents;
        // key: (child value, parent values); every combination required
        std::map<std::vector<std::size_t>, Rational> rows;
    };
    std::map<std::size_t, Table> tables;

    while (lex.peek().type != FileToken::Type::rbrace) {
        const FileToken kw = lex.expect(FileToken::Type::ident, "'table'");
        if (kw.text != "table") throw ParseError("expected 'table'", kw.position);
        const FileToken child_tok = lex.expect(FileToken::Type::ident, "a variable name");
        const std::size_t child = resolve_variable(*space, child_tok);
        if (tables.count(child))
            throw ParseError("second table for variable '" + child_tok.text + "'",
                             child_tok.position);
        Table table;
        if (lex.peek().type == FileToken::Type::pipe) {
            lex.next();
            while (lex.peek().type == FileToken::Type::ident) {
                const FileToken parent_tok = lex.next();
                const std::size_t parent = resolve_variable(*space, parent_tok);
                if (parent >= child)
                    throw ParseError("parent '" + parent_tok.text +
                                         "' must be declared before its child '" +
                                         child_tok.text + "' (factor graphs must be acyclic)",
                                     parent_tok.position);
                table.parents.push_back(parent);
            }
            if (table.parents.empty())
                throw ParseError("expected parent variables after '|'", lex.peek().position);
        }
        lex.expect(FileToken::Type::lbrace, "'{'");
        while (lex.peek().type != FileToken::Type::rbrace) {
            const FileToken val_tok = lex.expect(FileToken::Type::ident, "a value name");
            std::vector<std::size_t> key{resolve_value(*space, child, val_tok)};
            if (!table.parents.empty()) {
                lex.expect(FileToken::Type::pipe, "'|'");
                for (std::size_t parent : table.parents) {
                    const FileToken pv = lex.expect(FileToken::Type::ident, "a value name");
                    key.push_back(resolve_value(*space, parent, pv));
                }
            }
            lex.expect(FileToken::Type::colon, "':'");
            const std::size_t row_pos = lex.peek().position;
            const Rational p = read_number(lex);
            if (p < 0 || p > 1)
                throw ParseError("probability must lie in [0,1], got " + to_exact_string(p),
                                 row_pos);
            if (!table.rows.emplace(std::move(key), p).second)
                throw ParseError("duplicate row in table for '" + child_tok.text + "'",
                                 val_tok.position);
        }
        lex.expect(FileToken::Type::rbrace, "'}'");
        tables.emplace(child, std::move(table));
    }
    lex.expect(FileToken::Type::rbrace, "'}'");

    for (std::size_t v = 0; v < space->arity(); ++v)
        if (!tables.count(v))
            throw ParseError("no table for variable '" + space->variable(v).name() + "'",
                             block_pos);

    // validate coverage and per-configuration normalization
    for (const auto& [child, table] : tables) {
        std::size_t configs = 1;
        for (std::size_t parent : table.parents) configs *= space->variable(parent).size();
        const std::size_t expected = configs * space->variable(child).size();
        if (table.rows.size() != expected)
            throw ParseError("table for '" + space->variable(child).name() + "' has " +
                                 std::to_string(table.rows.size()) + " rows, expected " +
                                 std::to_string(expected),
                             block_pos);
        std::map<std::vector<std::size_t>, Rational> sums;
        for (const auto& [key, p] : table.rows) {
            std::vector<std::size_t> config(key.begin() + 1, key.end());
            sums[config] += p;
        }
        for (const auto& [config, total] : sums) {
            if (total != 1)
                throw ParseError("rows of table for '" + space->variable(child).name() +
                                     "' sum to " + to_exact_string(total) +
                                     " for one parent configuration, expected 1",
                                 block_pos);
        }
    }

    std::vector<Rational> weights(space->world_count(), Rational(1));
    for (std::size_t i = 0; i < space->world_count(); ++i) {
        const World w = space->world(i);
        for (const auto& [child, table] : tables) {
            std::vector<std::size_t> key{w[child]};
            for (std::size_t parent : table.parents) key.push_back(w[parent]);
            weights[i] *= table.rows.at(key);
        }
    }
    try {
        return Pmf(space, std::move(weights));
    } catch (const Error& e) {
        throw ParseError(e.what(), block_pos);
    }
}

CredalSet read_intervals(FileLexer& lex, const SpacePtr& space, std::size_t block_pos) {
    lex.expect(FileToken::Type::lbrace, "'{'");
    // unlisted worlds default to the vacuous bound [0, 1]
    std::vector<std::pair<Rational, Rational>> bounds(space->world_count(),
                                                      {Rational(0), Rational(1)});
    std::vector<bool> seen(space->world_count(), false);
    while (lex.peek().type != FileToken::Type::rbrace) {
        const std::size_t pos = lex.peek().position;
        const std::size_t idx = read_world(lex, *space);
        if (seen[idx])
            throw ParseError("world '" + space->label(space->world(idx)) + "' listed twice", pos);
        seen[idx] = true;
        lex.expect(FileToken::Type::colon, "':'");
        bounds[idx] = read_interval(lex);
    }
    lex.expect(FileToken::Type::rbrace, "'}'");
    try {
        return from_intervals(IntervalSpec(space, std::move(bounds)));
    } catch (const ParseError&) {
        throw;
    } catch (const InfeasibleSpecError&) {
        throw;
    } catch (const SizeLimitError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what(), block_pos);
    }
}

CredalSet read_extremes(FileLexer& lex, const SpacePtr& space, std::size_t block_pos) {
    lex.expect(FileToken::Type::lbrace, "'{'");
    std::vector<Pmf> points;
    while (lex.peek().type != FileToken::Type::rbrace) {
        const FileToken kw = lex.expect(FileToken::Type::ident, "'point'");
        if (kw.text != "point") throw ParseError("expected 'point'", kw.position);
        points.push_back(read_joint(lex, space, kw.position));
    }
    lex.expect(FileToken::Type::rbrace, "'}'");
    if (points.empty()) throw ParseError("extremes block needs at least one point", block_pos);
    return CredalSet(space, std::move(points));
}

} // namespace

Model parse_model(const std::string& text) {
    FileLexer lex(text);
    std::vector<Variable> variables;
    std::set<std::string> names;
    while (lex.peek().type == FileToken::Type::ident && lex.peek().text == "var") {
        lex.next();
        const FileToken name = lex.expect(FileToken::Type::ident, "a variable name");
        if (!names.insert(name.text).second)
            throw ParseError("variable '" + name.text + "' declared twice", name.position);
        lex.expect(FileToken::Type::colon, "':'");
        std::vector<std::string> domain;
        while (lex.peek().type == FileToken::Type::ident &&
               !(lex.peek().text == "var" || lex.peek().text == "joint" ||
                 lex.peek().text == "factors" || lex.peek().text == "intervals" ||
                 lex.peek().text == "extremes"))
            domain.push_back(lex.next().text);
        if (domain.empty()) throw ParseError("variable '" + name.text + "' has no values",
                                             name.position);
        try {
            variables.emplace_back(name.text, std::move(domain));
        } catch (const Error& e) {
            throw ParseError(e.what(), name.position);
        }
    }
    if (variables.empty())
        throw ParseError("a model starts with at least one 'var' declaration",
                         lex.peek().position);
    const SpacePtr space = Space::make(std::move(variables));

    const FileToken kind = lex.expect(FileToken::Type::ident, "a belief block");
    std::optional<Model> model;
    if (kind.text == "joint") {
        Pmf p = read_joint(lex, space, kind.position);
        model = Model{space, CredalSet::from_extreme_points(space, {std::move(p)}), "joint"};
    } else if (kind.text == "factors") {
        Pmf p = read_factors(lex, space, kind.position);
        model = Model{space, CredalSet::from_extreme_points(space, {std::move(p)}), "factors"};
    } else if (kind.text == "intervals") {
        model = Model{space, read_intervals(lex, space, kind.position), "intervals"};
    } else if (kind.text == "extremes") {
        model = Model{space, read_extremes(lex, space, kind.position), "extremes"};
    } else {
        throw ParseError("expected 'joint', 'factors', 'intervals' or 'extremes'", kind.position);
    }
    if (lex.peek().type != FileToken::Type::end)
        throw ParseError("unexpected trailing input '" + FileLexer::describe(lex.peek()) + "'",
                         lex.peek().position);
    return std::move(*model);
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

Model load_model(const std::string& path) {
    try {
        return parse_model(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.position());
    }
}

std::string model_to_string(const CredalSet& belief) {
    const Space& space = *belief.space();
    std::string out;
    for (const Variable& v : space.variables()) {
        out += "var " + v.name() + " :";
        for (const std::string& value : v.domain()) out += " " + value;
        out += "\n";
    }
    out += "extremes {\n";
    for (const Pmf& p : belief.extremes()) {
        out += "  point {\n";
        for (std::size_t i = 0; i < space.world_count(); ++i) {
            if (p.weight(i) == 0) continue;
            out += "    " + space.label(space.world(i)) + " : " + to_exact_string(p.weight(i)) +
                   "\n";
        }
        out += "  }\n";
    }
    out += "}\n";
    return out;
}

Evidence parse_evidence(const std::string& text, const SpacePtr& space) {
    FileLexer lex(text);
    const FileToken kw = lex.expect(FileToken::Type::ident, "'evidence'");
    if (kw.text != "evidence") throw ParseError("expected 'evidence'", kw.position);
    const FileToken kind = lex.expect(FileToken::Type::ident,
                                      "'marginal', 'conditional' or 'credal'");

    const FileToken var_tok = lex.expect(FileToken::Type::ident, "a variable name");
    const std::size_t variable = resolve_variable(*space, var_tok);
    const std::size_t n_values = space->variable(variable).size();

    std::optional<Evidence> evidence;
    if (kind.text == "conditional") {
        lex.expect(FileToken::Type::pipe, "'|'");
        const FileToken given_tok = lex.expect(FileToken::Type::ident, "a variable name");
        const std::size_t given_var = resolve_variable(*space, given_tok);
        lex.expect(FileToken::Type::equals, "'='");
        const FileToken val_tok = lex.expect(FileToken::Type::ident, "a value name");
        const std::size_t given_val = resolve_value(*space, given_var, val_tok);

        lex.expect(FileToken::Type::lbrace, "'{'");
        std::vector<std::optional<Rational>> probs(n_values);
        while (lex.peek().type != FileToken::Type::rbrace) {
            const FileToken value_tok = lex.expect(FileToken::Type::ident, "a value name");
            const std::size_t v = resolve_value(*space, variable, value_tok);
            if (probs[v]) throw ParseError("value '" + value_tok.text + "' listed twice",
                                           value_tok.position);
            lex.expect(FileToken::Type::colon, "':'");
            probs[v] = read_number(lex);
        }
        lex.expect(FileToken::Type::rbrace, "'}'");
        std::vector<Rational> vec(n_values, Rational(0));
        for (std::size_t v = 0; v < n_values; ++v)
            if (probs[v]) vec[v] = *probs[v];
        try {
            evidence = ConditionalEvidence(space, variable, given_var, given_val, std::move(vec));
        } catch (const Error& e) {
            throw ParseError(e.what(), kw.position);
        }
    } else if (kind.text == "marginal") {
        lex.expect(FileToken::Type::lbrace, "'{'");
        std::vector<std::optional<Rational>> probs(n_values);
        while (lex.peek().type != FileToken::Type::rbrace) {
            const FileToken value_tok = lex.expect(FileToken::Type::ident, "a value name");
            const std::size_t v = resolve_value(*space, variable, value_tok);
            if (probs[v]) throw ParseError("value '" + value_tok.text + "' listed twice",
                                           value_tok.position);
            lex.expect(FileToken::Type::colon, "':'");
            probs[v] = read_number(lex);
        }
        lex.expect(FileToken::Type::rbrace, "'}'");
        std::vector<Rational> vec(n_values, Rational(0));
        for (std::size_t v = 0; v < n_values; ++v)
            if (probs[v]) vec[v] = *probs[v];
        try {
            evidence = MarginalEvidence(space, variable, std::move(vec));
        } catch (const Error& e) {
            throw ParseError(e.what(), kw.position);
        }
    } else if (kind.text == "credal") {
        lex.expect(FileToken::Type::lbrace, "'{'");
        // unlisted values default to the vacuous bound [0, 1]
        std::vector<std::pair<Rational, Rational>> bounds(n_values, {Rational(0), Rational(1)});
        std::vector<bool> seen(n_values, false);
        while (lex.peek().type != FileToken::Type::rbrace) {
            const FileToken value_tok = lex.expect(FileToken::Type::ident, "a value name");
            const std::size_t v = resolve_value(*space, variable, value_tok);
            if (seen[v]) throw ParseError("value '" + value_tok.text + "' listed twice",
                                          value_tok.position);
            seen[v] = true;
            lex.expect(FileToken::Type::colon, "':'");
            bounds[v] = read_interval(lex);
        }
        lex.expect(FileToken::Type::rbrace, "'}'");
        try {
            evidence = CredalEvidence(space, variable, std::move(bounds));
        } catch (const InfeasibleSpecError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), kw.position);
        }
    } else {
        throw ParseError("expected 'marginal', 'conditional' or 'credal'", kind.position);
    }
    if (lex.peek().type != FileToken::Type::end)
        throw ParseError("unexpected trailing input '" + FileLexer::describe(lex.peek()) + "'",
                         lex.peek().position);
    return std::move(*evidence);
}

Evidence load_evidence(const std::string& path, const SpacePtr& space) {
    try {
        return parse_evidence(read_file(path), space);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.position());
    }
}

namespace {

// Splits a query at the single top-level '|', if any. Inside parentheses
// '|' keeps its disjunction reading.
std::optional<std::size_t> top_level_bar(const std::string& text) {
    int depth = 0;
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (c == '|' && depth == 0) {
            if (found)
                throw ParseError("more than one top-level '|' in query; parenthesize disjunctions",
                                 i);
            found = i;
        }
    }
    return found;
}

} // namespace

Query parse_query(const std::string& text, const SpacePtr& space) {
    if (const auto bar = top_level_bar(text)) {
        Formula target = parse_formula(text.substr(0, *bar), space);
        Formula given = parse_formula(text.substr(*bar + 1), space);
        return Query{std::move(target), std::move(given)};
    }
    return Query{parse_formula(text, space), std::nullopt};
}

std::string to_string(const Query& query) {
    std::string out = to_string(query.target);
    if (query.given) out += " | " + to_string(*query.given);
    return out;
}

} // namespace credalkit
