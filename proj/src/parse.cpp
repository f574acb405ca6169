#include "pverify/parse.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "pverify/errors.hpp"

namespace pverify {

namespace {

struct Token {
    enum Kind { End, Newline, Ident, Number, Str, Punct } kind = End;
    std::string text;  // ident name, digit string, or string contents
    char punct = 0;
    int line = 1;
    int column = 1;
};

[[noreturn]] void fail(const std::string& message, int line, int column) {
    throw SyntaxError(message, line, column);
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, column = 1;
    std::size_t i = 0;
    auto push = [&](Token t) {
        out.push_back(std::move(t));
    };
    while (i < text.size()) {
        char c = text[i];
        int tok_line = line, tok_col = column;
        if (c == '\n') {
            push({Token::Newline, "", 0, tok_line, tok_col});
            ++i;
            ++line;
            column = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++column;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;  // newline handled on the next pass
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '_'))
                ++j;
            push({Token::Ident, text.substr(i, j - i), 0, tok_line, tok_col});
            column += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            push({Token::Number, text.substr(i, j - i), 0, tok_line, tok_col});
            column += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (c == '"') {
            std::string contents;
            std::size_t j = i + 1;
            while (j < text.size() && text[j] != '"') {
                if (text[j] == '\\' && j + 1 < text.size()) {
                    contents.push_back(text[j + 1]);
                    j += 2;
                } else if (text[j] == '\n') {
                    fail("unterminated string", tok_line, tok_col);
                } else {
                    contents.push_back(text[j]);
                    ++j;
                }
            }
            if (j >= text.size()) fail("unterminated string", tok_line, tok_col);
            push({Token::Str, contents, 0, tok_line, tok_col});
            column += static_cast<int>(j + 1 - i);
            i = j + 1;
            continue;
        }
        if (std::string("={}(),:^+-*/").find(c) != std::string::npos) {
            push({Token::Punct, std::string(1, c), c, tok_line, tok_col});
            ++i;
            ++column;
            continue;
        }
        fail(std::string("unexpected character '") + c + "'", tok_line, tok_col);
    }
    out.push_back({Token::End, "", 0, line, column});
    return out;
}

// Constant-folding node builders: arithmetic on numeric literals collapses to
// a single literal, which keeps serialize -> parse structurally stable
// (e.g. "1/2" folds back to the rational one-half rather than a Div node).
FormalPtr fold_binary(FormalKind k, FormalPtr a, FormalPtr b, int line, int col) {
    if (a->kind == FormalKind::Number && b->kind == FormalKind::Number) {
        switch (k) {
            case FormalKind::Add: return FormalExpr::make_number(a->number + b->number);
            case FormalKind::Sub: return FormalExpr::make_number(a->number - b->number);
            case FormalKind::Mul: return FormalExpr::make_number(a->number * b->number);
            case FormalKind::Div:
                if (b->number.is_zero()) fail("division by zero literal", line, col);
                return FormalExpr::make_number(a->number / b->number);
            default: break;
        }
    }
    return FormalExpr::make_binary(k, std::move(a), std::move(b));
}

FormalPtr fold_neg(FormalPtr a) {
    if (a->kind == FormalKind::Number) return FormalExpr::make_number(-a->number);
    return FormalExpr::make_neg(std::move(a));
}

FormalPtr fold_pow(FormalPtr a, int exponent, int line, int col) {
    if (a->kind == FormalKind::Number) {
        if (a->number.is_zero() && exponent < 0)
            fail("zero raised to a negative power", line, col);
        GaussianRational base = a->number;
        if (exponent < 0) base = base.inverse();
        GaussianRational acc(1);
        for (int k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) acc *= base;
        return FormalExpr::make_number(acc);
    }
    return FormalExpr::make_pow(std::move(a), exponent);
}

class Parser {
  public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    SystemDefinition parse_file();
    FormalPtr parse_single_formal();
    RatExpr parse_single_phase(const ContextPtr& ctx);

  private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    bool formal_allowed_ = false;

    SystemDefinition def_;
    std::vector<std::string> params_;
    std::map<std::string, RatExpr> lets_;
    bool context_built_ = false;
    std::set<std::string> declared_;  // every name bound so far, any kind

    const Token& cur() const { return toks_[pos_]; }
    Token advance() { return toks_[pos_++]; }
    void skip_newlines() {
        while (cur().kind == Token::Newline) ++pos_;
    }
    void expect_punct(char c) {
        if (cur().kind != Token::Punct || cur().punct != c)
            fail(std::string("expected '") + c + "'", cur().line, cur().column);
        ++pos_;
    }
    bool eat_punct(char c) {
        if (cur().kind == Token::Punct && cur().punct == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string expect_ident(const char* what) {
        if (cur().kind != Token::Ident)
            fail(std::string("expected ") + what, cur().line, cur().column);
        return advance().text;
    }
    void expect_line_end() {
        if (cur().kind != Token::Newline && cur().kind != Token::End)
            fail("unexpected trailing tokens", cur().line, cur().column);
    }

    void ensure_context();
    void bind_name(const std::string& name, const char* kind, int line, int col);
    RatExpr eval_phase(const FormalPtr& e, int line);
    void validate_formal(const FormalPtr& e, int line);
    FormalPtr substitute_defines(const FormalPtr& e);

    FormalPtr parse_expr();
    FormalPtr parse_sum();
    FormalPtr parse_product();
    FormalPtr parse_unary();
    FormalPtr parse_power();
    FormalPtr parse_atom();
    int parse_exponent();

    void parse_statement();
};

void Parser::ensure_context() {
    if (!context_built_) {
        def_.context = Context::create(params_);
        context_built_ = true;
    }
}

void Parser::bind_name(const std::string& name, const char* kind, int line, int col) {
    static const std::set<std::string> reserved = {"x", "y", "z", "p_x", "p_y", "p_z",
                                                   "i", "pd"};
    if (reserved.count(name))
        throw DuplicateGenerator("cannot bind reserved name '" + name + "' as " + kind +
                                 " (line " + std::to_string(line) + ")");
    if (declared_.count(name))
        throw DuplicateGenerator("name '" + name + "' declared twice (line " +
                                 std::to_string(line) + ", column " + std::to_string(col) +
                                 ")");
    declared_.insert(name);
}

RatExpr Parser::eval_phase(const FormalPtr& e, int line) {
    ensure_context();
    ContextPtr ctx = def_.context;
    auto resolve = [&](const std::string& name) -> RatExpr {
        if (auto flat = ctx->find(name)) return RatExpr::variable(ctx, *flat);
        auto it = lets_.find(name);
        if (it != lets_.end()) return it->second;
        throw UnboundName("unknown name '" + name + "' in expression (line " +
                          std::to_string(line) + ")");
    };
    auto no_bracket = [](const RatExpr&, const RatExpr&) -> RatExpr {
        throw std::logic_error("bracket in phase expression");
    };
    return formal_evaluate(e, ctx, resolve, no_bracket);
}

void Parser::validate_formal(const FormalPtr& e, int line) {
    ensure_context();
    formal_for_each_symbol(e, [&](const std::string& name) {
        if (def_.context->find(name)) return;
        if (def_.generators.count(name)) return;
        if (def_.find_named_bracket(name)) return;
        throw UnboundName("unknown name '" + name + "' in relation (line " +
                          std::to_string(line) + ")");
    });
}

FormalPtr Parser::substitute_defines(const FormalPtr& e) {
    std::map<std::string, FormalPtr> table;
    for (const auto& [name, body] : def_.defines) table.emplace(name, body);
    return formal_substitute(e, table);
}

FormalPtr Parser::parse_expr() { return parse_sum(); }

FormalPtr Parser::parse_sum() {
    FormalPtr lhs = parse_product();
    while (cur().kind == Token::Punct && (cur().punct == '+' || cur().punct == '-')) {
        Token op = advance();
        FormalPtr rhs = parse_product();
        lhs = fold_binary(op.punct == '+' ? FormalKind::Add : FormalKind::Sub,
                          std::move(lhs), std::move(rhs), op.line, op.column);
    }
    return lhs;
}

FormalPtr Parser::parse_product() {
    FormalPtr lhs = parse_unary();
    while (cur().kind == Token::Punct && (cur().punct == '*' || cur().punct == '/')) {
        Token op = advance();
        FormalPtr rhs = parse_unary();
        lhs = fold_binary(op.punct == '*' ? FormalKind::Mul : FormalKind::Div,
                          std::move(lhs), std::move(rhs), op.line, op.column);
    }
    return lhs;
}

FormalPtr Parser::parse_unary() {
    if (cur().kind == Token::Punct && cur().punct == '-') {
        ++pos_;
        return fold_neg(parse_unary());
    }
    return parse_power();
}

int Parser::parse_exponent() {
    if (cur().kind == Token::Number) {
        return std::stoi(advance().text);
    }
    if (eat_punct('(')) {
        bool negate = eat_punct('-');
        if (cur().kind != Token::Number)
            fail("expected integer exponent", cur().line, cur().column);
        int value = std::stoi(advance().text);
        expect_punct(')');
        return negate ? -value : value;
    }
    fail("expected integer exponent after '^'", cur().line, cur().column);
}

FormalPtr Parser::parse_power() {
    FormalPtr base = parse_atom();
    if (cur().kind == Token::Punct && cur().punct == '^') {
        Token op = advance();
        int exponent = parse_exponent();
        return fold_pow(std::move(base), exponent, op.line, op.column);
    }
    return base;
}

FormalPtr Parser::parse_atom() {
    const Token& t = cur();
    if (t.kind == Token::Number) {
        mpq_class value(advance().text);
        return FormalExpr::make_number(GaussianRational(value));
    }
    if (t.kind == Token::Ident) {
        Token name = advance();
        if (name.text == "i") return FormalExpr::make_number(GaussianRational::i());
        if (name.text == "pd") {
            if (!formal_allowed_)
                fail("pd(...) is not allowed in a plain expression", name.line, name.column);
            expect_punct('(');
            FormalPtr target = parse_sum();
            expect_punct(',');
            std::string wrt = expect_ident("a generator name in pd(...)");
            expect_punct(')');
            return FormalExpr::make_pd(std::move(target), std::move(wrt));
        }
        return FormalExpr::make_symbol(name.text);
    }
    if (t.kind == Token::Punct && t.punct == '(') {
        ++pos_;
        FormalPtr inner = parse_sum();
        expect_punct(')');
        return inner;
    }
    if (t.kind == Token::Punct && t.punct == '{') {
        if (!formal_allowed_)
            fail("bracket {f, g} is not allowed in a plain expression", t.line, t.column);
        ++pos_;
        FormalPtr lhs = parse_sum();
        expect_punct(',');
        FormalPtr rhs = parse_sum();
        expect_punct('}');
        return FormalExpr::make_bracket(std::move(lhs), std::move(rhs));
    }
    fail("expected an expression", t.line, t.column);
}

void Parser::parse_statement() {
    Token keyword = advance();
    if (keyword.kind != Token::Ident)
        fail("expected a declaration keyword", keyword.line, keyword.column);
    const std::string& kw = keyword.text;
    int line = keyword.line;

    if (kw == "system") {
        if (!def_.name.empty()) fail("duplicate system header", line, keyword.column);
        def_.name = expect_ident("a system name");
        expect_line_end();
        return;
    }
    if (def_.name.empty()) fail("file must start with 'system NAME'", line, keyword.column);

    if (kw == "param") {
        if (context_built_)
            fail("param declarations must precede expressions", line, keyword.column);
        bool any = false;
        while (cur().kind == Token::Ident) {
            Token name = advance();
            bind_name(name.text, "a parameter", name.line, name.column);
            params_.push_back(name.text);
            any = true;
        }
        if (!any) fail("expected parameter names", cur().line, cur().column);
        expect_line_end();
        return;
    }
    if (kw == "let") {
        Token name = cur();
        std::string n = expect_ident("an abbreviation name");
        bind_name(n, "an abbreviation", name.line, name.column);
        expect_punct('=');
        formal_allowed_ = false;
        FormalPtr body = parse_expr();
        expect_line_end();
        lets_.emplace(n, eval_phase(body, line));
        return;
    }
    if (kw == "generator") {
        Token name = cur();
        std::string n = expect_ident("a generator name");
        bind_name(n, "a generator", name.line, name.column);
        expect_punct('=');
        formal_allowed_ = false;
        FormalPtr body = parse_expr();
        expect_line_end();
        def_.generator_order.push_back(n);
        def_.generators.emplace(n, eval_phase(body, line));
        return;
    }
    if (kw == "variant") {
        std::string gen = expect_ident("a generator name");
        if (!def_.generators.count(gen))
            throw UnboundName("variant of unknown generator '" + gen + "' (line " +
                              std::to_string(line) + ")");
        if (cur().kind != Token::Str) fail("expected a variant label string", cur().line,
                                           cur().column);
        std::string label = advance().text;
        expect_punct('=');
        formal_allowed_ = false;
        FormalPtr body = parse_expr();
        expect_line_end();
        def_.variants.push_back({gen, label, eval_phase(body, line)});
        return;
    }
    if (kw == "bracketname") {
        Token name = cur();
        std::string n = expect_ident("a bracket name");
        bind_name(n, "a named bracket", name.line, name.column);
        expect_punct('=');
        expect_punct('{');
        std::string lhs = expect_ident("a generator name");
        expect_punct(',');
        std::string rhs = expect_ident("a generator name");
        expect_punct('}');
        expect_line_end();
        for (const std::string* side : {&lhs, &rhs}) {
            if (!def_.generators.count(*side))
                throw UnboundName("named bracket over unknown generator '" + *side +
                                  "' (line " + std::to_string(line) + ")");
        }
        def_.named_brackets.push_back({n, lhs, rhs});
        return;
    }
    if (kw == "define") {
        Token name = cur();
        std::string n = expect_ident("a definition name");
        bind_name(n, "a definition", name.line, name.column);
        expect_punct('=');
        formal_allowed_ = true;
        FormalPtr body = substitute_defines(parse_expr());
        expect_line_end();
        validate_formal(body, line);
        def_.defines.emplace_back(n, body);
        return;
    }
    if (kw == "vanish") {
        std::string a = expect_ident("a generator name");
        std::string b = expect_ident("a generator name");
        expect_line_end();
        for (const std::string* side : {&a, &b}) {
            if (!def_.generators.count(*side))
                throw UnboundName("vanish pair over unknown generator '" + *side +
                                  "' (line " + std::to_string(line) + ")");
        }
        def_.vanishing_pairs.emplace_back(a, b);
        return;
    }
    if (kw == "structure") {
        std::string n = expect_ident("a bracket name");
        if (!def_.find_named_bracket(n) && !def_.generators.count(n))
            throw UnboundName("structure claim for unknown name '" + n + "' (line " +
                              std::to_string(line) + ")");
        expect_punct('^');
        if (cur().kind != Token::Number || cur().text != "2")
            fail("structure claims must square the bracket (expected ^2)", cur().line,
                 cur().column);
        ++pos_;
        expect_punct('=');
        formal_allowed_ = true;
        FormalPtr rhs = substitute_defines(parse_expr());
        expect_line_end();
        validate_formal(rhs, line);
        def_.structure_claims.push_back({n, rhs});
        return;
    }
    if (kw == "relation") {
        std::string provenance;
        if (cur().kind == Token::Str) provenance = advance().text;
        expect_punct(':');
        formal_allowed_ = true;
        std::vector<FormalPtr> chain;
        chain.push_back(substitute_defines(parse_expr()));
        while (eat_punct('=')) chain.push_back(substitute_defines(parse_expr()));
        expect_line_end();
        if (chain.size() < 2)
            fail("relation needs at least one '='", cur().line, cur().column);
        for (const auto& part : chain) validate_formal(part, line);
        for (std::size_t k = 0; k + 1 < chain.size(); ++k)
            def_.relations.push_back({chain[k], chain[k + 1], provenance});
        return;
    }
    fail("unknown declaration '" + kw + "'", line, keyword.column);
}

SystemDefinition Parser::parse_file() {
    skip_newlines();
    while (cur().kind != Token::End) {
        parse_statement();
        skip_newlines();
    }
    if (def_.name.empty()) fail("empty file: missing 'system NAME'", cur().line, 1);
    ensure_context();
    if (!def_.generators.count("H"))
        throw UnboundName("system '" + def_.name + "' does not define generator H");
    return std::move(def_);
}

FormalPtr Parser::parse_single_formal() {
    formal_allowed_ = true;
    skip_newlines();
    FormalPtr e = parse_expr();
    skip_newlines();
    if (cur().kind != Token::End) fail("unexpected trailing tokens", cur().line, cur().column);
    return e;
}

RatExpr Parser::parse_single_phase(const ContextPtr& ctx) {
    formal_allowed_ = false;
    skip_newlines();
    FormalPtr e = parse_expr();
    skip_newlines();
    if (cur().kind != Token::End) fail("unexpected trailing tokens", cur().line, cur().column);
    auto resolve = [&](const std::string& name) -> RatExpr {
        if (auto flat = ctx->find(name)) return RatExpr::variable(ctx, *flat);
        throw UnboundName("unknown name '" + name + "' in expression");
    };
    auto no_bracket = [](const RatExpr&, const RatExpr&) -> RatExpr {
        throw std::logic_error("bracket in phase expression");
    };
    return formal_evaluate(e, ctx, resolve, no_bracket);
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

SystemDefinition parse_system(const std::string& text) {
    return Parser(text).parse_file();
}

std::string serialize_system(const SystemDefinition& def) {
    std::ostringstream out;
    out << "system " << def.name << "\n";
    if (def.context->nparams() > 0) {
        out << "param";
        for (const auto& p : def.context->parameter_names()) out << " " << p;
        out << "\n";
    }
    for (const auto& name : def.generator_order)
        out << "generator " << name << " = " << def.generators.at(name).to_string() << "\n";
    for (const auto& nb : def.named_brackets)
        out << "bracketname " << nb.name << " = { " << nb.lhs << ", " << nb.rhs << " }\n";
    for (const auto& [name, body] : def.defines)
        out << "define " << name << " = " << formal_to_string(body) << "\n";
    for (const auto& [a, b] : def.vanishing_pairs) out << "vanish " << a << " " << b << "\n";
    for (const auto& sc : def.structure_claims)
        out << "structure " << sc.squared_name << "^2 = " << formal_to_string(sc.rhs)
            << "\n";
    for (const auto& rel : def.relations)
        out << "relation " << quote(rel.provenance) << ": " << formal_to_string(rel.lhs)
            << " = " << formal_to_string(rel.rhs) << "\n";
    for (const auto& v : def.variants)
        out << "variant " << v.generator << " " << quote(v.label) << " = "
            << v.expression.to_string() << "\n";
    return out.str();
}

RatExpr parse_phase_expression(const std::string& text, const ContextPtr& ctx) {
    return Parser(text).parse_single_phase(ctx);
}

FormalPtr parse_formal_expression(const std::string& text) {
    return Parser(text).parse_single_formal();
}

const RatExpr& SystemDefinition::generator(const std::string& n) const {
    auto it = generators.find(n);
    if (it == generators.end()) throw UnknownSystem("no generator named '" + n + "'");
    return it->second;
}

const NamedBracket* SystemDefinition::find_named_bracket(const std::string& n) const {
    for (const auto& nb : named_brackets)
        if (nb.name == n) return &nb;
    return nullptr;
}

const FormalPtr* SystemDefinition::find_define(const std::string& n) const {
    for (const auto& d : defines)
        if (d.first == n) return &d.second;
    return nullptr;
}

bool same_definition(const SystemDefinition& a, const SystemDefinition& b) {
    if (a.name != b.name) return false;
    if (a.context->parameter_names() != b.context->parameter_names()) return false;
    if (a.generator_order != b.generator_order) return false;
    for (const auto& name : a.generator_order)
        if (!a.generators.at(name).equals(b.generators.at(name))) return false;
    if (a.named_brackets.size() != b.named_brackets.size()) return false;
    for (std::size_t k = 0; k < a.named_brackets.size(); ++k) {
        const auto& x = a.named_brackets[k];
        const auto& y = b.named_brackets[k];
        if (x.name != y.name || x.lhs != y.lhs || x.rhs != y.rhs) return false;
    }
    if (a.defines.size() != b.defines.size()) return false;
    for (std::size_t k = 0; k < a.defines.size(); ++k) {
        if (a.defines[k].first != b.defines[k].first) return false;
        if (!formal_equal(a.defines[k].second, b.defines[k].second)) return false;
    }
    if (a.vanishing_pairs != b.vanishing_pairs) return false;
    if (a.relations.size() != b.relations.size()) return false;
    for (std::size_t k = 0; k < a.relations.size(); ++k) {
        const auto& x = a.relations[k];
        const auto& y = b.relations[k];
        if (x.provenance != y.provenance) return false;
        if (!formal_equal(x.lhs, y.lhs) || !formal_equal(x.rhs, y.rhs)) return false;
    }
    if (a.structure_claims.size() != b.structure_claims.size()) return false;
    for (std::size_t k = 0; k < a.structure_claims.size(); ++k) {
        if (a.structure_claims[k].squared_name != b.structure_claims[k].squared_name)
            return false;
        if (!formal_equal(a.structure_claims[k].rhs, b.structure_claims[k].rhs))
            return false;
    }
    if (a.variants.size() != b.variants.size()) return false;
    for (std::size_t k = 0; k < a.variants.size(); ++k) {
        const auto& x = a.variants[k];
        const auto& y = b.variants[k];
        if (x.generator != y.generator || x.label != y.label) return false;
        if (!x.expression.equals(y.expression)) return false;
    }
    return true;
}

}  // namespace pverify
