#include "rsl/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

#include "rsl/error.hpp"

namespace rsl {

namespace {

struct FunctionName {
    std::string_view name;
    ExprKind kind;
};

constexpr std::array<FunctionName, 6> kFunctions{{
    {"sin", ExprKind::Sin},
    {"cos", ExprKind::Cos},
    {"exp", ExprKind::Exp},
    {"sqrt", ExprKind::Sqrt},
    {"log", ExprKind::Log},
    {"abs", ExprKind::Abs},
}};

std::optional<ExprKind> function_kind(std::string_view name) {
    for (const auto& f : kFunctions) {
        if (f.name == name) return f.kind;
    }
    return std::nullopt;
}

void check_node(const ExprPtr& node) {
    if (!node) throw std::invalid_argument("expression node is null");
    const int n = arity(node->kind);
    if (static_cast<int>(node->children.size()) != n) {
        throw std::invalid_argument("expression node '" + std::string(kind_name(node->kind)) +
                                    "' expects " + std::to_string(n) + " children");
    }
    for (const auto& c : node->children) check_node(c);
}

ExprPtr make_node(ExprKind kind, std::vector<ExprPtr> children, double value = 0.0,
                  std::string symbol = {}) {
    auto node = std::make_shared<ExprNode>();
    node->kind = kind;
    node->value = value;
    node->symbol = std::move(symbol);
    node->children = std::move(children);
    return node;
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    std::size_t offset = 0;
    std::string_view text;
    double number = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        Token tok;
        tok.offset = pos_;
        if (pos_ >= src_.size()) return tok;

        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(tok);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) {
                ++end;
            }
            tok.kind = Tok::Ident;
            tok.text = src_.substr(pos_, end - pos_);
            pos_ = end;
            return tok;
        }
        switch (c) {
            case '+': tok.kind = Tok::Plus; break;
            case '-': tok.kind = Tok::Minus; break;
            case '*': tok.kind = Tok::Star; break;
            case '/': tok.kind = Tok::Slash; break;
            case '^': tok.kind = Tok::Caret; break;
            case '(': tok.kind = Tok::LParen; break;
            case ')': tok.kind = Tok::RParen; break;
            default:
                throw ParseError(pos_, "unexpected character '" + std::string(1, c) + "'",
                                 "number, t, pi, e, function, '(' or operator");
        }
        tok.text = src_.substr(pos_, 1);
        ++pos_;
        return tok;
    }

private:
    Token number(Token tok) {
        std::size_t end = pos_;
        auto digits = [&] {
            std::size_t start = end;
            while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
            return end - start;
        };
        std::size_t n = digits();
        if (end < src_.size() && src_[end] == '.') {
            ++end;
            n += digits();
        }
        if (n == 0) throw ParseError(pos_, "malformed number", "digit");
        // exponent only when a digit follows, so "2e" lexes as 2 then the keyword e
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t probe = end + 1;
            if (probe < src_.size() && (src_[probe] == '+' || src_[probe] == '-')) ++probe;
            if (probe < src_.size() && std::isdigit(static_cast<unsigned char>(src_[probe]))) {
                end = probe;
                digits();
            }
        }
        tok.kind = Tok::Number;
        tok.text = src_.substr(pos_, end - pos_);
        const auto res = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), tok.number);
        if (res.ec != std::errc{} || res.ptr != tok.text.data() + tok.text.size() ||
            !std::isfinite(tok.number)) {
            throw ParseError(pos_, "number out of range", "finite decimal literal");
        }
        pos_ = end;
        return tok;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Recursive-descent parser
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?
//   primary := number | t | pi | e | func '(' expr ')' | '(' expr ')'

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { advance(); }

    ExprPtr parse() {
        auto root = expr();
        if (cur_.kind != Tok::End) {
            throw ParseError(cur_.offset, "unexpected token '" + std::string(cur_.text) + "'",
                             "operator or end of input");
        }
        return root;
    }

private:
    void advance() { cur_ = lex_.next(); }

    void expect(Tok kind, std::string_view what) {
        if (cur_.kind != kind) {
            throw ParseError(cur_.offset, "expected " + std::string(what), std::string(what));
        }
        advance();
    }

    ExprPtr expr() {
        auto lhs = term();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            const auto kind = cur_.kind == Tok::Plus ? ExprKind::Add : ExprKind::Sub;
            advance();
            lhs = make_node(kind, {lhs, term()});
        }
        return lhs;
    }

    ExprPtr term() {
        auto lhs = unary();
        while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
            const auto kind = cur_.kind == Tok::Star ? ExprKind::Mul : ExprKind::Div;
            advance();
            lhs = make_node(kind, {lhs, unary()});
        }
        return lhs;
    }

    ExprPtr unary() {
        if (cur_.kind == Tok::Minus) {
            advance();
            return make_node(ExprKind::Neg, {unary()});
        }
        if (cur_.kind == Tok::Plus) {
            advance();
            return unary();
        }
        return power();
    }

    ExprPtr power() {
        auto base = primary();
        if (cur_.kind == Tok::Caret) {
            advance();
            return make_node(ExprKind::Pow, {base, unary()});
        }
        return base;
    }

    ExprPtr primary() {
        const Token tok = cur_;
        switch (tok.kind) {
            case Tok::Number:
                advance();
                return make_node(ExprKind::Constant, {}, tok.number);
            case Tok::LParen: {
                advance();
                auto inner = expr();
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::Ident: {
                advance();
                if (tok.text == "t") return make_node(ExprKind::Variable, {});
                if (tok.text == "pi") return make_node(ExprKind::Constant, {}, std::numbers::pi, "pi");
                if (tok.text == "e") return make_node(ExprKind::Constant, {}, std::numbers::e, "e");
                if (auto fn = function_kind(tok.text)) {
                    expect(Tok::LParen, "'(' after function name");
                    auto arg = expr();
                    expect(Tok::RParen, "')'");
                    return make_node(*fn, {arg});
                }
                throw ParseError(tok.offset, "unknown identifier '" + std::string(tok.text) + "'",
                                 "t, pi, e or one of sin cos exp sqrt log abs");
            }
            default:
                throw ParseError(tok.offset, "expected expression", "number, t, pi, e, function or '('");
        }
    }

    Lexer lex_;
    Token cur_;
};

// ---------------------------------------------------------------------------
// Evaluation

[[noreturn]] void domain_fail(double t, const ExprNode& node, const char* what) {
    throw DomainError(t, std::string(kind_name(node.kind)), what);
}

double evaluate(const ExprNode& node, double t) {
    switch (node.kind) {
        case ExprKind::Constant: return node.value;
        case ExprKind::Variable: return t;
        default: break;
    }

    const double a = evaluate(*node.children[0], t);
    double r = 0.0;
    switch (node.kind) {
        case ExprKind::Neg: r = -a; break;
        case ExprKind::Sin: r = std::sin(a); break;
        case ExprKind::Cos: r = std::cos(a); break;
        case ExprKind::Exp: r = std::exp(a); break;
        case ExprKind::Abs: r = std::abs(a); break;
        case ExprKind::Sqrt:
            if (a < 0.0) domain_fail(t, node, "square root of negative value");
            r = std::sqrt(a);
            break;
        case ExprKind::Log:
            if (a <= 0.0) domain_fail(t, node, "logarithm of non-positive value");
            r = std::log(a);
            break;
        default: {
            const double b = evaluate(*node.children[1], t);
            switch (node.kind) {
                case ExprKind::Add: r = a + b; break;
                case ExprKind::Sub: r = a - b; break;
                case ExprKind::Mul: r = a * b; break;
                case ExprKind::Div:
                    if (b == 0.0) domain_fail(t, node, "division by zero");
                    r = a / b;
                    break;
                case ExprKind::Pow:
                    if (a < 0.0 && std::trunc(b) != b) {
                        domain_fail(t, node, "non-integer power of negative value");
                    }
                    if (a == 0.0 && b < 0.0) domain_fail(t, node, "negative power of zero");
                    r = std::pow(a, b);
                    break;
                default: break;
            }
        }
    }
    if (!std::isfinite(r)) domain_fail(t, node, "non-finite result");
    return r;
}

void print(const ExprNode& node, std::string& out) {
    switch (node.kind) {
        case ExprKind::Constant: {
            if (!node.symbol.empty()) {
                out += node.symbol;
                return;
            }
            std::array<char, 64> buf{};
            const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), node.value);
            const std::string_view text(buf.data(), static_cast<std::size_t>(res.ptr - buf.data()));
            if (node.value < 0 || std::signbit(node.value)) {
                out += "(";
                out += text;
                out += ")";
            } else {
                out += text;
            }
            return;
        }
        case ExprKind::Variable: out += "t"; return;
        case ExprKind::Neg:
            out += "(-";
            print(*node.children[0], out);
            out += ")";
            return;
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Div:
        case ExprKind::Pow: {
            static constexpr std::array<const char*, 5> ops{" + ", " - ", " * ", " / ", "^"};
            const auto idx = static_cast<std::size_t>(node.kind) - static_cast<std::size_t>(ExprKind::Add);
            out += "(";
            print(*node.children[0], out);
            out += ops[idx];
            print(*node.children[1], out);
            out += ")";
            return;
        }
        default:
            out += kind_name(node.kind);
            out += "(";
            print(*node.children[0], out);
            out += ")";
            return;
    }
}

bool same_tree(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
    if (a.kind == ExprKind::Constant && a.value != b.value) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!same_tree(*a.children[i], *b.children[i])) return false;
    }
    return true;
}

} // namespace

int arity(ExprKind kind) noexcept {
    switch (kind) {
        case ExprKind::Constant:
        case ExprKind::Variable: return 0;
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Div:
        case ExprKind::Pow: return 2;
        default: return 1;
    }
}

std::string_view kind_name(ExprKind kind) noexcept {
    switch (kind) {
        case ExprKind::Constant: return "const";
        case ExprKind::Variable: return "t";
        case ExprKind::Neg: return "neg";
        case ExprKind::Sin: return "sin";
        case ExprKind::Cos: return "cos";
        case ExprKind::Exp: return "exp";
        case ExprKind::Sqrt: return "sqrt";
        case ExprKind::Log: return "log";
        case ExprKind::Abs: return "abs";
        case ExprKind::Add: return "add";
        case ExprKind::Sub: return "sub";
        case ExprKind::Mul: return "mul";
        case ExprKind::Div: return "div";
        case ExprKind::Pow: return "pow";
    }
    return "?";
}

ParseError::ParseError(std::size_t offset, std::string message, std::string expected)
    : std::runtime_error("parse error at offset " + std::to_string(offset) + ": " + message),
      offset_(offset),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

Expr::Expr(ExprPtr root) : root_(std::move(root)) { check_node(root_); }

Expr Expr::constant(double value) { return Expr(make_node(ExprKind::Constant, {}, value)); }

Expr Expr::variable() { return Expr(make_node(ExprKind::Variable, {})); }

Expr Expr::unary(ExprKind kind, Expr operand) { return Expr(make_node(kind, {operand.root_})); }

Expr Expr::binary(ExprKind kind, Expr lhs, Expr rhs) {
    return Expr(make_node(kind, {lhs.root_, rhs.root_}));
}

double Expr::operator()(double t) const { return evaluate(*root_, t); }

Expr parse_expr(std::string_view text) { return Expr(Parser(text).parse()); }

std::string to_string(const Expr& expr) {
    std::string out;
    print(expr.root(), out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) noexcept { return same_tree(a.root(), b.root()); }

// ---------------------------------------------------------------------------
// ScalarFunction

ScalarFunction::ScalarFunction() : impl_(Expr::constant(0.0)) {}

ScalarFunction::ScalarFunction(Expr expr) : impl_(std::move(expr)) {}

ScalarFunction::ScalarFunction(SampledTable table) : impl_(std::move(table)) {}

double ScalarFunction::operator()(double t) const {
    return std::visit([t](const auto& f) { return f(t); }, impl_);
}

bool ScalarFunction::is_identically_zero() const noexcept {
    if (const auto* e = expr()) return e->is_constant() && e->root().value == 0.0;
    return table()->is_identically_zero();
}

std::string ScalarFunction::describe() const {
    if (const auto* e = expr()) return to_string(*e);
    const auto* tab = table();
    return "table[" + std::to_string(tab->abscissae().size()) + " samples]";
}

} // namespace rsl
