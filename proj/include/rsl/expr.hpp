#pragma once

// Scalar functions of t for the potential q(t) and the delay Delta(t):
// a small infix expression language plus monotone-cubic sampled tables.

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rsl {

enum class ExprKind {
    Constant,
    Variable,
    // unary
    Neg,
    Sin,
    Cos,
    Exp,
    Sqrt,
    Log,
    Abs,
    // binary
    Add,
    Sub,
    Mul,
    Div,
    Pow,
};

int arity(ExprKind kind) noexcept;
std::string_view kind_name(ExprKind kind) noexcept;

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind = ExprKind::Constant;
    double value = 0.0;  // Constant only
    std::string symbol;  // "pi" or "e" for keyword constants
    std::vector<ExprPtr> children;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::string message, std::string expected);

    std::size_t offset() const noexcept { return offset_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string message_;
    std::string expected_;
};

/// Immutable expression tree. Copies share nodes.
class Expr {
public:
    /// Throws std::invalid_argument if the tree is malformed (arity mismatch, null child).
    explicit Expr(ExprPtr root);

    static Expr constant(double value);
    static Expr variable();
    static Expr unary(ExprKind kind, Expr operand);
    static Expr binary(ExprKind kind, Expr lhs, Expr rhs);

    /// Throws DomainError for log/sqrt of negatives, division by zero,
    /// non-integer powers of negatives, and non-finite results.
    double operator()(double t) const;

    const ExprNode& root() const noexcept { return *root_; }
    const ExprPtr& root_ptr() const noexcept { return root_; }

    bool is_constant() const noexcept { return root_->kind == ExprKind::Constant; }

private:
    ExprPtr root_;
};

/// Infix grammar: ^ binds tighter than unary minus, which binds tighter than * /,
/// then + -. ^ is right associative. Functions: sin cos exp sqrt log abs.
/// Keywords: t, pi, e.
Expr parse_expr(std::string_view text);

inline double eval(const Expr& expr, double t) { return expr(t); }

/// Fully parenthesised text that parses back to the same tree.
std::string to_string(const Expr& expr);

bool structurally_equal(const Expr& a, const Expr& b) noexcept;

/// Ascending (t, value) samples with Fritsch-Carlson monotone cubic interpolation.
class SampledTable {
public:
    SampledTable(std::vector<double> t, std::vector<double> values);

    /// CSV text with header `t,value`.
    static SampledTable parse_csv(std::string_view text, std::string_view source = "<table>");
    static SampledTable load_csv(const std::filesystem::path& path);

    /// Throws DomainError outside [t.front(), t.back()].
    double operator()(double t) const;

    std::span<const double> abscissae() const noexcept { return t_; }
    std::span<const double> values() const noexcept { return v_; }
    bool is_identically_zero() const noexcept;

    std::string to_csv() const;

private:
    std::vector<double> t_;
    std::vector<double> v_;
    std::vector<double> slope_;
};

/// Either an expression or a sampled table.
class ScalarFunction {
public:
    ScalarFunction();  // identically zero
    ScalarFunction(Expr expr);
    ScalarFunction(SampledTable table);

    static ScalarFunction parse(std::string_view text) { return ScalarFunction(parse_expr(text)); }

    double operator()(double t) const;

    /// True for the literal constant 0 or an all-zero table.
    bool is_identically_zero() const noexcept;

    bool is_table() const noexcept { return std::holds_alternative<SampledTable>(impl_); }
    const Expr* expr() const noexcept { return std::get_if<Expr>(&impl_); }
    const SampledTable* table() const noexcept { return std::get_if<SampledTable>(&impl_); }

    std::string describe() const;

private:
    std::variant<Expr, SampledTable> impl_;
};

} // namespace rsl
