#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sifs/errors.hpp"

namespace sifs {

/// Arithmetic over point coordinates: numeric literals, coordinate
/// references x1..xN (1-based), +, -, *, /, unary minus, parentheses.
/// Guards are a single comparison (<=, <, >=, >, ==, !=) between two
/// such expressions.
class Expr {
public:
    /// Parses an arithmetic expression. Throws input_error with the
    /// offending position on bad syntax.
    static Expr parse(const std::string& text);

    double eval(std::span<const double> coords) const;

    /// Largest coordinate index referenced (0 if none).
    int max_coord() const;

    const std::string& source() const { return source_; }

    struct Node;  // AST node; exposed for the parser implementation

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
    friend class ExprParser;
    friend class Guard;
};

class Guard {
public:
    static Guard parse(const std::string& text);

    bool eval(std::span<const double> coords) const;
    int max_coord() const;
    const std::string& source() const { return source_; }

private:
    Expr lhs_, rhs_;
    enum class Rel { le, lt, ge, gt, eq, ne } rel_;
    std::string source_;
    friend class ExprParser;
};

}  // namespace sifs
