#include "sifs/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace sifs {

struct Expr::Node {
    enum class Op { constant, coord, add, sub, mul, div, neg } op;
    double value = 0.0;  // constant
    int coord = 0;       // coord, 0-based
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_node(Node::Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

double eval_node(const Node& n, std::span<const double> c) {
    switch (n.op) {
        case Node::Op::constant: return n.value;
        case Node::Op::coord:
            if (static_cast<std::size_t>(n.coord) >= c.size())
                throw domain_error("expression references coordinate x" +
                                   std::to_string(n.coord + 1) + " of a " +
                                   std::to_string(c.size()) + "-dimensional point");
            return c[n.coord];
        case Node::Op::add: return eval_node(*n.a, c) + eval_node(*n.b, c);
        case Node::Op::sub: return eval_node(*n.a, c) - eval_node(*n.b, c);
        case Node::Op::mul: return eval_node(*n.a, c) * eval_node(*n.b, c);
        case Node::Op::div: {
            const double denom = eval_node(*n.b, c);
            if (denom == 0.0) throw domain_error("division by zero in map expression");
            return eval_node(*n.a, c) / denom;
        }
        case Node::Op::neg: return -eval_node(*n.a, c);
    }
    return 0.0;
}

int max_coord_node(const Node& n) {
    switch (n.op) {
        case Node::Op::constant: return 0;
        case Node::Op::coord: return n.coord + 1;
        case Node::Op::neg: return max_coord_node(*n.a);
        default: return std::max(max_coord_node(*n.a), max_coord_node(*n.b));
    }
}

}  // namespace

// Recursive-descent parser. Multiplication accepts both '*' and the
// mid-dot spelling that shows up in pasted formulas.
class ExprParser {
public:
    explicit ExprParser(const std::string& text) : text_(text) {}

    NodePtr parse_expr_to_end() {
        NodePtr e = additive();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

    Guard parse_guard_to_end() {
        Guard g;
        g.lhs_.root_ = additive();
        skip_ws();
        g.rel_ = relation();
        g.rhs_.root_ = additive();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return g;
    }

private:
    NodePtr additive() {
        NodePtr left = multiplicative();
        for (;;) {
            skip_ws();
            if (accept('+')) {
                left = make_node(Node::Op::add, left, multiplicative());
            } else if (accept('-')) {
                left = make_node(Node::Op::sub, left, multiplicative());
            } else {
                return left;
            }
        }
    }

    NodePtr multiplicative() {
        NodePtr left = unary();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                left = make_node(Node::Op::mul, left, unary());
            } else if (accept_utf8_middot()) {
                left = make_node(Node::Op::mul, left, unary());
            } else if (accept('/')) {
                left = make_node(Node::Op::div, left, unary());
            } else {
                return left;
            }
        }
    }

    NodePtr unary() {
        skip_ws();
        if (accept('-')) return make_node(Node::Op::neg, unary());
        return primary();
    }

    NodePtr primary() {
        skip_ws();
        if (accept('(')) {
            NodePtr e = additive();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        const char c = peek();
        if (c == 'x' || c == 'X') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == start) fail("coordinate name needs an index, e.g. x1");
            const int idx = std::atoi(text_.substr(start, pos_ - start).c_str());
            if (idx < 1) fail("coordinate indices are 1-based");
            auto n = std::make_shared<Node>();
            n->op = Node::Op::coord;
            n->coord = idx - 1;
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double v = std::strtod(text_.c_str() + pos_, &end);
            if (end == text_.c_str() + pos_) fail("expected a number");
            pos_ = static_cast<std::size_t>(end - text_.c_str());
            auto n = std::make_shared<Node>();
            n->op = Node::Op::constant;
            n->value = v;
            return n;
        }
        fail("expected a number, coordinate, or '('");
        return nullptr;
    }

    Guard::Rel relation() {
        if (accept2('<', '=')) return Guard::Rel::le;
        if (accept2('>', '=')) return Guard::Rel::ge;
        if (accept2('=', '=')) return Guard::Rel::eq;
        if (accept2('!', '=')) return Guard::Rel::ne;
        if (accept('<')) return Guard::Rel::lt;
        if (accept('>')) return Guard::Rel::gt;
        fail("expected a comparison operator");
        return Guard::Rel::eq;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool accept2(char a, char b) {
        if (pos_ + 1 < text_.size() && text_[pos_] == a && text_[pos_ + 1] == b) {
            pos_ += 2;
            return true;
        }
        return false;
    }

    bool accept_utf8_middot() {
        // U+00B7 ('·') encodes as 0xC2 0xB7.
        if (pos_ + 1 < text_.size() &&
            static_cast<unsigned char>(text_[pos_]) == 0xC2 &&
            static_cast<unsigned char>(text_[pos_ + 1]) == 0xB7) {
            pos_ += 2;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw input_error("expression \"" + text_ + "\": " + why + " at position " +
                          std::to_string(pos_));
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

Expr Expr::parse(const std::string& text) {
    ExprParser p(text);
    Expr e;
    e.root_ = p.parse_expr_to_end();
    e.source_ = text;
    return e;
}

double Expr::eval(std::span<const double> coords) const {
    return eval_node(*root_, coords);
}

int Expr::max_coord() const { return max_coord_node(*root_); }

Guard Guard::parse(const std::string& text) {
    ExprParser p(text);
    Guard g = p.parse_guard_to_end();
    g.source_ = text;
    g.lhs_.source_ = text;
    g.rhs_.source_ = text;
    return g;
}

bool Guard::eval(std::span<const double> coords) const {
    const double l = lhs_.eval(coords);
    const double r = rhs_.eval(coords);
    switch (rel_) {
        case Rel::le: return l <= r;
        case Rel::lt: return l < r;
        case Rel::ge: return l >= r;
        case Rel::gt: return l > r;
        case Rel::eq: return l == r;
        case Rel::ne: return l != r;
    }
    return false;
}

int Guard::max_coord() const { return std::max(lhs_.max_coord(), rhs_.max_coord()); }

}  // namespace sifs
