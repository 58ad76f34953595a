#include "qfi/parse.hpp"

#include <cctype>
#include <memory>
#include <optional>
#include <vector>

namespace qfi {

namespace {

// Expression AST; lowering happens in a second pass so that structural checks
// (what may be inverted) see the written form, not the reduced one. r^2 for
// example reduces to x^2+y^2+z^2, which is no longer visibly invertible.
struct Node {
    enum class Kind { Number, Coord, Radial, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind;
    Rational value;      // Number
    int axis = 0;        // Coord
    int exponent = 0;    // Pow
    size_t position = 0;
    std::unique_ptr<Node> lhs, rhs;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make_node(Node::Kind kind, size_t pos) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->position = pos;
    return n;
}

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eof() {
        skip_space();
        return pos_ >= text_.size();
    }
    size_t pos() const { return pos_; }
    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    // number := digits ('.' digits)?
    std::optional<Rational> number() {
        skip_space();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        if (pos_ == start) return std::nullopt;
        return rational_from_string(text_.substr(start, pos_ - start));
    }

    std::optional<int> integer() {
        skip_space();
        size_t start = pos_;
        bool negative = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            negative = true;
            ++pos_;
        }
        size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) {
            pos_ = start;
            return std::nullopt;
        }
        if (pos_ < text_.size() && text_[pos_] == '.')
            throw ParseError("exponent must be an integer", pos_);
        int value = std::stoi(text_.substr(digits, pos_ - digits));
        return negative ? -value : value;
    }

    std::optional<std::string> identifier() {
        skip_space();
        size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])))) ++pos_;
        if (pos_ == start) return std::nullopt;
        return text_.substr(start, pos_ - start);
    }

  private:
    const std::string& text_;
    size_t pos_ = 0;
};

class Parser {
  public:
    Parser(const std::string& text, int dim) : lex_(text), dim_(dim) {}

    NodePtr parse() {
        NodePtr e = expr();
        if (!lex_.eof()) throw ParseError("unexpected trailing input", lex_.pos());
        return e;
    }

  private:
    NodePtr expr() {
        NodePtr left = term();
        while (true) {
            size_t pos = lex_.pos();
            if (lex_.accept('+')) {
                auto n = make_node(Node::Kind::Add, pos);
                n->lhs = std::move(left);
                n->rhs = term();
                left = std::move(n);
            } else if (lex_.accept('-')) {
                auto n = make_node(Node::Kind::Sub, pos);
                n->lhs = std::move(left);
                n->rhs = term();
                left = std::move(n);
            } else {
                return left;
            }
        }
    }

    NodePtr term() {
        NodePtr left = factor();
        while (true) {
            size_t pos = lex_.pos();
            if (lex_.accept('*')) {
                auto n = make_node(Node::Kind::Mul, pos);
                n->lhs = std::move(left);
                n->rhs = factor();
                left = std::move(n);
            } else if (lex_.accept('/')) {
                auto n = make_node(Node::Kind::Div, pos);
                n->lhs = std::move(left);
                n->rhs = factor();
                left = std::move(n);
            } else {
                return left;
            }
        }
    }

    NodePtr factor() {
        size_t pos = lex_.pos();
        if (lex_.accept('-')) {
            auto n = make_node(Node::Kind::Neg, pos);
            n->lhs = factor();
            return n;
        }
        NodePtr b = base();
        pos = lex_.pos();
        if (lex_.accept('^')) {
            auto e = lex_.integer();
            if (!e) throw ParseError("expected integer exponent", lex_.pos());
            auto n = make_node(Node::Kind::Pow, pos);
            n->lhs = std::move(b);
            n->exponent = *e;
            return n;
        }
        return b;
    }

    NodePtr base() {
        size_t pos = lex_.pos();
        if (lex_.accept('(')) {
            NodePtr inner = expr();
            lex_.expect(')');
            return inner;
        }
        if (auto num = lex_.number()) {
            auto n = make_node(Node::Kind::Number, pos);
            n->value = *num;
            return n;
        }
        if (auto id = lex_.identifier()) {
            if (*id == "r") return make_node(Node::Kind::Radial, pos);
            int axis = -1;
            if (*id == "x") axis = 0;
            else if (*id == "y") axis = 1;
            else if (*id == "z") axis = 2;
            else if (id->size() == 2 && (*id)[0] == 'q' && std::isdigit((unsigned char)(*id)[1]))
                axis = (*id)[1] - '1';
            if (axis < 0) throw ParseError("unknown symbol '" + *id + "'", pos);
            if (axis >= dim_)
                throw ParseError("coordinate '" + *id + "' outside dimension " +
                                     std::to_string(dim_),
                                 pos);
            auto n = make_node(Node::Kind::Coord, pos);
            n->axis = axis;
            return n;
        }
        throw ParseError("expected a number, coordinate, 'r' or '('", pos);
    }

    Lexer lex_;
    int dim_;
};

// Structural monomial c * r^e, the invertible elements of the ring.
struct RadialMonomial {
    Rational coeff;
    int r_exp;
};

std::optional<RadialMonomial> structural_monomial(const Node& n) {
    switch (n.kind) {
        case Node::Kind::Number:
            return RadialMonomial{n.value, 0};
        case Node::Kind::Radial:
            return RadialMonomial{1, 1};
        case Node::Kind::Neg: {
            auto inner = structural_monomial(*n.lhs);
            if (!inner) return std::nullopt;
            inner->coeff = -inner->coeff;
            return inner;
        }
        case Node::Kind::Mul: {
            auto a = structural_monomial(*n.lhs);
            auto b = structural_monomial(*n.rhs);
            if (!a || !b) return std::nullopt;
            return RadialMonomial{a->coeff * b->coeff, a->r_exp + b->r_exp};
        }
        case Node::Kind::Div: {
            auto a = structural_monomial(*n.lhs);
            auto b = structural_monomial(*n.rhs);
            if (!a || !b || rat_sgn_zero(b->coeff)) return std::nullopt;
            return RadialMonomial{a->coeff / b->coeff, a->r_exp - b->r_exp};
        }
        case Node::Kind::Pow: {
            auto base = structural_monomial(*n.lhs);
            if (!base) return std::nullopt;
            if (n.exponent >= 0) {
                Rational c = 1;
                for (int i = 0; i < n.exponent; ++i) c *= base->coeff;
                return RadialMonomial{c, base->r_exp * n.exponent};
            }
            if (rat_sgn_zero(base->coeff)) return std::nullopt;
            Rational c = 1;
            for (int i = 0; i < -n.exponent; ++i) c /= base->coeff;
            return RadialMonomial{c, base->r_exp * n.exponent};
        }
        default:
            return std::nullopt;
    }
}

RingElem lower_radial(const RadialMonomial& m, int dim) {
    RingElem out = RingElem::radial(dim, m.r_exp);
    out *= m.coeff;
    return out;
}

RingElem lower(const Node& n, int dim) {
    switch (n.kind) {
        case Node::Kind::Number:
            return RingElem::constant(dim, n.value);
        case Node::Kind::Coord:
            return RingElem::coordinate(dim, n.axis);
        case Node::Kind::Radial:
            return RingElem::radial(dim);
        case Node::Kind::Neg:
            return -lower(*n.lhs, dim);
        case Node::Kind::Add:
            return lower(*n.lhs, dim) + lower(*n.rhs, dim);
        case Node::Kind::Sub:
            return lower(*n.lhs, dim) - lower(*n.rhs, dim);
        case Node::Kind::Mul:
            return lower(*n.lhs, dim) * lower(*n.rhs, dim);
        case Node::Kind::Div: {
            auto divisor = structural_monomial(*n.rhs);
            if (!divisor)
                throw ParseError("division is only defined by numbers and r powers", n.position);
            if (rat_sgn_zero(divisor->coeff)) throw ParseError("division by zero", n.position);
            return lower(*n.lhs, dim) *
                   lower_radial(RadialMonomial{1 / divisor->coeff, -divisor->r_exp}, dim);
        }
        case Node::Kind::Pow: {
            if (n.exponent >= 0) return lower(*n.lhs, dim).pow(n.exponent);
            auto base = structural_monomial(*n.lhs);
            if (!base)
                throw ParseError("negative powers are only defined for numbers and r powers",
                                 n.position);
            if (rat_sgn_zero(base->coeff)) throw ParseError("division by zero", n.position);
            Rational c = 1;
            for (int i = 0; i < -n.exponent; ++i) c /= base->coeff;
            return lower_radial(RadialMonomial{c, base->r_exp * n.exponent}, dim);
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

RingElem parse_ring_elem(const std::string& text, int dim) {
    if (dim != 2 && dim != 3) throw DimensionError("supported dimensions are 2 and 3");
    Parser parser(text, dim);
    NodePtr ast = parser.parse();
    return lower(*ast, dim);
}

Potential parse_potential(const std::string& text, int dim) {
    return make_potential(parse_ring_elem(text, dim));
}

}  // namespace qfi
