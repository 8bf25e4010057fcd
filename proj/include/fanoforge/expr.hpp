#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chow.hpp"
#include "error.hpp"
#include "lattice.hpp"
#include "rational.hpp"

namespace fanoforge {

// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom ('^' uint)?
//   atom   := rational | name | '(' expr ')'
// A rational literal is digits, optionally followed by '/' digits.

struct ExprNode;
using ClassExpr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Number, Name, Negate, Add, Subtract, Multiply, Power };

    Kind kind;
    std::size_t offset = 0;
    Rational number;
    std::string name;
    unsigned exponent = 0;
    ClassExpr lhs;
    ClassExpr rhs;
};

namespace detail {

inline bool known_name(const SurfaceModel& model, const std::string& name)
{
    if (reserved_name(name))
        return true;
    for (const auto& b : model.basis_names())
        if (b == name)
            return true;
    return false;
}

class ExprParser {
public:
    ExprParser(std::string_view src, const SurfaceModel& model) : src_(src), model_(model) {}

    ClassExpr parse()
    {
        ClassExpr e = expr();
        skip_space();
        if (pos_ != src_.size())
            throw ParseError(ErrorKind::SyntaxError, pos_, "unexpected '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    static constexpr unsigned max_exponent = 64;

    void skip_space()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static ClassExpr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

    ClassExpr expr()
    {
        ClassExpr left = term();
        for (;;) {
            skip_space();
            const std::size_t at = pos_;
            if (accept('+'))
                left = node({ExprNode::Kind::Add, at, {}, {}, 0, left, term()});
            else if (accept('-'))
                left = node({ExprNode::Kind::Subtract, at, {}, {}, 0, left, term()});
            else
                return left;
        }
    }

    ClassExpr term()
    {
        ClassExpr left = factor();
        for (;;) {
            skip_space();
            const std::size_t at = pos_;
            if (!accept('*'))
                return left;
            left = node({ExprNode::Kind::Multiply, at, {}, {}, 0, left, factor()});
        }
    }

    ClassExpr factor()
    {
        skip_space();
        const std::size_t at = pos_;
        if (accept('-'))
            return node({ExprNode::Kind::Negate, at, {}, {}, 0, factor(), nullptr});
        ClassExpr base = atom();
        skip_space();
        const std::size_t caret = pos_;
        if (!accept('^'))
            return base;
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        if (start == pos_)
            throw ParseError(ErrorKind::SyntaxError, start, "expected a non-negative integer exponent");
        const std::string digits(src_.substr(start, pos_ - start));
        if (digits.size() > 3 || std::stoul(digits) > max_exponent)
            throw ParseError(ErrorKind::SyntaxError, start, "exponent " + digits + " is too large");
        return node({ExprNode::Kind::Power, caret, {}, {}, static_cast<unsigned>(std::stoul(digits)), base, nullptr});
    }

    ClassExpr atom()
    {
        skip_space();
        const std::size_t at = pos_;
        if (pos_ >= src_.size())
            throw ParseError(ErrorKind::SyntaxError, at, "unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            ClassExpr inner = expr();
            if (!accept(')'))
                throw ParseError(ErrorKind::SyntaxError, pos_, "expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            if (pos_ + 1 < src_.size() && src_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
                ++pos_;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            }
            const std::string_view text = src_.substr(at, pos_ - at);
            Rational value;
            try {
                value = parse_rational(text);
            } catch (const Error&) {
                throw ParseError(ErrorKind::SyntaxError, at, "bad rational literal '" + std::string(text) + "'");
            }
            return node({ExprNode::Kind::Number, at, value, {}, 0, nullptr, nullptr});
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size()
                   && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string name(src_.substr(at, pos_ - at));
            if (!known_name(model_, name))
                throw ParseError(ErrorKind::UnknownName, at, "unknown name '" + name + "'");
            return node({ExprNode::Kind::Name, at, {}, std::move(name), 0, nullptr, nullptr});
        }
        throw ParseError(ErrorKind::SyntaxError, at, "unexpected '" + std::string(1, c) + "'");
    }

    std::string_view src_;
    const SurfaceModel& model_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses a class expression and resolves its names against the model.
inline ClassExpr parse_class(std::string_view src, const SurfaceModel& model)
{
    return detail::ExprParser(src, model).parse();
}

struct EvalResult {
    ChowExpansion value;
    std::vector<std::string> warnings;
};

namespace detail {

inline ChowExpansion evaluate_node(const ExprNode& n, const BundleData& E, std::vector<std::string>& warnings)
{
    const SurfaceModel& model = E.model;
    const std::size_t rank = model.rank();
    auto product = [&](const ChowExpansion& a, const ChowExpansion& b, std::size_t at) {
        bool overflow = false;
        ChowExpansion r = ChowExpansion::product(model, a, b, &overflow);
        if (overflow)
            warnings.push_back("DegreeOverflow at offset " + std::to_string(at)
                               + ": terms of degree > 3 were discarded");
        return r;
    };
    switch (n.kind) {
    case ExprNode::Kind::Number:
        return ChowExpansion::scalar(rank, n.number);
    case ExprNode::Kind::Name: {
        if (n.name == "H")
            return ChowExpansion::hyperplane_power(rank, 1);
        if (n.name == "pt")
            return ChowExpansion(ChowClass::point(rank));
        if (n.name == "K")
            return ChowExpansion(ChowClass::pullback(model.canonical()));
        if (n.name == "KW")
            return ChowExpansion(canonical_class(model, E));
        if (n.name == "c1")
            return ChowExpansion(ChowClass::pullback(E.c1));
        if (n.name == "c2")
            return ChowExpansion(E.c2 * ChowClass::point(rank));
        const auto& names = model.basis_names();
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == n.name)
                return ChowExpansion(ChowClass::pullback(DivisorClass::basis(rank, i)));
        throw ParseError(ErrorKind::UnknownName, n.offset, "unknown name '" + n.name + "'");
    }
    case ExprNode::Kind::Negate:
        return Rational(-1) * evaluate_node(*n.lhs, E, warnings);
    case ExprNode::Kind::Add:
        return evaluate_node(*n.lhs, E, warnings) + evaluate_node(*n.rhs, E, warnings);
    case ExprNode::Kind::Subtract:
        return evaluate_node(*n.lhs, E, warnings) - evaluate_node(*n.rhs, E, warnings);
    case ExprNode::Kind::Multiply:
        return product(evaluate_node(*n.lhs, E, warnings), evaluate_node(*n.rhs, E, warnings), n.offset);
    case ExprNode::Kind::Power: {
        const ChowExpansion base = evaluate_node(*n.lhs, E, warnings);
        ChowExpansion acc = ChowExpansion::scalar(rank, 1);
        for (unsigned i = 0; i < n.exponent; ++i)
            acc = product(acc, base, n.offset);
        return acc;
    }
    }
    fail(ErrorKind::InvalidInput, "corrupt expression node");
}

inline std::string print_node(const ExprNode& n, int parent_prec)
{
    // Precedence: 1 sum, 2 product, 3 unary minus, 4 power, 5 atom.
    auto wrap = [&](std::string s, int prec) { return prec < parent_prec ? "(" + s + ")" : s; };
    switch (n.kind) {
    case ExprNode::Kind::Number:
        return n.number < 0 ? wrap(to_string(n.number), 3) : to_string(n.number);
    case ExprNode::Kind::Name:
        return n.name;
    case ExprNode::Kind::Negate:
        return wrap("-" + print_node(*n.lhs, 3), 3);
    case ExprNode::Kind::Add:
        return wrap(print_node(*n.lhs, 1) + " + " + print_node(*n.rhs, 2), 1);
    case ExprNode::Kind::Subtract:
        return wrap(print_node(*n.lhs, 1) + " - " + print_node(*n.rhs, 2), 1);
    case ExprNode::Kind::Multiply:
        return wrap(print_node(*n.lhs, 2) + "*" + print_node(*n.rhs, 3), 2);
    case ExprNode::Kind::Power: {
        return wrap(print_node(*n.lhs, 5) + "^" + std::to_string(n.exponent), 4);
    }
    }
    return {};
}

} // namespace detail

/// Evaluates to an unreduced expansion; H^2 and H^3 are rewritten only by normalize().
inline EvalResult evaluate(const ClassExpr& expr, const BundleData& E)
{
    EvalResult r{ChowExpansion(E.model.rank()), {}};
    r.value = detail::evaluate_node(*expr, E, r.warnings);
    return r;
}

inline std::string to_string(const ClassExpr& expr) { return detail::print_node(*expr, 0); }

} // namespace fanoforge
