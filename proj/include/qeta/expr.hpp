#pragma once

// Expression trees over q-series leaves, a small infix parser for them and
// a demand-driven evaluator that asks every subtree only for the depth its
// parent needs.

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qeta/etaforms.hpp"
#include "qeta/series.hpp"

namespace qeta {

class Expr {
public:
    enum class Kind {
        Constant,
        Monomial,  // q^e
        Eta,
        GenEta,
        Sigma,  // sum q^(kn)/(1-q^(kn))^2
        Ap,     // sum q^(kn-j)/(1-q^(kn-j))^2
        Theta,  // f(sa q^ea, sb q^eb)
        Sum,
        Difference,
        Product,
        Quotient,
        Power,
        Sqrt,
        Negate,
    };

    struct Node {
        Kind kind = Kind::Constant;
        Rational value;     // Constant coefficient, Monomial exponent
        EtaQuotient eta;
        GenEtaQuotient geta;
        std::int64_t k = 0;  // Sigma/Ap modulus, Power exponent
        std::int64_t j = 0;
        int sa = 1;
        int sb = 1;
        Rational ea;
        Rational eb;
        std::vector<Expr> args;
        std::string name;
    };

    /// The constant 0.
    Expr();

    static Expr constant(const Rational& c);
    static Expr q_power(const Rational& e);
    static Expr eta(const EtaQuotient& f);
    static Expr geta(const GenEtaQuotient& f);
    static Expr sigma(std::int64_t k);
    static Expr ap(std::int64_t k, std::int64_t j);
    static Expr theta(int sa, const Rational& ea, int sb, const Rational& eb);

    /// Same value, rendered as `name`.
    Expr named(std::string name) const;

    Kind kind() const { return node_->kind; }
    const Node& node() const { return *node_; }
    const void* identity() const { return node_.get(); }

    /// Infix rendering that the parser reads back.
    std::string to_string() const;

    /// lcm of the exponent-lattice denominators of the leaves; depth in
    /// "grid steps" d means exponents below d / step_grid().
    std::int64_t step_grid() const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    friend Expr pow(const Expr& a, std::int64_t k);
    friend Expr sqrt(const Expr& a);

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Expr make(Node node);

    std::shared_ptr<const Node> node_;
};

Expr operator*(const Rational& c, const Expr& a);
Expr operator+(const Expr& a, const Rational& c);

using SymbolTable = std::map<std::string, Expr, std::less<>>;

class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t position, std::string token, const std::string& what);

    std::size_t position() const { return position_; }
    const std::string& token() const { return token_; }

private:
    std::size_t position_;
    std::string token_;
};

/// Grammar (whitespace ignored):
///   expr   := term (("+" | "-") term)*
///   term   := unary (("*" | "/") unary)*
///   unary  := "-" unary | power
///   power  := atom ("^" exp)?      exp := int | "-" int | "(" rational ")"
///   atom   := number | "q" | name | call | "(" expr ")"
///   call   := eta(d) | geta(N;g) | pi(k) | sigma(k) | ap(k,j)
///           | theta(sa, ea, sb, eb) | sqrt(expr)
/// Half-integral exponents become square roots; q takes any rational one.
Expr parse_expr(std::string_view text, const SymbolTable& symbols = {});

/// An eta-quotient or generalized eta-quotient product, for order tables.
struct ParsedQuotient {
    bool generalized = false;
    EtaQuotient eta;
    GenEtaQuotient geta;
};

ParsedQuotient parse_quotient(std::string_view text);

class Evaluator {
public:
    /// Series of e exact below trunc.
    QSeries evaluate(const Expr& e, const Rational& trunc);

    /// A lower bound for the valuation of e.
    Rational valuation_bound(const Expr& e);

    /// The exact valuation; probes the expansion for sums. Throws
    /// SeriesError when nothing nonzero appears within the probing range.
    Rational exact_valuation(const Expr& e);

private:
    QSeries evaluate_once(const Expr& e, const Rational& trunc);

    // Keyed by node identity; keep_alive_ pins the nodes so keys stay unique.
    std::map<const void*, QSeries> cache_;
    std::map<const void*, Rational> bounds_;
    std::map<const void*, Rational> exact_;
    std::vector<Expr> keep_alive_;
};

/// One-shot evaluation with a private cache.
QSeries evaluate(const Expr& e, const Rational& trunc);

}  // namespace qeta
