#include "qeta/expr.hpp"

#include <cctype>
#include <optional>

namespace qeta {

namespace {

using Kind = Expr::Kind;

// Named leaves keep their names in renderings, so they are not merged.
bool foldable(const Expr& e, Kind kind) { return e.kind() == kind && e.node().name.empty(); }

int precedence(const Expr& e)
{
    const auto& n = e.node();
    if (!n.name.empty()) {
        return 4;
    }
    switch (n.kind) {
    case Kind::Constant:
        if (sgn(n.value) < 0) {
            return 1;
        }
        return is_integer(n.value) ? 4 : 2;
    case Kind::Monomial:
        return n.value == 0 || n.value == 1 ? 4 : 3;
    case Kind::Eta:
    case Kind::GenEta: {
        const auto size = n.kind == Kind::Eta ? n.eta.exps().size() : n.geta.exps().size();
        if (size == 0) {
            return 4;
        }
        if (size > 1) {
            return 2;
        }
        const auto r = n.kind == Kind::Eta ? n.eta.exps().begin()->second : n.geta.exps().begin()->second;
        return r == 1 ? 4 : 3;
    }
    case Kind::Sigma:
    case Kind::Ap:
    case Kind::Theta:
    case Kind::Sqrt:
        return 4;
    case Kind::Power:
        return 3;
    case Kind::Product:
    case Kind::Quotient:
        return 2;
    case Kind::Sum:
    case Kind::Difference:
    case Kind::Negate:
        return 1;
    }
    return 1;
}

std::string wrapped(const Expr& e, int needed)
{
    const std::string s = e.to_string();
    return precedence(e) < needed ? "(" + s + ")" : s;
}

std::string exponent_text(const Rational& r)
{
    if (is_integer(r) && sgn(r) >= 0) {
        return to_string(r);
    }
    return "(" + to_string(r) + ")";
}

bool is_constant(const Expr& e, std::optional<Rational> value = std::nullopt)
{
    return e.kind() == Kind::Constant && (!value || e.node().value == *value);
}

Rational rational_power(const Rational& c, std::int64_t k)
{
    Rational out(1);
    const Rational base = k < 0 ? Rational(1) / c : c;
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) {
        out *= base;
    }
    return out;
}

// Exact multi-term series cannot be inverted or rooted; give them a horizon.
QSeries with_horizon(const QSeries& s, const Rational& t)
{
    if (s.is_exact() && s.terms().size() > 1) {
        return s.truncated(t);
    }
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------

Expr::Expr() : Expr(constant(Rational(0))) {}

Expr Expr::make(Node node) { return Expr(std::make_shared<const Node>(std::move(node))); }

Expr Expr::constant(const Rational& c)
{
    Node n;
    n.kind = Kind::Constant;
    n.value = c;
    return make(std::move(n));
}

Expr Expr::q_power(const Rational& e)
{
    Node n;
    n.kind = Kind::Monomial;
    n.value = e;
    return make(std::move(n));
}

Expr Expr::eta(const EtaQuotient& f)
{
    Node n;
    n.kind = Kind::Eta;
    n.eta = f;
    return make(std::move(n));
}

Expr Expr::geta(const GenEtaQuotient& f)
{
    Node n;
    n.kind = Kind::GenEta;
    n.geta = f;
    return make(std::move(n));
}

Expr Expr::sigma(std::int64_t k)
{
    if (k < 1) {
        throw std::invalid_argument("sigma(k) needs k >= 1");
    }
    Node n;
    n.kind = Kind::Sigma;
    n.k = k;
    return make(std::move(n));
}

Expr Expr::ap(std::int64_t k, std::int64_t j)
{
    if (j <= 0 || j >= k) {
        throw std::invalid_argument("ap(k,j) needs 0 < j < k");
    }
    Node n;
    n.kind = Kind::Ap;
    n.k = k;
    n.j = j;
    return make(std::move(n));
}

Expr Expr::theta(int sa, const Rational& ea, int sb, const Rational& eb)
{
    if ((sa != 1 && sa != -1) || (sb != 1 && sb != -1)) {
        throw std::invalid_argument("theta signs must be +1 or -1");
    }
    if (sgn(ea + eb) <= 0) {
        throw std::invalid_argument("theta needs ea + eb > 0");
    }
    Node n;
    n.kind = Kind::Theta;
    n.sa = sa;
    n.sb = sb;
    n.ea = ea;
    n.eb = eb;
    return make(std::move(n));
}

Expr Expr::named(std::string name) const
{
    Node n = *node_;
    n.name = std::move(name);
    return make(std::move(n));
}

std::string Expr::to_string() const
{
    const auto& n = *node_;
    if (!n.name.empty()) {
        return n.name;
    }
    switch (n.kind) {
    case Kind::Constant:
        return qeta::to_string(n.value);
    case Kind::Monomial:
        if (n.value == 0) {
            return "1";
        }
        return n.value == 1 ? "q" : "q^" + exponent_text(n.value);
    case Kind::Eta:
        return n.eta.to_string();
    case Kind::GenEta:
        return n.geta.to_string();
    case Kind::Sigma:
        return "sigma(" + std::to_string(n.k) + ")";
    case Kind::Ap:
        return "ap(" + std::to_string(n.k) + "," + std::to_string(n.j) + ")";
    case Kind::Theta:
        return "theta(" + std::to_string(n.sa) + ", " + qeta::to_string(n.ea) + ", " + std::to_string(n.sb) + ", " +
               qeta::to_string(n.eb) + ")";
    case Kind::Sum:
        return wrapped(n.args[0], 1) + " + " + wrapped(n.args[1], 1);
    case Kind::Difference:
        return wrapped(n.args[0], 1) + " - " + wrapped(n.args[1], 2);
    case Kind::Product:
        return wrapped(n.args[0], 2) + "*" + wrapped(n.args[1], 3);
    case Kind::Quotient:
        return wrapped(n.args[0], 2) + "/" + wrapped(n.args[1], 3);
    case Kind::Power:
        return wrapped(n.args[0], 4) + "^" + (n.k < 0 ? std::to_string(n.k) : std::to_string(n.k));
    case Kind::Sqrt:
        return "sqrt(" + n.args[0].to_string() + ")";
    case Kind::Negate:
        return "-" + wrapped(n.args[0], 2);
    }
    return "?";
}

std::int64_t Expr::step_grid() const
{
    const auto& n = *node_;
    switch (n.kind) {
    case Kind::Monomial:
        return to_int64(n.value.get_den());
    case Kind::Theta:
        return lcm64(to_int64(n.ea.get_den()), to_int64(n.eb.get_den()));
    case Kind::Constant:
    case Kind::Eta:
    case Kind::GenEta:
    case Kind::Sigma:
    case Kind::Ap:
        return 1;
    default:
        break;
    }
    std::int64_t m = 1;
    for (const auto& a : n.args) {
        m = lcm64(m, a.step_grid());
    }
    return m;
}

Expr operator+(const Expr& a, const Expr& b)
{
    if (is_constant(a) && is_constant(b)) {
        return Expr::constant(a.node().value + b.node().value);
    }
    if (is_constant(b, Rational(0))) {
        return a;
    }
    if (is_constant(a, Rational(0))) {
        return b;
    }
    Expr::Node n;
    n.kind = Kind::Sum;
    n.args = {a, b};
    return Expr::make(std::move(n));
}

Expr operator-(const Expr& a, const Expr& b)
{
    if (is_constant(a) && is_constant(b)) {
        return Expr::constant(a.node().value - b.node().value);
    }
    if (is_constant(b, Rational(0))) {
        return a;
    }
    Expr::Node n;
    n.kind = Kind::Difference;
    n.args = {a, b};
    return Expr::make(std::move(n));
}

Expr operator*(const Expr& a, const Expr& b)
{
    if (is_constant(a) && is_constant(b)) {
        return Expr::constant(a.node().value * b.node().value);
    }
    if (is_constant(a, Rational(1))) {
        return b;
    }
    if (is_constant(b, Rational(1))) {
        return a;
    }
    if (foldable(a, Kind::Eta) && foldable(b, Kind::Eta)) {
        return Expr::eta(a.node().eta * b.node().eta);
    }
    if (foldable(a, Kind::GenEta) && foldable(b, Kind::GenEta) && a.node().geta.level() == b.node().geta.level()) {
        return Expr::geta(a.node().geta * b.node().geta);
    }
    Expr::Node n;
    n.kind = Kind::Product;
    n.args = {a, b};
    return Expr::make(std::move(n));
}

Expr operator/(const Expr& a, const Expr& b)
{
    if (is_constant(b, Rational(0))) {
        throw std::invalid_argument("division by the constant 0");
    }
    if (is_constant(a) && is_constant(b)) {
        return Expr::constant(a.node().value / b.node().value);
    }
    if (is_constant(b, Rational(1))) {
        return a;
    }
    if (foldable(a, Kind::Eta) && foldable(b, Kind::Eta)) {
        return Expr::eta(a.node().eta / b.node().eta);
    }
    if (foldable(a, Kind::GenEta) && foldable(b, Kind::GenEta) && a.node().geta.level() == b.node().geta.level()) {
        return Expr::geta(a.node().geta / b.node().geta);
    }
    Expr::Node n;
    n.kind = Kind::Quotient;
    n.args = {a, b};
    return Expr::make(std::move(n));
}

Expr operator-(const Expr& a)
{
    if (is_constant(a)) {
        return Expr::constant(-a.node().value);
    }
    Expr::Node n;
    n.kind = Kind::Negate;
    n.args = {a};
    return Expr::make(std::move(n));
}

Expr pow(const Expr& a, std::int64_t k)
{
    if (k == 1) {
        return a;
    }
    if (k == 0) {
        return Expr::constant(Rational(1));
    }
    if (is_constant(a)) {
        if (sgn(a.node().value) == 0 && k < 0) {
            throw std::invalid_argument("negative power of the constant 0");
        }
        return Expr::constant(rational_power(a.node().value, k));
    }
    if (foldable(a, Kind::Eta)) {
        return Expr::eta(a.node().eta.pow(k));
    }
    if (foldable(a, Kind::GenEta)) {
        return Expr::geta(a.node().geta.pow(k));
    }
    if (a.kind() == Kind::Monomial) {
        return Expr::q_power(a.node().value * k);
    }
    Expr::Node n;
    n.kind = Kind::Power;
    n.k = k;
    n.args = {a};
    return Expr::make(std::move(n));
}

Expr sqrt(const Expr& a)
{
    if (is_constant(a)) {
        if (auto r = rational_sqrt(a.node().value)) {
            return Expr::constant(*r);
        }
    }
    Expr::Node n;
    n.kind = Kind::Sqrt;
    n.args = {a};
    return Expr::make(std::move(n));
}

Expr operator*(const Rational& c, const Expr& a) { return Expr::constant(c) * a; }
Expr operator+(const Expr& a, const Rational& c) { return a + Expr::constant(c); }

// ---------------------------------------------------------------------------

ParseError::ParseError(std::size_t position, std::string token, const std::string& what)
    : std::invalid_argument("parse error at position " + std::to_string(position) +
                            (token.empty() ? std::string(" (end of input)") : " near '" + token + "'") + ": " + what),
      position_(position),
      token_(std::move(token))
{
}

namespace {

struct Token {
    enum class Type { Number, Name, Punct, End } type = Type::End;
    std::string text;
    std::size_t position = 0;
};

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        Token t;
        t.position = i;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            t.type = Token::Type::Number;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                t.text += text[i++];
            }
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            t.type = Token::Type::Name;
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                t.text += text[i++];
            }
        } else if (std::string_view("+-*/^(),;").find(ch) != std::string_view::npos) {
            t.type = Token::Type::Punct;
            t.text = std::string(1, ch);
            ++i;
        } else {
            throw ParseError(i, std::string(1, ch), "unexpected character");
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.position = text.size();
    out.push_back(end);
    return out;
}

class Parser {
public:
    Parser(std::string_view text, const SymbolTable& symbols) : tokens_(tokenize(text)), symbols_(symbols) {}

    Expr parse_all()
    {
        Expr e = expression();
        if (peek().type != Token::Type::End) {
            fail("expected an operator or end of input");
        }
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(peek().position, peek().text, what); }

    bool accept(const char* punct)
    {
        if (peek().type == Token::Type::Punct && peek().text == punct) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(const char* punct)
    {
        if (!accept(punct)) {
            fail(std::string("expected '") + punct + "'");
        }
    }

    std::int64_t integer()
    {
        const bool negative = accept("-");
        if (peek().type != Token::Type::Number) {
            fail("expected an integer");
        }
        const std::string digits = next().text;
        if (digits.size() > 15) {
            throw ParseError(tokens_[pos_ - 1].position, digits, "integer too large");
        }
        const std::int64_t v = std::stoll(digits);
        return negative ? -v : v;
    }

    Rational rational()
    {
        const std::int64_t num = integer();
        if (accept("/")) {
            const std::size_t at = peek().position;
            const std::int64_t den = integer();
            if (den == 0) {
                throw ParseError(at, "0", "zero denominator");
            }
            return make_rational(num, den);
        }
        return Rational(num);
    }

    Expr expression()
    {
        Expr e = term();
        while (true) {
            if (accept("+")) {
                e = e + term();
            } else if (accept("-")) {
                e = e - term();
            } else {
                return e;
            }
        }
    }

    Expr term()
    {
        Expr e = unary();
        while (true) {
            if (accept("*")) {
                e = e * unary();
            } else if (peek().type == Token::Type::Punct && peek().text == "/") {
                const std::size_t at = peek().position;
                ++pos_;
                Expr d = unary();
                try {
                    e = e / d;
                } catch (const std::invalid_argument& ex) {
                    throw ParseError(at, "/", ex.what());
                }
            } else {
                return e;
            }
        }
    }

    Expr unary()
    {
        if (accept("-")) {
            return -unary();
        }
        return power();
    }

    Rational exponent()
    {
        if (accept("(")) {
            const Rational r = rational();
            expect(")");
            return r;
        }
        return Rational(integer());
    }

    Expr power()
    {
        const bool is_q = peek().type == Token::Type::Name && peek().text == "q";
        Expr base = atom();
        if (!(peek().type == Token::Type::Punct && peek().text == "^")) {
            return base;
        }
        const std::size_t at = peek().position;
        ++pos_;
        const Rational e = exponent();
        if (is_q) {
            return Expr::q_power(e);
        }
        if (is_integer(e)) {
            return pow(base, to_int64(e.get_num()));
        }
        if (e.get_den() == 2) {
            return sqrt(pow(base, to_int64(e.get_num())));
        }
        throw ParseError(at, "^", "only integral and half-integral exponents are supported");
    }

    Expr atom()
    {
        const Token& t = peek();
        if (t.type == Token::Type::Number) {
            return Expr::constant(Rational(integer()));
        }
        if (accept("(")) {
            Expr e = expression();
            expect(")");
            return e;
        }
        if (t.type != Token::Type::Name) {
            fail("expected a number, name or '('");
        }
        const std::string name = next().text;
        const std::size_t at = t.position;
        if (name == "q") {
            return Expr::q_power(Rational(1));
        }
        if (peek().type == Token::Type::Punct && peek().text == "(") {
            return call(name, at);
        }
        if (auto it = symbols_.find(name); it != symbols_.end()) {
            return it->second;
        }
        throw ParseError(at, name, "unknown name");
    }

    Expr call(const std::string& name, std::size_t at)
    {
        expect("(");
        try {
            if (name == "sqrt") {
                Expr e = expression();
                expect(")");
                return sqrt(e);
            }
            if (name == "eta") {
                const std::int64_t d = integer();
                expect(")");
                return Expr::eta(EtaQuotient(d, {{d, 1}}));
            }
            if (name == "geta") {
                const std::int64_t n = integer();
                if (!accept(";")) {
                    expect(",");
                }
                const std::int64_t g = integer();
                expect(")");
                return Expr::geta(GenEtaQuotient(n, {{g, 1}}));
            }
            if (name == "pi") {
                const std::int64_t k = integer();
                expect(")");
                return Expr::eta(pi_quotient(k)).named("pi(" + std::to_string(k) + ")");
            }
            if (name == "sigma") {
                const std::int64_t k = integer();
                expect(")");
                return Expr::sigma(k);
            }
            if (name == "ap") {
                const std::int64_t k = integer();
                expect(",");
                const std::int64_t j = integer();
                expect(")");
                return Expr::ap(k, j);
            }
            if (name == "theta") {
                const std::int64_t sa = integer();
                expect(",");
                const Rational ea = rational();
                expect(",");
                const std::int64_t sb = integer();
                expect(",");
                const Rational eb = rational();
                expect(")");
                return Expr::theta(static_cast<int>(sa), ea, static_cast<int>(sb), eb);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::invalid_argument& ex) {
            throw ParseError(at, name, ex.what());
        }
        throw ParseError(at, name, "unknown function");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const SymbolTable& symbols_;
};

}  // namespace

Expr parse_expr(std::string_view text, const SymbolTable& symbols) { return Parser(text, symbols).parse_all(); }

ParsedQuotient parse_quotient(std::string_view text)
{
    const Expr e = parse_expr(text);
    ParsedQuotient out;
    if (e.kind() == Kind::Eta) {
        out.eta = e.node().eta;
        return out;
    }
    if (e.kind() == Kind::GenEta) {
        out.generalized = true;
        out.geta = e.node().geta;
        return out;
    }
    throw ParseError(0, std::string(text.substr(0, 16)),
                     "expected a product of eta(d)^r or of geta(N;g)^r factors of one level");
}

// ---------------------------------------------------------------------------

Rational Evaluator::valuation_bound(const Expr& e)
{
    if (auto it = bounds_.find(e.identity()); it != bounds_.end()) {
        return it->second;
    }
    const auto& n = e.node();
    Rational v;
    switch (n.kind) {
    case Kind::Constant:
        v = 0;
        break;
    case Kind::Monomial:
        v = n.value;
        break;
    case Kind::Eta:
        v = n.eta.valuation();
        break;
    case Kind::GenEta:
        v = n.geta.valuation();
        break;
    case Kind::Sigma:
        v = n.k;
        break;
    case Kind::Ap:
        v = n.k - n.j;
        break;
    case Kind::Theta:
        v = theta_valuation(n.sa, n.ea, n.sb, n.eb);
        break;
    case Kind::Sum:
    case Kind::Difference:
        v = std::min(valuation_bound(n.args[0]), valuation_bound(n.args[1]));
        break;
    case Kind::Product:
        v = valuation_bound(n.args[0]) + valuation_bound(n.args[1]);
        break;
    case Kind::Quotient:
        v = valuation_bound(n.args[0]) - exact_valuation(n.args[1]);
        break;
    case Kind::Power:
        v = n.k > 0 ? Rational(n.k) * valuation_bound(n.args[0]) : Rational(n.k) * exact_valuation(n.args[0]);
        break;
    case Kind::Sqrt:
        v = valuation_bound(n.args[0]) / 2;
        break;
    case Kind::Negate:
        v = valuation_bound(n.args[0]);
        break;
    }
    bounds_[e.identity()] = v;
    keep_alive_.push_back(e);
    return v;
}

Rational Evaluator::exact_valuation(const Expr& e)
{
    if (auto it = exact_.find(e.identity()); it != exact_.end()) {
        return it->second;
    }
    const auto& n = e.node();
    Rational v;
    switch (n.kind) {
    case Kind::Constant:
        if (sgn(n.value) == 0) {
            throw SeriesError("the constant 0 has no valuation");
        }
        v = 0;
        break;
    case Kind::Product:
        v = exact_valuation(n.args[0]) + exact_valuation(n.args[1]);
        break;
    case Kind::Quotient:
        v = exact_valuation(n.args[0]) - exact_valuation(n.args[1]);
        break;
    case Kind::Power:
        v = Rational(n.k) * exact_valuation(n.args[0]);
        break;
    case Kind::Sqrt:
        v = exact_valuation(n.args[0]) / 2;
        break;
    case Kind::Negate:
        v = exact_valuation(n.args[0]);
        break;
    case Kind::Sum:
    case Kind::Difference: {
        const Rational lb = valuation_bound(e);
        bool found = false;
        for (int width = 2; width <= 512; width *= 2) {
            const QSeries s = evaluate(e, lb + width);
            if (auto sv = s.valuation()) {
                v = *sv;
                found = true;
                break;
            }
            if (s.is_exact()) {
                break;
            }
        }
        if (!found) {
            throw SeriesError("non-invertible series: " + e.to_string() + " vanishes below q^" +
                              to_string(lb + 512));
        }
        break;
    }
    default:
        v = valuation_bound(e);
        break;
    }
    exact_[e.identity()] = v;
    keep_alive_.push_back(e);
    return v;
}

QSeries Evaluator::evaluate(const Expr& e, const Rational& trunc)
{
    if (auto it = cache_.find(e.identity()); it != cache_.end()) {
        const QSeries& s = it->second;
        if (s.is_exact()) {
            return s;
        }
        if (*s.truncation() >= trunc) {
            return s.truncated(trunc);
        }
    }
    Rational slack(0);
    for (int attempt = 0; attempt < 4; ++attempt) {
        QSeries s = evaluate_once(e, trunc + slack);
        if (s.is_exact() || *s.truncation() >= trunc) {
            cache_[e.identity()] = s;
            keep_alive_.push_back(e);
            return s.is_exact() ? s : s.truncated(trunc);
        }
        slack = slack == 0 ? Rational(1) : slack * 2;
        slack += trunc - *s.truncation();
    }
    throw std::logic_error("evaluation of " + e.to_string() + " fell short of q^" + to_string(trunc));
}

QSeries Evaluator::evaluate_once(const Expr& e, const Rational& t)
{
    const auto& n = e.node();
    if (n.kind != Kind::Constant && t <= valuation_bound(e)) {
        return QSeries::zero(t);
    }
    switch (n.kind) {
    case Kind::Constant:
        return sgn(n.value) == 0 ? QSeries() : QSeries::constant(n.value);
    case Kind::Monomial:
        return QSeries::monomial(Rational(1), n.value);
    case Kind::Eta:
        return expand(n.eta, t);
    case Kind::GenEta:
        return expand(n.geta, t);
    case Kind::Sigma:
        return lambert_sigma(n.k, t);
    case Kind::Ap:
        return lambert_ap(n.k, n.j, t);
    case Kind::Theta:
        return theta_f(n.sa, n.ea, n.sb, n.eb, t);
    case Kind::Sum:
        return evaluate(n.args[0], t) + evaluate(n.args[1], t);
    case Kind::Difference:
        return evaluate(n.args[0], t) - evaluate(n.args[1], t);
    case Kind::Negate:
        return -evaluate(n.args[0], t);
    case Kind::Product: {
        const Rational va = valuation_bound(n.args[0]);
        const Rational vb = valuation_bound(n.args[1]);
        return evaluate(n.args[0], t - vb) * evaluate(n.args[1], t - va);
    }
    case Kind::Quotient: {
        const Rational va = valuation_bound(n.args[0]);
        const Rational vb = exact_valuation(n.args[1]);
        const Rational tb = t - va + 2 * vb;
        const QSeries den = with_horizon(evaluate(n.args[1], tb), tb);
        return evaluate(n.args[0], t + vb) * invert(den);
    }
    case Kind::Power: {
        if (n.k > 0) {
            const Rational va = valuation_bound(n.args[0]);
            return int_pow(evaluate(n.args[0], t - Rational(n.k - 1) * va), n.k);
        }
        const Rational va = exact_valuation(n.args[0]);
        const Rational ta = t + Rational(1 - n.k) * va;
        return int_pow(with_horizon(evaluate(n.args[0], ta), ta), n.k);
    }
    case Kind::Sqrt: {
        const Rational va = exact_valuation(n.args[0]);
        const Rational ta = t + va / 2;
        return sqrt(with_horizon(evaluate(n.args[0], ta), ta));
    }
    }
    throw std::logic_error("unhandled expression kind");
}

QSeries evaluate(const Expr& e, const Rational& trunc)
{
    Evaluator ev;
    return ev.evaluate(e, trunc);
}

}  // namespace qeta
