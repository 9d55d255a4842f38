#include "qeta/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace qeta {

Rational make_rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) {
        throw std::invalid_argument("zero denominator");
    }
    Rational r(Integer(std::to_string(num)), Integer(std::to_string(den)));
    r.canonicalize();
    return r;
}

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw std::invalid_argument("zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r)
{
    if (r.get_den() == 1) {
        return r.get_num().get_str();
    }
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

Integer parse_integer(std::string_view s, std::string_view whole)
{
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        i = 1;
    }
    if (i == s.size()) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] < '0' || s[k] > '9') {
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
        }
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text));
    }
    Integer num = parse_integer(text.substr(0, slash), text);
    Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    return make_rational(num, den);
}

Integer floor(const Rational& r)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Integer ceil(const Rational& r)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rational frac(const Rational& r) { return r - Rational(floor(r)); }

bool is_integer(const Rational& r) { return r.get_den() == 1; }

std::optional<Rational> rational_sqrt(const Rational& r)
{
    if (sgn(r) < 0) {
        return std::nullopt;
    }
    if (mpz_perfect_square_p(r.get_num_mpz_t()) == 0 || mpz_perfect_square_p(r.get_den_mpz_t()) == 0) {
        return std::nullopt;
    }
    Integer n = sqrt(r.get_num());
    Integer d = sqrt(r.get_den());
    return make_rational(n, d);
}

std::int64_t to_int64(const Integer& z)
{
    if (!z.fits_slong_p()) {
        throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
    }
    return z.get_si();
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b)
{
    if (a == 0 || b == 0) {
        return 0;
    }
    return std::lcm(a, b);
}

}  // namespace qeta
